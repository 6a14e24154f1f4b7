import os
import sys

# Under ctest, load the freshly built module from the stage dir even if an
# editable install is present (its import hook would otherwise win).
stage = os.environ.get("XIGUA_STAGE")
if stage:
    sys.meta_path[:] = [f for f in sys.meta_path if "ScikitBuild" not in type(f).__name__]
    sys.path.insert(0, stage)
    for name in [m for m in sys.modules if m == "xigua" or m.startswith("xigua.")]:
        del sys.modules[name]
