import json
from fractions import Fraction

import pytest

import xigua


def test_board_and_start():
    board = xigua.xigua_board()
    assert board.size == 21
    assert len(board.edges()) == 36
    assert len(board.directed_pairs()) == 72
    assert board.neighbors(5) == [1, 9, 10, 20]
    s = xigua.initial_state()
    assert s.count(1) == 6 and s.count(2) == 6
    assert [tuple(m) for m in xigua.legal_moves(s)] == [(15, 7), (16, 7), (17, 8), (18, 8), (19, 8), (20, 5)]


def test_capture_and_matrix():
    placement = [(0, 2), (1, 1), (2, 1), (3, 1), (8, 1), (12, 2)]
    s = xigua.initial_state(placement)
    after, captured = xigua.apply_move(s, xigua.Move(8, 4))
    assert captured == [0]
    assert after.cells[0] == 3 and after.count(2) == 1

    m = xigua.transition_matrix(s, xigua.Move(8, 4))
    assert {v for row in m for v in row} <= {"-1", "0", "1"}
    b = [sum(Fraction(m[i][j]) * s.cells[j] for j in range(21)) for i in range(21)]
    assert b == after.cells


def test_illegal_move_raises():
    with pytest.raises(ValueError):
        xigua.apply_move(xigua.initial_state(), xigua.Move(0, 1))


def test_search_prefers_capture():
    s = xigua.initial_state([(0, 2), (1, 1), (2, 1), (3, 1), (8, 1), (12, 2)])
    r = xigua.search(s, depth=1)
    assert tuple(r["move"]) == (8, 4)
    assert r["score"] == xigua.search(s, depth=1, alpha_beta=False, table=False)["score"]


def test_self_play_verify_and_dataset():
    lines = xigua.self_play(6, "minmax", "random", depth=1, seed=3)
    assert len(lines) == 6
    assert xigua.self_play(6, "minmax", "random", depth=1, seed=3) == lines
    record = json.loads(lines[0])
    assert record["outcome"] in ("win", "draw")
    jsonl = "\n".join(lines)
    passed, moves = xigua.verify_records(jsonl, "y")
    assert moves > 0 and passed == moves
    assert xigua.verify_records(jsonl, "q") == (moves, moves)
    rows, labels = xigua.dataset(jsonl, draws_as_loss=True)
    assert len(rows) == moves
    assert all(len(r) == 85 for r in rows)
    with pytest.raises(ValueError):
        xigua.verify_records('{"seed": 1', "y")


def test_algebra_and_metrics():
    report = xigua.ring_report(dim=3, samples=100)
    assert report["all_axioms_hold"] and report["noncommutative"]
    assert all(v == 100 for v in report["axioms"].values())
    assert xigua.nonclosure_report(4)["valid"]
    m = xigua.metrics([1] * 8 + [0] * 2 + [0] * 7 + [1] * 3, [0.9] * 8 + [0.6] * 2 + [0.1] * 7 + [0.2] * 3)
    assert m["ppv"] == pytest.approx(0.8, abs=1e-12)
    assert m["npv"] == pytest.approx(0.7, abs=1e-12)
    assert m["accuracy"] == pytest.approx(0.75, abs=1e-12)


def test_loaded_from_stage():
    import os
    stage = os.environ.get("XIGUA_STAGE")
    if stage:
        assert os.path.realpath(xigua._xigua.__file__).startswith(os.path.realpath(stage))
