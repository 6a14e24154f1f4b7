#include "xigua/service.h"

#include <iomanip>
#include <sstream>

#include "httplib.h"
#include "xigua/errors.h"
#include "xigua/move_algebra.h"
#include "xigua/record.h"

namespace xigua {

namespace {

using ojson = nlohmann::ordered_json;

ServiceResponse error(int status, const std::string& message, const std::string& field = {}) {
  ojson body = {{"error", message}};
  if (!field.empty()) body["field"] = field;
  return {status, std::move(body)};
}

// Bad request with the JSON path of the offending field.
struct FieldError {
  std::string field;
  std::string message;
};

ojson move_json(Move m) { return {{"from", m.from}, {"to", m.to}}; }

ojson status_json(const Status& s) {
  if (s.ongoing()) return nullptr;
  return {{"result", s.kind == Status::Kind::win ? "win" : "draw"},
          {"winner", s.kind == Status::Kind::win ? ojson(s.winner) : ojson(nullptr)},
          {"reason", std::string(termination_name(s.reason))}};
}

ojson engine_json(const SearchConfig& c) {
  return {{"policy", std::string(policy_name(c.policy))},
          {"depth", c.depth},
          {"seed", c.seed},
          {"alpha_beta", c.use_alpha_beta},
          {"transposition", c.use_transposition},
          {"random_tiebreak", c.random_tiebreak}};
}

SearchConfig parse_engine(const nlohmann::json& j, SearchConfig c) {
  if (!j.is_object()) throw FieldError{"engine_config", "must be an object"};
  try {
    if (j.contains("policy")) c.policy = policy_from_name(j["policy"].get<std::string>());
    if (j.contains("depth")) c.depth = j["depth"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("alpha_beta")) c.use_alpha_beta = j["alpha_beta"].get<bool>();
    if (j.contains("transposition")) c.use_transposition = j["transposition"].get<bool>();
    if (j.contains("random_tiebreak")) c.random_tiebreak = j["random_tiebreak"].get<bool>();
  } catch (const std::exception& e) {
    throw FieldError{"engine_config", e.what()};
  }
  if (c.depth < 1 || c.depth > 6) throw FieldError{"engine_config.depth", "must be in [1, 6]"};
  return c;
}

Placement parse_placement(const nlohmann::json& j, const BoardGraph& board) {
  Placement out;
  auto add = [&](const std::string& path, int node, const nlohmann::json& value) {
    if (node < 0 || node >= board.size()) throw FieldError{path, "node is off the board"};
    if (!value.is_number_integer()) throw FieldError{path, "value must be an integer"};
    const int v = value.get<int>();
    if (!board.alphabet().valid_value(v) || board.alphabet().is_empty(v)) {
      throw FieldError{path, "value is not a piece"};
    }
    out.emplace_back(node, v);
  };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      const std::string path = "placement." + key;
      int node = 0;
      try {
        std::size_t used = 0;
        node = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw FieldError{path, "key must be a node index"};
      }
      add(path, node, value);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string path = "placement[" + std::to_string(i) + "]";
      const auto& e = j[i];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer()) {
        throw FieldError{path, "entry must be [node, value]"};
      }
      add(path, e[0].get<int>(), e[1]);
    }
  } else {
    throw FieldError{"placement", "must be an object or an array of [node, value]"};
  }
  return out;
}

ojson matrix_check_json(const GameState& before, const PlayedMove& played, const GameState& after) {
  const bool tri = before.board().alphabet() == kXiguaAlphabet;
  const auto v = verify_move(before, played, after, tri ? EntryDomain::y : EntryDomain::q);
  ojson j = {{"domain", std::string(domain_name(v.domain))},
             {"nnz", v.matrix_nnz},
             {"in_D", v.in_D},
             {"exact_match", v.exact_match}};
  if (!v.error.empty()) j["error"] = v.error;
  return j;
}

std::string format_time(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

GameService::GameService(ServiceConfig config) : config_(std::move(config)) {}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) {
  std::lock_guard lock(sessions_mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

ojson GameService::state_view(const Session& s) const {
  const GameState& st = s.state();
  ojson moves = ojson::array();
  if (s.record.outcome.ongoing()) {
    for (Move m : legal_moves(st, config_.rules)) moves.push_back(move_json(m));
  }
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << st.hash();
  return {{"cells", std::vector<int>(st.cells().begin(), st.cells().end())},
          {"to_move", st.to_move()},
          {"ply", st.ply()},
          {"legal_moves", std::move(moves)},
          {"dof", {{"1", degrees_of_freedom(st, 1)}, {"2", degrees_of_freedom(st, 2)}}},
          {"hash", hash.str()},
          {"outcome", status_json(s.record.outcome)}};
}

void GameService::finish_if_over(Session& s) {
  s.record.outcome = terminal_status(s.state(), s.history, config_.rules);
  if (s.record.outcome.ongoing() || s.archived) return;
  s.archived = true;
  if (!config_.archive_path.empty()) append_record_file(config_.archive_path, s.record);
}

// Applies one move through the rules engine and reports captures and the
// transition-matrix check.
ojson GameService::play(Session& s, Move move) {
  const GameState before = s.state();
  MoveResult r = apply_move(before, move, config_.rules);
  PlayedMove played{move, r.captures};
  ojson check = matrix_check_json(before, played, r.state);
  ++s.history[r.state.hash()];
  s.record.moves.push_back(played);
  s.record.states.push_back(std::move(r.state));
  finish_if_over(s);
  return {{"move", move_json(move)}, {"captures", played.captures.indices}, {"matrix_check", check}};
}

ServiceResponse GameService::create_game(const nlohmann::json& body) {
  if (!body.is_object()) return error(400, "request body must be a JSON object");
  auto session = std::make_shared<Session>();
  try {
    std::optional<Placement> placement;
    if (body.contains("placement") && !body["placement"].is_null()) {
      placement = parse_placement(body["placement"], xigua_board());
    }
    session->engine = config_.engine;
    if (body.contains("engine_config") && !body["engine_config"].is_null()) {
      session->engine = parse_engine(body["engine_config"], config_.engine);
    }
    if (body.contains("human_plays")) {
      if (!body["human_plays"].is_number_integer()) throw FieldError{"human_plays", "must be 0, 1 or 2"};
      session->human = body["human_plays"].get<int>();
      if (session->human < 0 || session->human > 2) throw FieldError{"human_plays", "must be 0, 1 or 2"};
    }
    if (body.contains("auto_reply")) {
      if (!body["auto_reply"].is_boolean()) throw FieldError{"auto_reply", "must be a boolean"};
      session->auto_reply = body["auto_reply"].get<bool>();
    }
    int first = 1;
    if (body.contains("to_move")) {
      if (!body["to_move"].is_number_integer()) throw FieldError{"to_move", "must be 1 or 2"};
      first = body["to_move"].get<int>();
      if (first != 1 && first != 2) throw FieldError{"to_move", "must be 1 or 2"};
    }
    GameState start = initial_state(xigua_board_ptr(), placement, first);
    session->record.states.push_back(start);
    session->record.rules = config_.rules;
    session->record.seed = session->engine.seed;
    for (int side : {1, 2}) {
      session->record.policies.push_back(session->human_to_move(side) ? "human" : session->engine.label());
    }
    session->history[start.hash()] = 1;
  } catch (const FieldError& e) {
    return error(400, e.message, e.field);
  } catch (const ValidationError& e) {
    return error(400, e.what(), "placement");
  }

  const std::uint64_t n = next_id_++;
  std::ostringstream id;
  id << "g" << n << "-" << std::hex << (std::chrono::steady_clock::now().time_since_epoch().count() & 0xFFFFFF);
  session->id = id.str();
  session->created_at = std::chrono::system_clock::now();

  std::lock_guard slock(session->mu);
  {
    std::lock_guard lock(sessions_mu_);
    sessions_[session->id] = session;
  }
  finish_if_over(*session);
  ojson body_out = {{"game_id", session->id}};
  if (session->record.outcome.ongoing() && !session->human_to_move(session->state().to_move()) &&
      session->auto_reply) {
    const Move m = choose_move(session->state(), session->engine, config_.rules);
    body_out["engine_move"] = play(*session, m);
  }
  body_out["state"] = state_view(*session);
  return {201, std::move(body_out)};
}

ServiceResponse GameService::submit_move(const std::string& id, const nlohmann::json& body) {
  auto session = find(id);
  if (!session) return error(404, "unknown game id '" + id + "'");
  if (!body.is_object() || !body.contains("from") || !body.contains("to") ||
      !body["from"].is_number_integer() || !body["to"].is_number_integer()) {
    return error(400, "body must be {\"from\": int, \"to\": int}");
  }
  const Move move{body["from"].get<int>(), body["to"].get<int>()};
  std::lock_guard lock(session->mu);
  Session& s = *session;
  if (!s.record.outcome.ongoing()) return error(409, "game is already over");
  if (!s.human_to_move(s.state().to_move())) return error(409, "it is not the human's turn");
  bool auto_reply = s.auto_reply;
  if (body.contains("auto_reply") && body["auto_reply"].is_boolean()) {
    auto_reply = body["auto_reply"].get<bool>();
  }

  ojson out;
  try {
    ojson human = play(s, move);
    out["captures"] = human["captures"];
    out["matrix_check"] = human["matrix_check"];
  } catch (const RuleViolation& e) {
    return error(422, e.what());
  }
  if (s.record.outcome.ongoing() && !s.human_to_move(s.state().to_move()) && auto_reply) {
    const Move reply = choose_move(s.state(), s.engine, config_.rules);
    out["engine_move"] = play(s, reply);
  }
  out["outcome"] = status_json(s.record.outcome);
  out["state"] = state_view(s);
  return {200, std::move(out)};
}

ServiceResponse GameService::get_game(const std::string& id) {
  auto session = find(id);
  if (!session) return error(404, "unknown game id '" + id + "'");
  std::lock_guard lock(session->mu);
  const Session& s = *session;
  ojson moves = ojson::array();
  for (const auto& m : s.record.moves) {
    moves.push_back({{"from", m.move.from}, {"to", m.move.to}, {"captures", m.captures.indices}});
  }
  return {200,
          {{"game_id", s.id},
           {"human_plays", s.human},
           {"engine_config", engine_json(s.engine)},
           {"created_at", format_time(s.created_at)},
           {"moves", std::move(moves)},
           {"state", state_view(s)}}};
}

ServiceResponse GameService::get_trajectory(const std::string& id) {
  auto session = find(id);
  if (!session) return error(404, "unknown game id '" + id + "'");
  std::lock_guard lock(session->mu);
  const TrajectoryClass t = classify_trajectory(session->record);
  return {200,
          {{"game_id", session->id},
           {"kind", t.kind == TrajectoryClass::Kind::cg ? "CG" : "DAG"},
           {"first_repeat_ply", t.first_repeat_ply ? ojson(*t.first_repeat_ply) : ojson(nullptr)},
           {"states", session->record.states.size()}}};
}

void mount_routes(httplib::Server& server, GameService& service) {
  const std::string origin = service.config().cors_origin;
  auto send = [](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto parse = [](const httplib::Request& req, nlohmann::json& out) {
    if (req.body.empty()) {
      out = nlohmann::json::object();
      return true;
    }
    out = nlohmann::json::parse(req.body, nullptr, false);
    return !out.is_discarded();
  };

  server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/games", [&service, send, parse](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    if (!parse(req, body)) return send(res, error(400, "request body is not valid JSON"));
    send(res, service.create_game(body));
  });
  server.Post(R"(/games/([^/]+)/moves)",
              [&service, send, parse](const httplib::Request& req, httplib::Response& res) {
                nlohmann::json body;
                if (!parse(req, body)) return send(res, error(400, "request body is not valid JSON"));
                send(res, service.submit_move(req.matches[1], body));
              });
  server.Get(R"(/games/([^/]+)/trajectory)",
             [&service, send](const httplib::Request& req, httplib::Response& res) {
               send(res, service.get_trajectory(req.matches[1]));
             });
  server.Get(R"(/games/([^/]+))", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get_game(req.matches[1]));
  });
}

void serve(GameService& service, const std::string& host, int port) {
  httplib::Server server;
  mount_routes(server, service);
  if (!server.listen(host, port)) {
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

}  // namespace xigua
