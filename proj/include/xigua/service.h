#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "json.hpp"
#include "xigua/rules.h"
#include "xigua/solver.h"

namespace httplib {
class Server;
}

namespace xigua {

struct ServiceConfig {
  // Completed games are appended here as JSONL records; empty disables it.
  std::string archive_path;
  SearchConfig engine;
  RuleConfig rules;
  std::string cors_origin = "*";
};

struct ServiceResponse {
  int status = 200;
  nlohmann::ordered_json body;
};

// Session store and request handlers for the play-against-the-engine API.
// Handlers are safe to call concurrently; calls on one session serialize.
class GameService {
 public:
  explicit GameService(ServiceConfig config = {});

  // POST /games
  ServiceResponse create_game(const nlohmann::json& body);
  // POST /games/{id}/moves
  ServiceResponse submit_move(const std::string& id, const nlohmann::json& body);
  // GET /games/{id}
  ServiceResponse get_game(const std::string& id);
  // GET /games/{id}/trajectory
  ServiceResponse get_trajectory(const std::string& id);

  const ServiceConfig& config() const { return config_; }

 private:
  struct Session {
    std::mutex mu;
    std::string id;
    GameRecord record;
    HashHistory history;
    SearchConfig engine;
    int human = 1;  // 0: both sides are played through the API
    bool auto_reply = true;
    bool archived = false;
    std::chrono::system_clock::time_point created_at;

    const GameState& state() const { return record.states.back(); }
    bool human_to_move(int side) const { return human == 0 || human == side; }
  };

  std::shared_ptr<Session> find(const std::string& id);
  nlohmann::ordered_json play(Session& s, Move move);
  nlohmann::ordered_json state_view(const Session& s) const;
  void finish_if_over(Session& s);

  ServiceConfig config_;
  std::mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::atomic<std::uint64_t> next_id_{1};
};

// Registers the routes (with CORS headers) on an httplib server.
void mount_routes(httplib::Server& server, GameService& service);

// Blocks serving on host:port until the process is stopped.
void serve(GameService& service, const std::string& host, int port);

}  // namespace xigua
