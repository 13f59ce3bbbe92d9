#pragma once

// In-memory game sessions against the strategy engine. Transport-agnostic:
// every call returns an HTTP-style status code and a JSON body; http.hpp
// binds these to routes.

#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sqrgame/board.hpp"
#include "sqrgame/engine.hpp"
#include "sqrgame/library.hpp"
#include "sqrgame/rules.hpp"

namespace sqrgame {

inline constexpr const char* kServiceVersion = "1.0.0";

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

class GameService {
 public:
  explicit GameService(StrategyLibrary tables = {}) : tables_(std::move(tables)) {}

  ServiceResponse health() const {
    return {200, {{"status", "ok"}, {"version", kServiceVersion}}};
  }

  ServiceResponse create_game(const nlohmann::json& req) {
    int n = 0;
    CellValue human = CellValue::Empty;
    try {
      n = req.at("n").get<int>();
      human = parse_player(req.at("human_side").get<std::string>());
    } catch (const std::exception& e) {
      return error(400, "bad_request", std::string("expected {n, human_side}: ") + e.what());
    }
    if (n < 3 || n > 5) return error(400, "unsupported_size", "n must be 3, 4 or 5");
    auto s = std::make_shared<Session>(n, human, profile_for(n, opponent(human)));
    s->id = new_id();
    if (s->engine.engine_side == CellValue::P1) s->engine_reply();
    {
      std::unique_lock lock(sessions_mu_);
      sessions_[s->id] = s;
    }
    std::lock_guard lock(s->mu);
    return {201, s->snapshot()};
  }

  ServiceResponse get_game(const std::string& id) const {
    auto s = find(id);
    if (!s) return unknown(id);
    std::lock_guard lock(s->mu);
    return {200, s->snapshot()};
  }

  ServiceResponse submit_move(const std::string& id, const nlohmann::json& req) {
    auto s = find(id);
    if (!s) return unknown(id);
    Position p;
    try {
      p = {req.at("r").get<int>(), req.at("c").get<int>()};
    } catch (const std::exception& e) {
      return error(400, "bad_request", std::string("expected {r, c}: ") + e.what());
    }
    std::lock_guard lock(s->mu);
    if (!std::holds_alternative<Ongoing>(game_status(s->grid)))
      return error(409, "game_over", "the game has finished");
    if (s->grid.to_move() != s->human) return error(409, "not_your_turn", "waiting for the engine");
    if (!s->grid.in_range(p)) return error(400, "illegal_cell", "cell outside the board");
    if (!s->grid.empty_at(s->grid.index(p))) return error(400, "illegal_cell", "cell is occupied");

    s->grid.place(p, s->human);
    s->last_engine_move.reset();
    if (std::holds_alternative<Ongoing>(game_status(s->grid))) s->engine_reply();
    nlohmann::json body = s->snapshot();
    body["accepted"] = pos_json(p);
    body["engine_reply"] = s->last_engine_move ? pos_json(*s->last_engine_move) : nullptr;
    return {200, body};
  }

  ServiceResponse delete_game(const std::string& id) {
    std::unique_lock lock(sessions_mu_);
    if (sessions_.erase(id) == 0) return unknown(id);
    return {200, {{"deleted", id}}};
  }

  std::size_t session_count() const {
    std::shared_lock lock(sessions_mu_);
    return sessions_.size();
  }

  // Sessions are stored as move logs and replayed on load.
  void save_snapshot(const std::filesystem::path& path) const {
    nlohmann::json all = nlohmann::json::array();
    {
      std::shared_lock lock(sessions_mu_);
      for (const auto& [id, s] : sessions_) {
        std::lock_guard slock(s->mu);
        nlohmann::json moves = nlohmann::json::array();
        for (const Move& m : s->grid.history()) moves.push_back({m.pos.r, m.pos.c});
        all.push_back({{"id", id},
                       {"n", s->n},
                       {"human_side", player_name(s->human)},
                       {"moves", moves}});
      }
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write snapshot " + path.string());
    out << all.dump(2) << "\n";
  }

  void load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read snapshot " + path.string());
    const auto all = nlohmann::json::parse(in);
    std::unique_lock lock(sessions_mu_);
    for (const auto& item : all) {
      const int n = item.at("n").get<int>();
      const CellValue human = parse_player(item.at("human_side").get<std::string>());
      auto s = std::make_shared<Session>(n, human, profile_for(n, opponent(human)));
      s->id = item.at("id").get<std::string>();
      for (const auto& m : item.at("moves"))
        s->grid.place({m.at(0).get<int>(), m.at(1).get<int>()}, s->grid.to_move());
      sessions_[s->id] = s;
    }
  }

 private:
  struct Session {
    Session(int n_, CellValue human_, EngineProfile engine_)
        : n(n_), human(human_), engine(std::move(engine_)), grid(n_) {}

    void engine_reply() {
      const Position p = engine_move(grid, engine);
      grid.place(p, engine.engine_side);
      last_engine_move = p;
    }

    nlohmann::json snapshot() const {
      const GameStatus st = game_status(grid);
      nlohmann::json j;
      j["id"] = id;
      j["n"] = n;
      j["human_side"] = player_name(human);
      j["engine_side"] = player_name(engine.engine_side);
      j["state"] = grid.encode();
      j["guarantee"] = engine.table != nullptr && is_guaranteed_side(n, engine.engine_side);
      nlohmann::json moves = nlohmann::json::array();
      for (const Move& m : grid.history())
        moves.push_back({{"r", m.pos.r}, {"c", m.pos.c}, {"player", player_name(m.value)}});
      j["moves"] = moves;
      j["last_engine_move"] = last_engine_move ? pos_json(*last_engine_move) : nullptr;
      j["winning_square"] = nullptr;
      j["winner"] = nullptr;
      if (std::holds_alternative<Ongoing>(st)) {
        j["status"] = "ongoing";
        j["to_move"] = player_name(grid.to_move());
      } else {
        j["to_move"] = nullptr;
        if (const auto* w = std::get_if<WonBy>(&st)) {
          j["status"] = "won";
          j["winner"] = player_name(w->player);
          nlohmann::json vs = nlohmann::json::array();
          for (Position v : w->square.vertices()) vs.push_back(pos_json(v));
          j["winning_square"] = {
              {"r", w->square.r}, {"c", w->square.c}, {"d", w->square.d}, {"vertices", vs}};
        } else {
          j["status"] = "draw";
        }
      }
      nlohmann::json threats;
      for (CellValue v : {CellValue::P1, CellValue::P2}) {
        nlohmann::json cells = nlohmann::json::array();
        for (Position p : completing_cells(grid, v)) cells.push_back(pos_json(p));
        threats[player_name(v)] = cells;
      }
      j["threats"] = threats;
      return j;
    }

    std::string id;
    int n;
    CellValue human;
    EngineProfile engine;
    Grid grid;
    std::optional<Position> last_engine_move;
    mutable std::mutex mu;
  };

  static nlohmann::json pos_json(Position p) { return {{"r", p.r}, {"c", p.c}}; }

  static ServiceResponse error(int status, const std::string& code, const std::string& message) {
    return {status, {{"error", {{"code", code}, {"message", message}}}}};
  }

  static ServiceResponse unknown(const std::string& id) {
    return error(404, "unknown_game", "no game with id '" + id + "'");
  }

  EngineProfile profile_for(int n, CellValue engine_side) const {
    EngineProfile prof;
    prof.n = n;
    prof.engine_side = engine_side;
    if (auto it = tables_.find({n, engine_side}); it != tables_.end()) prof.table = it->second;
    return prof;
  }

  std::shared_ptr<Session> find(const std::string& id) const {
    std::shared_lock lock(sessions_mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  std::string new_id() {
    std::lock_guard lock(rng_mu_);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string id(16, '0');
    for (auto& ch : id) ch = kHex[rng_() & 15];
    return id;
  }

  StrategyLibrary tables_;
  mutable std::shared_mutex sessions_mu_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex rng_mu_;
  std::mt19937_64 rng_{std::random_device{}()};
};

}  // namespace sqrgame
