#pragma once

// Routes for GameService:
//   POST   /api/games              {n, human_side}
//   GET    /api/games/{id}
//   POST   /api/games/{id}/moves   {r, c}
//   DELETE /api/games/{id}
//   GET    /api/health

#include <string>

#include "httplib.h"
#include "json.hpp"
#include "sqrgame/service.hpp"

namespace sqrgame {

namespace detail {

inline void reply(httplib::Response& res, const ServiceResponse& r) {
  res.status = r.status;
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_content(r.body.dump(), "application/json");
}

inline bool parse_body(const httplib::Request& req, httplib::Response& res, nlohmann::json& out) {
  try {
    out = nlohmann::json::parse(req.body);
    return true;
  } catch (const nlohmann::json::exception& e) {
    reply(res, {400, {{"error", {{"code", "bad_request"}, {"message", e.what()}}}}});
    return false;
  }
}

}  // namespace detail

inline void register_routes(httplib::Server& server, GameService& service) {
  server.Get("/api/health", [&service](const httplib::Request&, httplib::Response& res) {
    detail::reply(res, service.health());
  });
  server.Post("/api/games", [&service](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    if (detail::parse_body(req, res, body)) detail::reply(res, service.create_game(body));
  });
  server.Get(R"(/api/games/([0-9A-Za-z_-]+))",
             [&service](const httplib::Request& req, httplib::Response& res) {
               detail::reply(res, service.get_game(req.matches[1]));
             });
  server.Delete(R"(/api/games/([0-9A-Za-z_-]+))",
                [&service](const httplib::Request& req, httplib::Response& res) {
                  detail::reply(res, service.delete_game(req.matches[1]));
                });
  server.Post(R"(/api/games/([0-9A-Za-z_-]+)/moves)",
              [&service](const httplib::Request& req, httplib::Response& res) {
                nlohmann::json body;
                if (detail::parse_body(req, res, body))
                  detail::reply(res, service.submit_move(req.matches[1], body));
              });
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

}  // namespace sqrgame
