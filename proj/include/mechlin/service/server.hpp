#pragma once

#include <string>

#include "httplib.h"
#include "mechlin/service/api.hpp"

namespace mechlin::service {

/// Registers every route on an httplib server. Handlers keep no state.
inline void install_routes(httplib::Server& srv) {
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  srv.Get("/v1/health", [reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle("GET", req.path, req.body));
  });
  for (const auto& route : post_routes()) {
    srv.Post(route, [reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, handle("POST", req.path, req.body));
    });
  }
  // Anything unmatched: 404 (or 405 for a known path with the wrong method).
  srv.set_error_handler([reply](const httplib::Request& req, httplib::Response& res) {
    if (res.status == 404 || res.status == 405) reply(res, handle(req.method, req.path, req.body));
  });
}

/// Blocks serving on host:port. Returns false if the socket cannot be bound.
inline bool serve(const std::string& host, int port) {
  httplib::Server srv;
  install_routes(srv);
  return srv.listen(host, port);
}

}  // namespace mechlin::service
