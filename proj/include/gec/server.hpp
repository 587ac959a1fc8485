// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_SERVER_HPP
#define GEC_SERVER_HPP

#include "gec/service.hpp"

#include <httplib.h>

#include <memory>

namespace gec::service {

/// Registers the /api routes on `server`. `engine` must outlive it.
inline void mount(httplib::Server &server, const Engine &engine) {
  auto reply = [](httplib::Response &res, const Response &r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  // Bodies up to the limit plus JSON overhead reach the handler, which
  // answers 413 itself with a JSON error.
  server.set_payload_max_length(engine.max_text_bytes * 8 + 4096);
  server.Post("/api/check", [&engine, reply](const httplib::Request &req, httplib::Response &res) {
    reply(res, handle_check(engine, req.body));
  });
  server.Post("/api/apply", [&engine, reply](const httplib::Request &req, httplib::Response &res) {
    reply(res, handle_apply(engine, req.body));
  });
  server.Get("/api/health", [&engine, reply](const httplib::Request &, httplib::Response &res) {
    reply(res, handle_health(engine));
  });
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(/api/.*)", [](const httplib::Request &, httplib::Response &res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

} // namespace gec::service

#endif // GEC_SERVER_HPP
