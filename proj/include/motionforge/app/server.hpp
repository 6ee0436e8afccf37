#pragma once

// Stateless local HTTP/JSON service around the request handlers.
//
//   GET  /api/health       → {"status": "ok"}
//   POST /api/interpolate  TaskDocument → {"motion", "report"}
//   POST /api/factorize    MotionDocument → {"monic", "factorizations", "mechanisms"}
//   POST /api/sample       {"motion", "count" | "at", "range", "point"} → {"samples"}
//
// Failures: 400 for input/schema codes, 422 for mathematical ones, body
// {"error": {"code", "message"}}.

#include <exception>
#include <string>

#include "motionforge/app/handlers.hpp"
#include "motionforge/error.hpp"

// After the engine headers: <resolv.h>, pulled in by httplib, defines a `_res`
// macro that clashes with Eigen parameter names.
#include <httplib.h>
#include <json.hpp>

namespace motionforge::app {

namespace detail {

inline bool local_origin(const std::string& origin) {
  for (const char* prefix : {"http://localhost", "http://127.0.0.1", "http://[::1]"}) {
    const std::string p(prefix);
    if (origin.compare(0, p.size(), p) == 0 && (origin.size() == p.size() || origin[p.size()] == ':')) return true;
  }
  return false;
}

inline void allow_cors(const httplib::Request& req, httplib::Response& res) {
  const std::string origin = req.get_header_value("Origin");
  if (local_origin(origin)) {
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Vary", "Origin");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  }
}

inline void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(io::serialize(body), "application/json");
}

template <typename Handler>
httplib::Server::Handler json_endpoint(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    allow_cors(req, res);
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::parse_error& e) {
      reply(res, 400, io::error_json(Error(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what())));
      return;
    }
    try {
      reply(res, 200, handler(body));
    } catch (const Error& e) {
      reply(res, is_input_error(e.code()) ? 400 : 422, io::error_json(e));
    } catch (const json::exception& e) {
      reply(res, 400, io::error_json(Error(ErrorCode::SchemaError, e.what())));
    }
  };
}

}  // namespace detail

inline void register_routes(httplib::Server& server) {
  server.Get("/api/health", [](const httplib::Request& req, httplib::Response& res) {
    detail::allow_cors(req, res);
    detail::reply(res, 200, json{{"status", "ok"}});
  });
  server.Options(R"(/api/.*)", [](const httplib::Request& req, httplib::Response& res) {
    detail::allow_cors(req, res);
    res.status = 204;
  });
  server.Post("/api/interpolate", detail::json_endpoint([](const json& b) { return handle_interpolate(b); }));
  server.Post("/api/factorize", detail::json_endpoint([](const json& b) {
                // A bare MotionDocument or {"motion": MotionDocument}.
                if (b.is_object() && b.contains("motion")) return handle_factorize(b["motion"], LoopMode::IfAny);
                return handle_factorize(b, LoopMode::IfAny);
              }));
  server.Post("/api/sample", detail::json_endpoint([](const json& b) { return handle_sample(b); }));
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "unexpected failure";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    detail::reply(res, 500, json{{"error", {{"code", "INTERNAL"}, {"message", what}}}});
  });
}

}  // namespace motionforge::app
