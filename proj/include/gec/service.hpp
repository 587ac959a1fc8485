// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_SERVICE_HPP
#define GEC_SERVICE_HPP

#include "gec/corrector.hpp"
#include "gec/error.hpp"
#include "gec/lexicon.hpp"
#include "gec/rules.hpp"
#include "gec/version.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <string>
#include <string_view>
#include <utility>

namespace gec::service {

/// Artifacts shared by all requests; never mutated after startup.
struct Engine {
  Lexicon lexicon;
  RulePack rules;
  std::size_t max_text_bytes = 64 * 1024;
  std::size_t max_distance_cap = 3;
  std::size_t top_n_cap = 50;
};

struct Response {
  int status = 200;
  std::string body;
};

inline nlohmann::json to_json(const Diagnostic &d) {
  nlohmann::json sugg = nlohmann::json::array();
  for (const auto &s : d.suggestions)
    sugg.push_back({{"replacement", s.replacement}, {"distance", s.distance}, {"score", s.score}});
  return {{"start", d.span.start},
          {"end", d.span.end},
          {"observed", d.observed},
          {"kind", to_string(d.kind)},
          {"rule_id", d.rule_id ? nlohmann::json(*d.rule_id) : nlohmann::json(nullptr)},
          {"message", d.message},
          {"suggestions", sugg}};
}

inline Diagnostic diagnostic_from_json(const nlohmann::json &j) {
  Diagnostic d;
  d.span = {j.at("start").get<std::size_t>(), j.at("end").get<std::size_t>()};
  d.observed = j.at("observed").get<std::string>();
  const auto kind = parse_diagnostic_kind(j.at("kind").get<std::string>());
  if (!kind)
    throw ParseError("unknown diagnostic kind", 0);
  d.kind = *kind;
  if (!j.at("rule_id").is_null())
    d.rule_id = j.at("rule_id").get<std::string>();
  d.message = j.value("message", std::string());
  for (const auto &s : j.at("suggestions"))
    d.suggestions.push_back({s.at("replacement").get<std::string>(), s.at("distance").get<std::size_t>(),
                             s.at("score").get<double>()});
  return d;
}

inline Response error_response(int status, std::string_view code, std::string_view message) {
  nlohmann::json j = {{"error", {{"code", code}, {"message", message}}}};
  return {status, j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)};
}

namespace detail {

// Parses a JSON object body or produces the 400/413 response.
inline bool parse_body(const Engine &engine, std::string_view body, nlohmann::json &out, Response &err) {
  try {
    out = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error &e) {
    err = error_response(400, "malformed_json", e.what());
    return false;
  }
  if (!out.is_object()) {
    err = error_response(400, "bad_request", "request body must be a JSON object");
    return false;
  }
  if (!out.contains("text") || !out["text"].is_string()) {
    err = error_response(400, "bad_request", "field 'text' (string) is required");
    return false;
  }
  if (out["text"].get_ref<const std::string &>().size() > engine.max_text_bytes) {
    err = error_response(413, "text_too_large",
                         "text exceeds " + std::to_string(engine.max_text_bytes) + " bytes");
    return false;
  }
  return true;
}

} // namespace detail

/// POST /api/check
///   {"text": "...", "language_tag": "dje",
///    "options": {"d_max": 2, "top_n": 5, "rules_enabled": true}}
/// -> {"version", "language_tag", "diagnostics": [...], "timing_ms"}
inline Response handle_check(const Engine &engine, std::string_view body) {
  nlohmann::json req;
  Response err;
  if (!detail::parse_body(engine, body, req, err))
    return err;
  CheckOptions opts;
  try {
    if (req.contains("language_tag") && !req["language_tag"].is_null() &&
        req["language_tag"].get<std::string>() != engine.lexicon.language_tag())
      return error_response(400, "unsupported_language",
                            "service is loaded with language '" + engine.lexicon.language_tag() + "'");
    if (req.contains("options")) {
      const auto &o = req.at("options");
      if (!o.is_object())
        return error_response(400, "bad_request", "'options' must be an object");
      opts.limits.max_distance = o.value("d_max", opts.limits.max_distance);
      opts.limits.top_n = o.value("top_n", opts.limits.top_n);
      opts.rules_enabled = o.value("rules_enabled", opts.rules_enabled);
      opts.case_fallback = o.value("case_fallback", opts.case_fallback);
    }
  } catch (const nlohmann::json::exception &e) {
    return error_response(400, "bad_request", e.what());
  }
  if (opts.limits.max_distance < 1 || opts.limits.max_distance > engine.max_distance_cap)
    return error_response(400, "bad_option", "d_max must be in [1, " + std::to_string(engine.max_distance_cap) + "]");
  if (opts.limits.top_n < 1 || opts.limits.top_n > engine.top_n_cap)
    return error_response(400, "bad_option", "top_n must be in [1, " + std::to_string(engine.top_n_cap) + "]");

  const auto &text = req["text"].get_ref<const std::string &>();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Diagnostic> diags;
  try {
    diags = check_text(engine.lexicon, engine.rules, text, opts);
  } catch (const Utf8Error &e) {
    return error_response(400, "invalid_utf8", e.what());
  }
  const auto t1 = std::chrono::steady_clock::now();
  nlohmann::json out;
  out["version"] = version_string;
  out["language_tag"] = engine.lexicon.language_tag();
  out["diagnostics"] = nlohmann::json::array();
  for (const auto &d : diags)
    out["diagnostics"].push_back(to_json(d));
  out["timing_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return {200, out.dump()};
}

/// POST /api/apply
///   {"text": "...", "edits": [{"start": 2, "end": 7, "replacement": "sind"}]}
/// -> {"text": "<edited>"}
inline Response handle_apply(const Engine &engine, std::string_view body) {
  nlohmann::json req;
  Response err;
  if (!detail::parse_body(engine, body, req, err))
    return err;
  EditScript script;
  try {
    for (const auto &e : req.at("edits"))
      script.push_back({{e.at("start").get<std::size_t>(), e.at("end").get<std::size_t>()},
                        e.at("replacement").get<std::string>()});
  } catch (const nlohmann::json::exception &e) {
    return error_response(400, "bad_request", std::string("bad 'edits': ") + e.what());
  }
  try {
    const auto &text = req["text"].get_ref<const std::string &>();
    utf8::validate(text);
    for (const auto &e : script)
      utf8::validate(e.replacement);
    nlohmann::json out = {{"text", apply_edits(text, std::move(script))}};
    return {200, out.dump()};
  } catch (const EditError &e) {
    return error_response(400, "bad_edits", e.what());
  } catch (const Utf8Error &e) {
    return error_response(400, "invalid_utf8", e.what());
  }
}

/// GET /api/health
inline Response handle_health(const Engine &engine) {
  nlohmann::json out = {{"status", "ok"},
                        {"version", version_string},
                        {"language_tag", engine.lexicon.language_tag()},
                        {"lexicon",
                         {{"entries", engine.lexicon.size()},
                          {"bloom_bits", engine.lexicon.bloom().params().bits},
                          {"bloom_hashes", engine.lexicon.bloom().params().hashes}}},
                        {"rules", engine.rules.rules().size()}};
  return {200, out.dump()};
}

} // namespace gec::service

#endif // GEC_SERVICE_HPP
