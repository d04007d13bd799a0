// Copyright 2026 The BioCS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Read-only HTTP API over an immutable knowledge graph snapshot.
//
//   GET /api/health
//   GET /api/concepts?prefix=&limit=
//   GET /api/ego?concept=&predicates=&direction=&limit=
//   GET /api/sentence?doc_id=&sent_index=
//
// The handlers are plain functions of (graph, query parameters) so they can
// be exercised without a socket; make_server() wires them into cpp-httplib.

#pragma once

#include <charconv>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "biocs/kg.hpp"
#include "httplib.h"
#include "json.hpp"

namespace biocs::api {

using Params = std::map<std::string, std::string>;

struct Response {
  int status = 200;
  std::string body;
};

inline constexpr int kDefaultConceptLimit = 20;
inline constexpr int kDefaultEgoLimit = 50;

namespace detail {

inline Response json_response(int status, const nlohmann::json& j) { return {status, j.dump()}; }

inline Response error(int status, const std::string& message) {
  return json_response(status, {{"error", message}});
}

inline std::optional<std::string> param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) return std::nullopt;
  return it->second;
}

// Non-negative integer or nullopt on garbage.
inline std::optional<int> parse_int(const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}

}  // namespace detail

inline Response health() { return detail::json_response(200, {{"status", "ok"}}); }

inline Response concepts(const KnowledgeGraph& kg, const Params& params) {
  int limit = kDefaultConceptLimit;
  if (auto l = detail::param(params, "limit"); l && !l->empty()) {
    auto v = detail::parse_int(*l);
    if (!v) return detail::error(400, "limit must be a non-negative integer");
    limit = *v;
  }
  const std::string prefix = detail::param(params, "prefix").value_or("");
  auto list = nlohmann::json::array();
  for (const ConceptNode* n : kg.concepts(prefix, limit)) {
    list.push_back({{"key", n->key}, {"display", n->display}, {"freq", n->freq}});
  }
  return detail::json_response(200, {{"concepts", std::move(list)}});
}

inline Response ego(const KnowledgeGraph& kg, const Params& params) {
  const auto center = detail::param(params, "concept");
  if (!center || trim(*center).empty()) return detail::error(400, "missing concept");
  std::set<std::string> preds;
  for (const auto& p : split(detail::param(params, "predicates").value_or(""), ',')) {
    if (!trim(p).empty()) preds.insert(trim(p));
  }
  Direction dir;
  try {
    dir = parse_direction(detail::param(params, "direction").value_or("both"));
  } catch (const UsageError& e) {
    return detail::error(400, e.what());
  }
  int limit = kDefaultEgoLimit;
  if (auto l = detail::param(params, "limit"); l && !l->empty()) {
    auto v = detail::parse_int(*l);
    if (!v) return detail::error(400, "limit must be a non-negative integer");
    limit = *v;
  }
  return detail::json_response(200, to_json(kg.query_ego(*center, preds, dir, limit)));
}

inline Response sentence(const KnowledgeGraph& kg, const Params& params) {
  const auto doc_id = detail::param(params, "doc_id");
  const auto idx = detail::param(params, "sent_index");
  if (!doc_id || doc_id->empty()) return detail::error(400, "missing doc_id");
  if (!idx) return detail::error(400, "missing sent_index");
  auto v = detail::parse_int(*idx);
  if (!v) return detail::error(400, "sent_index must be a non-negative integer");
  auto text = kg.sentence_text({*doc_id, *v});
  if (!text) return detail::error(404, "unknown sentence");
  return detail::json_response(200, {{"doc_id", *doc_id}, {"sent_index", *v}, {"text", *text}});
}

inline Params to_params(const httplib::Request& req) {
  Params p;
  for (const auto& [k, v] : req.params) p.emplace(k, v);
  return p;
}

// The graph must outlive the server.
inline std::unique_ptr<httplib::Server> make_server(const KnowledgeGraph& kg,
                                                    const std::string& static_dir = "") {
  auto server = std::make_unique<httplib::Server>();
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  };
  server->Get("/api/health", [reply](const httplib::Request&, httplib::Response& res) {
    reply(res, health());
  });
  server->Get("/api/concepts", [&kg, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, concepts(kg, to_params(req)));
  });
  server->Get("/api/ego", [&kg, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, ego(kg, to_params(req)));
  });
  server->Get("/api/sentence", [&kg, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, sentence(kg, to_params(req)));
  });
  server->set_exception_handler([](const httplib::Request&, httplib::Response& res,
                                   std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      if (ep) std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    res.status = 400;
    res.set_content(nlohmann::json{{"error", what}}.dump(), "application/json; charset=utf-8");
  });
  if (!static_dir.empty() && !server->set_mount_point("/", static_dir)) {
    throw DataError("static directory not found: " + static_dir);
  }
  return server;
}

// "host:port" -> (host, port).
inline std::pair<std::string, int> parse_addr(const std::string& addr) {
  auto colon = addr.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw UsageError("--addr must be host:port (got '" + addr + "')");
  }
  auto port = detail::parse_int(addr.substr(colon + 1));
  if (!port || *port > 65535) throw UsageError("bad port in --addr '" + addr + "'");
  return {addr.substr(0, colon), *port};
}

}  // namespace biocs::api
