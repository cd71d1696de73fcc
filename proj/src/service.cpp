#include "service.hpp"

#include <openssl/evp.h>

#include "httplib.h"

namespace zd {
namespace {

const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Pole: return "pole";
    case ErrorCode::DivisionByZero: return "division_by_zero";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::Io: return "io";
  }
  return "error";
}

Response json_response(int status, const Json& j) {
  Response r;
  r.status = status;
  r.content_type = "application/json";
  r.body = j.dump();
  return r;
}

Response error_response(int status, std::string_view code, std::string_view msg) {
  return json_response(status, Json{{"error", std::string(msg)}, {"code", std::string(code)}});
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::Io, "sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::optional<std::string> CatalogCache::get(const std::string& key) {
  std::lock_guard lock(mu_);
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  order_.splice(order_.begin(), order_, it->second);
  return it->second->second;
}

void CatalogCache::put(const std::string& key, std::string value) {
  if (capacity_ == 0) return;
  std::lock_guard lock(mu_);
  if (auto it = index_.find(key); it != index_.end()) {
    order_.splice(order_.begin(), order_, it->second);
    return;  // idempotent: same key, same value
  }
  order_.emplace_front(key, std::move(value));
  index_[key] = order_.begin();
  while (order_.size() > capacity_) {
    index_.erase(order_.back().first);
    order_.pop_back();
  }
}

size_t CatalogCache::size() const {
  std::lock_guard lock(mu_);
  return order_.size();
}

struct Service::Http {
  httplib::Server server;
};

Service::Service(ServiceConfig cfg) : cfg_(std::move(cfg)), cache_(std::make_unique<CatalogCache>(cfg_.cache_entries)) {}

Service::~Service() = default;

Response Service::dispatch(std::string_view path, const Query& q) const {
  RequestContext ctx{cfg_.limits, cfg_.eval, &cfg_.presets, cfg_.threads};
  if (path == "/api/tile") {
    const TileRequest tr = parse_tile_request(q, ctx);
    Response r;
    r.content_type = "image/png";
    const auto png = encode_png(render(tr.spec, cfg_.threads));
    r.body.assign(png.begin(), png.end());
    return r;
  }
  if (path == "/api/presets") {
    if (!q.empty()) fail(ErrorCode::InvalidArgument, "presets takes no parameters");
    return json_response(200, presets_json(cfg_.presets));
  }
  std::string_view kind;
  if (path == "/api/orbit") {
    kind = "orbit";
  } else if (path == "/api/criticals") {
    kind = "criticals";
  } else if (path == "/api/zeros") {
    kind = "zeros";
  } else if (path == "/api/transfer") {
    kind = "transfer";
  } else {
    return error_response(404, "not_found", "no such endpoint");
  }
  if (kind == "orbit") return json_response(200, run_analysis(kind, q, ctx));
  const std::string key = std::string(kind) + "?" + encode_query(q);
  if (auto hit = cache_->get(key)) {
    Response r;
    r.content_type = "application/json";
    r.body = std::move(*hit);
    return r;
  }
  Response r = json_response(200, run_analysis(kind, q, ctx));
  cache_->put(key, r.body);
  return r;
}

Response Service::handle(std::string_view path, const Query& q, std::string_view if_none_match) const {
  Response r;
  try {
    r = dispatch(path, q);
  } catch (const Error& e) {
    return error_response(http_status(e.code()), code_name(e.code()), e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
  if (r.status == 200) {
    r.etag = "\"" + sha256_hex(r.body) + "\"";
    if (!if_none_match.empty() && if_none_match == r.etag) {
      r.status = 304;
      r.body.clear();
    }
  }
  return r;
}

Response Service::handle_target(std::string_view target, std::string_view if_none_match) const {
  const auto qm = target.find('?');
  const std::string_view path = target.substr(0, qm);
  Query q;
  try {
    if (qm != std::string_view::npos) q = parse_query(target.substr(qm + 1));
  } catch (const Error& e) {
    return error_response(400, code_name(e.code()), e.what());
  }
  return handle(path, q, if_none_match);
}

int Service::bind() {
  http_ = std::make_unique<Http>();
  auto& srv = http_->server;
  auto api = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = handle_target(req.target, req.get_header_value("If-None-Match"));
    res.status = r.status;
    if (!r.etag.empty()) res.set_header("ETag", r.etag);
    res.set_header("Cache-Control", "no-cache");
    if (r.status != 304) res.set_content(r.body, r.content_type);
  };
  srv.Get(R"(/api/.*)", api);
  if (!cfg_.static_dir.empty() && !srv.set_mount_point("/", cfg_.static_dir)) {
    fail(ErrorCode::Io, "static directory '" + cfg_.static_dir + "' not found");
  }
  int port = cfg_.port;
  if (port == 0) {
    port = srv.bind_to_any_port(cfg_.host);
  } else if (!srv.bind_to_port(cfg_.host, port)) {
    port = -1;
  }
  if (port < 0) fail(ErrorCode::Io, "cannot bind " + cfg_.host + ":" + std::to_string(cfg_.port));
  return port;
}

void Service::serve() {
  if (!http_) fail(ErrorCode::Io, "serve() before bind()");
  http_->server.listen_after_bind();
}

void Service::wait_until_ready() const {
  if (http_) http_->server.wait_until_ready();
}

void Service::stop() {
  if (http_) http_->server.stop();
}

}  // namespace zd
