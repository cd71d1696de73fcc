// HTTP facade. Handlers are pure functions of (path, query); the only shared
// state is a bounded cache of catalog responses.
#pragma once

#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "request.hpp"

namespace zd {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  Limits limits;
  EvalParams eval;
  PresetTable presets = PresetTable::builtin();
  std::string static_dir;  // served at / when set
  int threads = 0;
  size_t cache_entries = 128;
};

struct Response {
  int status = 200;
  std::string content_type;
  std::string body;
  std::string etag;  // quoted SHA-256 of the body
};

std::string sha256_hex(std::string_view data);

class CatalogCache {
 public:
  explicit CatalogCache(size_t capacity) : capacity_(capacity) {}
  std::optional<std::string> get(const std::string& key);
  void put(const std::string& key, std::string value);
  size_t size() const;

 private:
  size_t capacity_;
  mutable std::mutex mu_;
  std::list<std::pair<std::string, std::string>> order_;  // front = most recent
  std::unordered_map<std::string, std::list<std::pair<std::string, std::string>>::iterator> index_;
};

class Service {
 public:
  explicit Service(ServiceConfig cfg);
  ~Service();

  // path is e.g. "/api/tile"; a matching if_none_match yields 304.
  Response handle(std::string_view path, const Query& q, std::string_view if_none_match = {}) const;
  Response handle_target(std::string_view target, std::string_view if_none_match = {}) const;

  const ServiceConfig& config() const { return cfg_; }
  const CatalogCache& cache() const { return *cache_; }

  // Binds and returns the port; serve() then blocks until stop().
  int bind();
  void serve();
  void wait_until_ready() const;
  void stop();

 private:
  Response dispatch(std::string_view path, const Query& q) const;

  ServiceConfig cfg_;
  std::unique_ptr<CatalogCache> cache_;
  struct Http;
  std::unique_ptr<Http> http_;
};

}  // namespace zd
