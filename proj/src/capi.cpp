#define ZETADYN_BUILDING 1
#include "zetadyn/zetadyn.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "service.hpp"
#include "special_functions.hpp"

struct zd_context {
  zd::Limits limits;
  zd::EvalParams eval;
  zd::PresetTable presets = zd::PresetTable::builtin();
  int threads = 0;
  std::string last_error;
};

struct zd_buffer {
  std::string bytes;
};

namespace {

zd_status status_of(zd::ErrorCode c) {
  switch (c) {
    case zd::ErrorCode::InvalidArgument: return ZD_E_INVALID;
    case zd::ErrorCode::Pole: return ZD_E_POLE;
    case zd::ErrorCode::DivisionByZero: return ZD_E_DIVZERO;
    case zd::ErrorCode::Unsupported: return ZD_E_UNSUPPORTED;
    case zd::ErrorCode::NotFound: return ZD_E_NOT_FOUND;
    case zd::ErrorCode::OutOfRange: return ZD_E_RANGE;
    case zd::ErrorCode::Io: return ZD_E_IO;
  }
  return ZD_E_INTERNAL;
}

template <class F>
zd_status guarded(zd_context* ctx, F&& fn) {
  if (!ctx) return ZD_E_INVALID;
  try {
    fn();
    ctx->last_error.clear();
    return ZD_OK;
  } catch (const zd::Error& e) {
    ctx->last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return ZD_E_INTERNAL;
  } catch (...) {
    ctx->last_error = "unknown failure";
    return ZD_E_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) zd::fail(zd::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

zd_buffer* make_buffer(std::string bytes) { return new zd_buffer{std::move(bytes)}; }

zd::RequestContext request_context(const zd_context* ctx) {
  return {ctx->limits, ctx->eval, &ctx->presets, ctx->threads};
}

}  // namespace

extern "C" {

const char* zd_version(void) { return "0.3.0"; }

zd_status zd_context_create(int use_env_limits, zd_context** out) {
  if (!out) return ZD_E_INVALID;
  *out = nullptr;
  try {
    auto ctx = std::make_unique<zd_context>();
    ctx->limits = use_env_limits ? zd::Limits::from_env() : zd::Limits::unlimited();
    *out = ctx.release();
    return ZD_OK;
  } catch (const zd::Error& e) {
    return status_of(e.code());
  } catch (...) {
    return ZD_E_INTERNAL;
  }
}

void zd_context_destroy(zd_context* ctx) { delete ctx; }

const char* zd_last_error(const zd_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

zd_status zd_set_eval(zd_context* ctx, const char* mode, int terms, double deriv_step) {
  return guarded(ctx, [&] {
    require(mode, "mode");
    zd::EvalParams ep;
    const std::string m = mode;
    if (m == "accelerated") {
      ep.mode = zd::EvalMode::Accelerated;
    } else if (m == "truncated") {
      ep.mode = zd::EvalMode::TruncatedEta;
    } else {
      zd::fail(zd::ErrorCode::InvalidArgument, "mode must be accelerated or truncated");
    }
    ep.terms = terms;
    ep.deriv_step = deriv_step;
    ep.validate();
    ctx->eval = ep;
  });
}

zd_status zd_set_threads(zd_context* ctx, int threads) {
  return guarded(ctx, [&] {
    if (threads < 0) zd::fail(zd::ErrorCode::InvalidArgument, "threads must be >= 0");
    ctx->threads = threads;
  });
}

zd_status zd_load_presets(zd_context* ctx, const char* path) {
  return guarded(ctx, [&] {
    require(path, "path");
    std::ifstream in(path, std::ios::binary);
    if (!in) zd::fail(zd::ErrorCode::Io, std::string("cannot read ") + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    ctx->presets.merge(zd::PresetTable::parse(ss.str()));
  });
}

zd_status zd_eval(zd_context* ctx, const char* function, double re, double im, double* out_re, double* out_im) {
  return guarded(ctx, [&] {
    require(function, "function");
    require(out_re, "out_re");
    require(out_im, "out_im");
    const zd::Complex v = zd::eval_function(zd::FunctionId::parse(function), {re, im}, ctx->eval);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

zd_status zd_eval_derivative(zd_context* ctx, const char* function, double re, double im, double* out_re,
                             double* out_im) {
  return guarded(ctx, [&] {
    require(function, "function");
    require(out_re, "out_re");
    require(out_im, "out_im");
    const zd::Complex v = zd::eval_derivative(zd::FunctionId::parse(function), {re, im}, ctx->eval);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

zd_status zd_render(zd_context* ctx, const char* query, zd_buffer** png, zd_buffer** resolved_json) {
  return guarded(ctx, [&] {
    require(query, "query");
    require(png, "png");
    *png = nullptr;
    if (resolved_json) *resolved_json = nullptr;
    const zd::TileRequest tr = zd::parse_tile_request(zd::parse_query(query), request_context(ctx));
    const auto bytes = zd::encode_png(zd::render(tr.spec, ctx->threads));
    std::string resolved = tr.resolved().dump(2);
    *png = make_buffer(std::string(bytes.begin(), bytes.end()));
    if (resolved_json) *resolved_json = make_buffer(std::move(resolved));
  });
}

zd_status zd_analyze_json(zd_context* ctx, const char* kind, const char* query, zd_buffer** json) {
  return guarded(ctx, [&] {
    require(kind, "kind");
    require(query, "query");
    require(json, "json");
    *json = nullptr;
    const zd::Json j = zd::run_analysis(kind, zd::parse_query(query), request_context(ctx));
    *json = make_buffer(j.dump(2));
  });
}

zd_status zd_presets_json(zd_context* ctx, zd_buffer** json) {
  return guarded(ctx, [&] {
    require(json, "json");
    *json = make_buffer(zd::presets_json(ctx->presets).dump(2));
  });
}

zd_status zd_serve(zd_context* ctx, const char* host, int port, const char* static_dir) {
  return guarded(ctx, [&] {
    zd::ServiceConfig cfg;
    if (host) cfg.host = host;
    if (port < 0 || port > 65535) zd::fail(zd::ErrorCode::InvalidArgument, "bad port");
    cfg.port = port;
    cfg.limits = ctx->limits;
    cfg.eval = ctx->eval;
    cfg.presets = ctx->presets;
    cfg.threads = ctx->threads;
    if (static_dir) cfg.static_dir = static_dir;
    zd::Service svc(std::move(cfg));
    const int bound = svc.bind();
    std::fprintf(stderr, "listening on http://%s:%d\n", svc.config().host.c_str(), bound);
    svc.serve();
  });
}

const unsigned char* zd_buffer_data(const zd_buffer* buf) {
  return buf ? reinterpret_cast<const unsigned char*>(buf->bytes.data()) : nullptr;
}

size_t zd_buffer_size(const zd_buffer* buf) { return buf ? buf->bytes.size() : 0; }

void zd_buffer_destroy(zd_buffer* buf) { delete buf; }

}  // extern "C"
