// Query-string requests shared by the HTTP service, the C API and the CLI.
#pragma once

#include <map>
#include <string>
#include <string_view>

#include "json_codec.hpp"

namespace zd {

using Query = std::map<std::string, std::string, std::less<>>;

// "a=1&b=x%2Cy" -> {a: 1, b: "x,y"}. '+' is kept literally.
Query parse_query(std::string_view text);
std::string encode_query(const Query& q);

struct Limits {
  int max_px = 1024;
  double max_im = 300.0;
  int max_iter = 4096;

  // ZETADYN_MAX_PX, ZETADYN_MAX_IM, ZETADYN_MAX_ITER override the defaults.
  static Limits from_env();
  static Limits unlimited();
};

struct RequestContext {
  Limits limits;
  EvalParams eval;  // defaults for mode/terms/deriv_step
  const PresetTable* presets = nullptr;
  int threads = 0;
};

struct TileRequest {
  RenderSpec spec;
  std::string start_text;  // label or literal as given
  std::string preset;
  Json resolved() const;
};

// Applies the preset (if any) under the explicit keys, resolves critical
// labels and checks limits. Unknown preset or label -> NotFound; everything
// else malformed or over a limit -> InvalidArgument / OutOfRange.
TileRequest parse_tile_request(const Query& q, const RequestContext& ctx);

// kind: criticals, zeros, transfer, orbit, farey.
Json run_analysis(std::string_view kind, const Query& q, const RequestContext& ctx);

Json presets_json(const PresetTable& table);

// HTTP status for a library error.
int http_status(ErrorCode code);

}  // namespace zd
