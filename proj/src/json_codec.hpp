// JSON encodings of the library types. Complex numbers are [re, im]; values
// that overflowed encode as null.
#pragma once

#include "json.hpp"

#include "critical_points.hpp"
#include "dynamics.hpp"
#include "farey.hpp"
#include "presets.hpp"
#include "render.hpp"
#include "transfer.hpp"

namespace zd {

using Json = nlohmann::json;

Json complex_json(Complex z);
Json to_json(const CriticalPoint& cp);
Json to_json(const ZeroLocation& z);
Json to_json(const OrbitResult& r);
Json to_json(const FixedValue& fv);
Json to_json(const TransferAnalysis& ta);
Json to_json(const FareyStats& st);
Json to_json(const Preset& p);
Json to_json(const IterationParams& ip);
Json to_json(const EvalParams& ep);
Json to_json(const Viewport& vp);
Json to_json(const RenderSpec& spec);

}  // namespace zd
