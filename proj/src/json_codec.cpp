#include "json_codec.hpp"

namespace zd {
namespace {

const char* mode_name(EvalMode m) { return m == EvalMode::Accelerated ? "accelerated" : "truncated"; }

}  // namespace

Json complex_json(Complex z) {
  if (!is_finite(z)) return nullptr;
  return Json::array({z.real(), z.imag()});
}

Json to_json(const CriticalPoint& cp) {
  return {{"label", cp.label},
          {"kind", to_string(cp.kind)},
          {"location", complex_json(cp.location)},
          {"value", complex_json(cp.value)}};
}

Json to_json(const ZeroLocation& z) { return {{"index", z.index}, {"rho", complex_json(z.rho)}}; }

Json to_json(const OrbitResult& r) {
  Json j = {{"status", to_string(r.status)},
            {"steps", r.steps},
            {"period", r.period},
            {"final", complex_json(r.final)},
            {"overflow", r.overflow},
            {"pole_hit", r.pole_hit}};
  Json cycle = Json::array();
  for (Complex z : r.cycle) cycle.push_back(complex_json(z));
  j["cycle"] = std::move(cycle);
  if (r.multiplier) {
    j["multiplier"] = complex_json(*r.multiplier);
    j["multiplier_abs"] = is_finite(*r.multiplier) ? Json(std::abs(*r.multiplier)) : Json(nullptr);
  } else {
    j["multiplier"] = nullptr;
  }
  Json trace = Json::array();
  for (Complex z : r.trace) trace.push_back(complex_json(z));
  j["trace"] = std::move(trace);
  return j;
}

Json to_json(const FixedValue& fv) {
  return {{"c", complex_json(fv.c)},
          {"fixed_point", complex_json(fv.fixed_point)},
          {"deriv_abs", fv.deriv_mod},
          {"stability", to_string(fv.stability)},
          {"principal", fv.principal}};
}

Json to_json(const TransferAnalysis& ta) {
  Json fixed = Json::array();
  for (const auto& fv : ta.fixed_values) fixed.push_back(to_json(fv));
  return {{"function", ta.fid.to_string()},
          {"family", to_string(ta.family)},
          {"critical", to_json(ta.critical)},
          {"principal", complex_json(ta.principal)},
          {"fixed_values", std::move(fixed)}};
}

Json to_json(const FareyStats& st) {
  return {{"n", st.n}, {"m_n", st.m_n}, {"sum_abs_d", st.sum_abs_d}, {"sum_sq_d", st.sum_sq_d}};
}

Json to_json(const Preset& p) {
  return {{"name", p.name}, {"approximate", p.approximate}, {"query", p.query}, {"description", p.description}};
}

Json to_json(const IterationParams& ip) {
  return {{"max_iter", ip.max_iter},
          {"escape_radius", ip.escape_radius},
          {"plateau_re", ip.plateau_re},
          {"eps_cycle", ip.eps_cycle},
          {"history", ip.history}};
}

Json to_json(const EvalParams& ep) {
  return {{"mode", mode_name(ep.mode)}, {"terms", ep.terms}, {"deriv_step", ep.deriv_step}};
}

Json to_json(const Viewport& vp) {
  return {{"center", complex_json(vp.center)}, {"width", vp.width}, {"px_w", vp.px_w}, {"px_h", vp.px_h}};
}

Json to_json(const RenderSpec& spec) {
  Json markers = Json::array();
  for (const Marker& m : spec.markers) markers.push_back({{"kind", to_string(m.kind)}, {"pos", complex_json(m.pos)}});
  Json j = {{"view", to_string(spec.view)},
            {"function", spec.fid.to_string()},
            {"scheme", to_string(spec.scheme)},
            {"viewport", to_json(spec.viewport)},
            {"iteration", to_json(spec.iter)},
            {"eval", to_json(spec.eval)},
            {"supersample", spec.supersample},
            {"adaptive_terms", spec.adaptive_terms},
            {"markers", std::move(markers)}};
  if (spec.view == ViewKind::Portrait) {
    j["derivative"] = spec.derivative;
  } else {
    j["family"] = to_string(spec.family);
    if (spec.view == ViewKind::Parameter) {
      j["start"] = complex_json(spec.start);
    } else {
      j["c"] = complex_json(spec.c);
    }
  }
  return j;
}

}  // namespace zd
