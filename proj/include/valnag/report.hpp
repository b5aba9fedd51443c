#pragma once

#include "valnag/scene.hpp"

#include <json.hpp>

#include <limits>

namespace valnag::report {

using Json = nlohmann::json;

inline constexpr int schema_version = 1;

inline Json integer(const Integer& z) {
  if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max())
    return static_cast<long long>(z);
  return z.str();
}

inline Json integers(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(integer(z));
  return out;
}

inline Json rational(const Rational& q) { return to_string(q); }

/// Rational values as "p/q"; irrational ones as {"a","b","n"} for a + b sqrt(n).
inline Json surd(const Surd& s) {
  if (s.is_rational()) return to_string(s.rational());
  return Json{{"a", to_string(s.a())}, {"b", to_string(s.b())}, {"n", s.n().str()}};
}

inline Json optional_surd(const std::optional<Surd>& s) { return s ? surd(*s) : Json(nullptr); }

inline Json point(const ExactPoint& p) { return Json::array({surd(p.x), surd(p.y)}); }

inline Json points(const std::vector<ExactPoint>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(point(p));
  return out;
}

inline Json numerical_class(const BlowupModel& model, const NumericalClass& x) {
  Json out;
  out["d"] = rational(x.d);
  Json e = Json::array();
  for (int i = 0; i < model.r(); ++i) e.push_back(rational(i < static_cast<int>(x.e.size()) ? x.e[i] : Rational(0)));
  out["e"] = e;
  if (!model.surface().is_p2()) {
    Json curves = Json::object();
    for (std::size_t k = 0; k < model.curves().size(); ++k)
      curves[model.curves()[k].name] = rational(k < x.curves.size() ? x.curves[k] : Rational(0));
    out["curves"] = curves;
  }
  return out;
}

inline Json component_list(const BlowupModel& model, const std::vector<Component>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(model.component_name(c));
  return out;
}

inline Json affine(const Affine& a) { return Json{{"c0", rational(a.c0)}, {"c1", rational(a.c1)}}; }

inline Json flag(const Flag& f) {
  if (f.is_satellite()) return Json{{"kind", "sat"}, {"eta", f.eta}};
  return Json{{"kind", "free"}};
}

inline Json strings(const std::vector<std::string>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

inline Json invariants(const BlowupModel& model, const TangentSpec& tangent) {
  const auto& inv = model.invariants();
  Json out;
  out["r"] = inv.r();
  out["mults"] = integers(inv.mults);
  Json edges = Json::array();
  for (const auto& [a, b] : inv.graph.edges) edges.push_back(Json::array({a, b}));
  out["dualGraph"] = Json{{"vertices", inv.graph.vertices}, {"edges", edges}};
  out["stars"] = inv.stars;
  out["g"] = inv.g();
  out["betas"] = integers(inv.betas);
  out["vol"] = rational(inv.vol);
  out["volN"] = rational(inv.volN);
  out["volNInv"] = rational(inv.volN_inv);
  Json nm = Json::array(), nb = Json::array();
  for (const auto& q : inv.normalized_mults()) nm.push_back(rational(q));
  for (const auto& q : inv.normalized_betas()) nb.push_back(rational(q));
  out["normalizedMults"] = nm;
  out["normalizedBetas"] = nb;
  out["semigroupGenerators"] = integers(std::vector<Integer>(inv.betas.begin(), inv.betas.end() - 1));
  if (model.surface().is_p2()) {
    auto line = derive_tangent_line(model, tangent);
    out["tangentLine"] = Json{{"t", integer(line.t)}, {"incidence", line.incidence}, {"warnings", strings(line.warnings)}};
  }
  Json curves = Json::object();
  for (std::size_t k = 0; k < model.curves().size(); ++k) curves[model.curves()[k].name] = integer(model.curve_value(k));
  out["curveValues"] = curves;
  return out;
}

inline Json decomposition(const BlowupModel& model, const ZariskiDecomposition& dec) {
  Json out;
  out["positive"] = numerical_class(model, dec.positive);
  Json neg = Json::object();
  for (const auto& [c, v] : dec.negative) neg[model.component_name(c)] = rational(v);
  out["negative"] = neg;
  out["negSet"] = component_list(model, dec.neg_set());
  out["positiveSquare"] = rational(model.lattice().square(dec.positive));
  out["conditional"] = dec.conditional;
  return out;
}

inline Json walk(const BlowupModel& model, const ChamberWalk& w) {
  Json out;
  Json bps = Json::array();
  for (const auto& b : w.breakpoints) bps.push_back(rational(b));
  out["breakpoints"] = bps;
  Json ivs = Json::array();
  for (const auto& iv : w.intervals) {
    Json j;
    j["start"] = rational(iv.start);
    j["end"] = surd(iv.end);
    j["negSet"] = component_list(model, iv.neg_set);
    Json coeffs = Json::object();
    for (const auto& [c, a] : iv.coefficients) coeffs[model.component_name(c)] = affine(a);
    j["coefficients"] = coeffs;
    j["pDotLast"] = affine(iv.p_dot_last);
    j["pSquare"] = Json{{"c0", rational(iv.p_square.c0)}, {"c1", rational(iv.p_square.c1)}, {"c2", rational(iv.p_square.c2)}};
    ivs.push_back(j);
  }
  out["intervals"] = ivs;
  out["chamberCount"] = w.chamber_count();
  out["tEnd"] = surd(w.t_end);
  out["endReason"] = to_string(w.reason);
  out["diagnostics"] = strings(w.diagnostics);
  out["conditional"] = w.conditional;
  return out;
}

inline Json interval(const BoundInterval& b) {
  Json out;
  out["lo"] = surd(b.lo);
  out["hi"] = b.hi ? surd(*b.hi) : Json("inf");
  out["loWitness"] = Json{{"kind", to_string(b.lo_witness.kind)}, {"detail", b.lo_witness.detail}};
  out["hiWitness"] = Json{{"kind", to_string(b.hi_witness.kind)}, {"detail", b.hi_witness.detail}};
  return out;
}

inline Json verdict(const Verdict& v) {
  Json out;
  out["status"] = to_string(v.status);
  out["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  out["eps"] = optional_surd(v.eps_exact);
  out["muHat"] = optional_surd(v.mu_exact);
  out["conditional"] = v.conditional;
  out["conjectureApplicable"] = v.conjecture_applicable;
  out["epsInterval"] = interval(v.eps);
  out["muHatInterval"] = interval(v.mu);
  out["warnings"] = strings(v.warnings);
  return out;
}

inline Json polygon(const NokPolygon& p, const ExceptionalValuationData& data) {
  Json out;
  out["flag"] = flag(p.flag);
  out["vertices"] = points(p.vertices);
  out["boundary"] = points(p.boundary);
  out["area"] = surd(p.area);
  out["complete"] = p.complete;
  out["conditional"] = p.conditional;
  out["tEnd"] = surd(p.t_end);
  Json pieces = Json::array();
  for (const auto& piece : p.pieces)
    pieces.push_back(Json{{"start", rational(piece.start)}, {"end", surd(piece.end)}, {"alpha", affine(piece.alpha)},
                          {"beta", affine(piece.beta)}});
  out["pieces"] = pieces;
  out["slopes"] = Json::array({rational(data.slope_low), rational(data.slope_high)});
  if (data.flag.is_satellite()) {
    out["phiEta"] = integer(data.phi_eta);
    out["gStar"] = data.gstar;
    out["etaPrecedesR"] = data.eta_precedes_r;
    out["identityHolds"] = data.identity_holds;
  }
  out["diagnostics"] = strings(data.diagnostics);
  return out;
}

inline Json suite(const TheoremSuite& s) {
  Json out;
  out["a"] = s.a_mu_squared;
  out["b"] = s.b_polygon_is_T;
  out["c"] = s.c_p_mu_nef_null;
  out["d"] = s.d_mu_eps_beta;
  out["e"] = s.e_one_chamber;
  out["f"] = s.f_eps_maximal;
  out["cConditional"] = s.c_conditional;
  out["consistent"] = s.consistent;
  out["epsBetaLeMu"] = s.eps_beta_le_mu;
  out["epsBetaLtMu"] = s.eps_beta_lt_mu;
  out["epsMuLeD2"] = s.eps_mu_le_d2;
  return out;
}

inline Json diagnostics(const std::vector<Diagnostic>& ds) {
  Json out = Json::array();
  for (const auto& d : ds)
    out.push_back(Json{{"severity", d.is_error() ? "error" : "warning"},
                       {"message", d.message},
                       {"line", d.location.line},
                       {"col", d.location.col}});
  return out;
}

}  // namespace valnag::report
