#pragma once

#include "valnag/nok.hpp"

#include <optional>
#include <string>
#include <vector>

namespace valnag {

/// Where a bound comes from.
struct Provenance {
  enum class Kind { None, Formula, Curve, Assertion };
  Kind kind = Kind::None;
  std::string detail;

  static Provenance formula(std::string what) { return {Kind::Formula, std::move(what)}; }
  static Provenance curve(std::string name) { return {Kind::Curve, std::move(name)}; }
  static Provenance assertion() { return {Kind::Assertion, "assert"}; }
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

inline const char* to_string(Provenance::Kind k) {
  switch (k) {
    case Provenance::Kind::None: return "none";
    case Provenance::Kind::Formula: return "formula";
    case Provenance::Kind::Curve: return "curve";
    case Provenance::Kind::Assertion: return "assertion";
  }
  return "";
}

/// [lo, hi]; hi = nullopt stands for +infinity.
struct BoundInterval {
  Surd lo;
  std::optional<Surd> hi;
  Provenance lo_witness, hi_witness;

  bool pinned() const { return hi && *hi == lo; }
  bool contains(const Surd& x) const { return lo <= x && (!hi || x <= *hi); }
};

/// The line of P^2 whose value enters the lower bound for epsilon.
struct TangentSpec {
  std::optional<std::vector<int>> incidence;
  bool satellite_ok = false;
};

/// t(nu_r): explicit incidence if given; otherwise a catalog line of P^2 with
/// nu_r(phi_H) > beta_0; otherwise the very general default {1, 2}.
inline TangentLineValue derive_tangent_line(const BlowupModel& model, const TangentSpec& tangent = {}) {
  const auto& ps = model.structure();
  if (tangent.incidence || ps.size() == 1 || !model.surface().is_p2())
    return tangent_line_value(ps, tangent.incidence, tangent.satellite_ok);
  std::optional<TangentLineValue> found;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < model.curves().size(); ++k) {
    const auto& c = model.curves()[k];
    if (!c.degree || *c.degree != 1) continue;
    Integer value = model.curve_value(k);
    if (value <= model.invariants().beta0()) continue;
    names.push_back(c.name);
    if (found) continue;
    TangentLineValue t;
    t.t = value;
    for (int i = 0; i < ps.size(); ++i)
      if (c.germ[i] > 0) t.incidence.push_back(i + 1);
    found = t;
  }
  if (!found) return tangent_line_value(ps, std::nullopt, tangent.satellite_ok);
  if (names.size() > 1)
    found->warnings.push_back("several catalog lines have value above beta_0; using " + names.front());
  return *found;
}

/// ceil(x) for x >= 0, 0 otherwise.
inline Integer ceil_plus(const Rational& x) { return x >= 0 ? ceil(x) : Integer(0); }

struct P2LowerBound {
  Integer t;
  Integer delta0;
  Rational value;  // 1 / (beta_0 + t (1 + delta_0))
  std::vector<std::string> warnings;
};

inline P2LowerBound p2_epsilon_lower_bound(const BlowupModel& model, const TangentSpec& tangent = {}) {
  const auto& inv = model.invariants();
  P2LowerBound out;
  auto line = derive_tangent_line(model, tangent);
  out.warnings = line.warnings;
  if (model.r() == 1) {
    out.t = 1;
    out.delta0 = -1;
  } else {
    out.t = line.t;
    out.delta0 = ceil_plus(Rational(inv.beta_last() - 2 * inv.beta0() * out.t, out.t * out.t));
  }
  out.value = Rational(Integer(1), inv.beta0() + out.t * (1 + out.delta0));
  return out;
}

/// sqrt(D^2 / beta_{g+1}).
inline Surd epsilon_cap(const BlowupModel& model) {
  return Surd::sqrt_of(model.surface().d2 / Rational(model.invariants().beta_last()));
}

/// sqrt(D^2 beta_{g+1}).
inline Surd mu_hat_floor(const BlowupModel& model) {
  return Surd::sqrt_of(model.surface().d2 * Rational(model.invariants().beta_last()));
}

inline BoundInterval epsilon_bounds(const BlowupModel& model, const TangentSpec& tangent = {}) {
  BoundInterval b;
  b.hi = epsilon_cap(model);
  b.hi_witness = Provenance::formula("sqrt(D^2/beta)");
  for (std::size_t k = 0; k < model.curves().size(); ++k) {
    Integer v = model.curve_value(k);
    if (v <= 0) continue;
    Surd ratio(model.curves()[k].dC / Rational(v));
    if (ratio < *b.hi) {
      b.hi = ratio;
      b.hi_witness = Provenance::curve(model.curves()[k].name);
    }
  }
  if (model.surface().is_p2()) {
    b.lo = p2_epsilon_lower_bound(model, tangent).value;
    b.lo_witness = Provenance::formula("1/(beta0+t(1+delta0))");
  } else {
    b.lo = 0;
    b.lo_witness = Provenance::formula("0");
  }
  if (*b.hi < b.lo)
    throw InvalidInput("catalog inconsistent: curve " + b.hi_witness.detail +
                       " gives an epsilon below the proven lower bound");
  return b;
}

inline BoundInterval mu_hat_bounds(const BlowupModel& model, const Surd& eps_lo) {
  BoundInterval b;
  b.lo = mu_hat_floor(model);
  b.lo_witness = Provenance::formula("sqrt(D^2*beta)");
  for (std::size_t k = 0; k < model.curves().size(); ++k) {
    const auto& c = model.curves()[k];
    if (!c.system_m || *c.system_m <= 0) continue;
    Surd ratio(Rational(model.curve_value(k), *c.system_m));
    if (ratio > b.lo) {
      b.lo = ratio;
      b.lo_witness = Provenance::curve(c.name);
    }
  }
  if (eps_lo > Surd(0)) {
    b.hi = Surd(model.surface().d2) / eps_lo;
    b.hi_witness = Provenance::formula("D^2/eps_lo");
    if (*b.hi < b.lo)
      throw InvalidInput("catalog inconsistent: curve " + b.lo_witness.detail +
                         " gives a mu-hat above the upper bound");
  }
  return b;
}

/// (D.C)^2 beta_{g+1} < D^2 nu_r(phi_C)^2.
inline bool submaximal_test(const BlowupModel& model, std::size_t k) {
  Integer v = model.curve_value(k);
  if (v <= 0)
    throw InvalidInput("curve " + model.curves().at(k).name + " does not pass through p1 (value 0)");
  const Rational& dc = model.curves()[k].dC;
  return dc * dc * Rational(model.invariants().beta_last()) < model.surface().d2 * Rational(v * v);
}

struct PinnedPair {
  Rational eps, mu;
};

/// On P^2 a submaximal curve is the unique one and computes epsilon; mu * eps = 1.
inline PinnedPair p2_pin(const BlowupModel& model, std::size_t k) {
  if (!model.surface().is_p2()) throw InvalidInput("p2_pin requires surface p2");
  if (!submaximal_test(model, k)) throw InvalidInput("curve " + model.curves()[k].name + " is not submaximal");
  Rational deg(*model.curves()[k].degree);
  Rational v(model.curve_value(k));
  return {deg / v, v / deg};
}

enum class Status { Minimal, NonMinimal, Undetermined };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Minimal: return "Minimal";
    case Status::NonMinimal: return "NonMinimal";
    case Status::Undetermined: return "Undetermined";
  }
  return "";
}

inline std::optional<Status> parse_status(std::string_view s) {
  if (s == "Minimal") return Status::Minimal;
  if (s == "NonMinimal") return Status::NonMinimal;
  if (s == "Undetermined") return Status::Undetermined;
  return std::nullopt;
}

/// User claims from the scene; checked against the computed bounds.
struct Assertions {
  std::optional<Status> status;
  std::optional<Rational> eps;
  std::optional<Rational> mu;
  friend bool operator==(const Assertions&, const Assertions&) = default;
  bool empty() const { return !status && !eps && !mu; }
};

struct Verdict {
  Status status = Status::Undetermined;
  std::optional<std::string> witness;
  std::optional<std::size_t> witness_index;
  bool conditional = true;
  bool conjecture_applicable = false;
  std::optional<Surd> eps_exact, mu_exact;
  BoundInterval eps, mu;
  std::vector<std::string> errors;    // failed assertions
  std::vector<std::string> warnings;
};

/// beta_{g+1} >= 9 beta_0^2, i.e. inverse normalized volume at least 9.
inline bool conjecture_applicable(const ValuationInvariants& inv) {
  return inv.beta_last() >= 9 * inv.beta0() * inv.beta0();
}

inline Verdict minimality_verdict(const BlowupModel& model, const TangentSpec& tangent = {},
                                  const Assertions& asserted = {}) {
  Verdict v;
  v.conjecture_applicable = conjecture_applicable(model.invariants());
  if (model.surface().is_p2()) v.warnings = p2_epsilon_lower_bound(model, tangent).warnings;
  v.eps = epsilon_bounds(model, tangent);
  v.mu = mu_hat_bounds(model, v.eps.lo);

  std::optional<Rational> best;
  for (std::size_t k = 0; k < model.curves().size(); ++k) {
    if (model.curve_value(k) <= 0 || !submaximal_test(model, k)) continue;
    Rational ratio = model.curves()[k].dC / Rational(model.curve_value(k));
    if (!best || ratio < *best) {
      best = ratio;
      v.witness_index = k;
    }
  }
  if (v.witness_index) {
    std::size_t k = *v.witness_index;
    v.status = Status::NonMinimal;
    v.witness = model.curves()[k].name;
    if (model.surface().is_p2()) {
      auto pin = p2_pin(model, k);
      v.eps_exact = pin.eps;
      v.mu_exact = pin.mu;
      v.conditional = false;
    } else {
      // the witness is unconditional; its being the minimum rests on the catalog
      v.eps_exact = *best;
      v.conditional = true;
    }
  } else if (v.eps.lo == epsilon_cap(model) || (v.mu.hi && *v.mu.hi == mu_hat_floor(model))) {
    v.status = Status::Minimal;
    v.eps_exact = epsilon_cap(model);
    v.mu_exact = mu_hat_floor(model);
    v.conditional = v.eps.lo_witness.kind != Provenance::Kind::Formula;
  }

  if (v.eps_exact && !v.eps.contains(*v.eps_exact))
    throw InternalInconsistency("pinned epsilon lies outside its interval");
  if (v.mu_exact && !v.mu.contains(*v.mu_exact))
    throw InternalInconsistency("pinned mu-hat lies outside its interval");

  if (asserted.eps) {
    Surd q(*asserted.eps);
    if (v.eps_exact ? *v.eps_exact != q : !v.eps.contains(q)) {
      v.errors.push_back("assertion eps " + to_string(*asserted.eps) + " contradicts the computed bounds");
    } else if (!v.eps_exact) {
      v.eps_exact = q;
      v.eps.lo = q;
      v.eps.hi = q;
      v.eps.lo_witness = v.eps.hi_witness = Provenance::assertion();
    }
  }
  if (asserted.mu) {
    Surd q(*asserted.mu);
    if (v.mu_exact ? *v.mu_exact != q : !v.mu.contains(q)) {
      v.errors.push_back("assertion mu " + to_string(*asserted.mu) + " contradicts the computed bounds");
    } else if (!v.mu_exact) {
      v.mu_exact = q;
      v.mu.lo = q;
      v.mu.hi = q;
      v.mu.lo_witness = v.mu.hi_witness = Provenance::assertion();
    }
  }
  if (asserted.status && *asserted.status != v.status)
    v.errors.push_back(std::string("assertion status ") + to_string(*asserted.status) + " but computed " +
                       to_string(v.status));
  return v;
}

/// Least positive m with (m D* - sum nu(m_i) E_i*) . C >= 0 for every catalog
/// component; nullopt when no m works (a curve with D.C <= 0 and positive value).
inline std::optional<Integer> nef_threshold(const BlowupModel& model) {
  const auto& lattice = model.lattice();
  NumericalClass val = model.valuation_class();
  NumericalClass d = lattice.pullback_D();
  Integer m = 1;
  for (const auto& c : model.components()) {
    const auto& cls = model.component_class(c);
    Rational a = lattice.intersect(d, cls);
    Rational b = lattice.intersect(val, cls);  // need m a >= b
    if (a > 0) {
      Integer need = ceil(b / a);
      if (need > m) m = need;
    } else if (a < 0 || b > 0) {
      return std::nullopt;
    }
  }
  NumericalClass f = Rational(m) * d - val;
  for (const auto& c : model.components())
    if (lattice.intersect(f, model.component_class(c)) < 0) throw InternalInconsistency("nef threshold check failed");
  return m;
}

struct ComputingCurveReport {
  long count = 0;
  int rho = 1;
  bool exceeds_rho = false;  // catalog inconsistency
  std::vector<std::string> names;
};

inline ComputingCurveReport computing_curve_count(const BlowupModel& model, const Surd& eps) {
  ComputingCurveReport rep;
  rep.rho = model.surface().rho;
  for (std::size_t k = 0; k < model.curves().size(); ++k) {
    Integer v = model.curve_value(k);
    if (v <= 0) continue;
    if (Surd(model.curves()[k].dC / Rational(v)) == eps) {
      ++rep.count;
      rep.names.push_back(model.curves()[k].name);
    }
  }
  rep.exceeds_rho = rep.count > rep.rho;
  return rep;
}

/// The six equivalent conditions for minimality, evaluated on pinned values.
struct TheoremSuite {
  bool a_mu_squared = false;      // mu^2 = D^2 beta
  bool b_polygon_is_T = false;    // polygon == outer triangle
  bool c_p_mu_nef_null = false;   // P_mu nef over catalog and P_mu^2 = 0 (conditional)
  bool d_mu_eps_beta = false;     // mu = eps beta
  bool e_one_chamber = false;     // walk crosses one chamber
  bool f_eps_maximal = false;     // eps^2 beta = D^2
  bool c_conditional = true;
  bool consistent = false;
  // neighbouring inequalities on pinned values
  bool eps_beta_le_mu = false;
  bool eps_beta_lt_mu = false;
  bool eps_mu_le_d2 = false;

  std::vector<bool> items() const {
    return {a_mu_squared, b_polygon_is_T, c_p_mu_nef_null, d_mu_eps_beta, e_one_chamber, f_eps_maximal};
  }
};

inline TheoremSuite theorem_suite(const BlowupModel& model, const Surd& eps, const Surd& mu, const ChamberWalk& walk,
                                  const NokPolygon& polygon, const std::vector<ExactPoint>& triangle) {
  const auto& lattice = model.lattice();
  Surd beta(Rational(model.invariants().beta_last()));
  Surd d2(lattice.surface().d2);
  TheoremSuite s;
  s.a_mu_squared = mu * mu == d2 * beta;
  s.b_polygon_is_T = geom::same_polygon(polygon.vertices, triangle);
  SurdClass p = to_surd(lattice.pullback_D()) - (mu / beta) * to_surd(model.valuation_class());
  bool nef = true;
  for (const auto& c : model.components())
    if (lattice.intersect(p, to_surd(model.component_class(c))) < Surd(0)) nef = false;
  s.c_p_mu_nef_null = nef && lattice.square(p) == Surd(0);
  s.d_mu_eps_beta = mu == eps * beta;
  s.e_one_chamber = walk.chamber_count() == 1;
  s.f_eps_maximal = eps * eps * beta == d2;
  auto items = s.items();
  s.consistent = std::all_of(items.begin(), items.end(), [&](bool b) { return b == items.front(); });
  s.eps_beta_le_mu = eps * beta <= mu;
  s.eps_beta_lt_mu = eps * beta < mu;
  s.eps_mu_le_d2 = eps * mu <= d2;
  return s;
}

}  // namespace valnag
