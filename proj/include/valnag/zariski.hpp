#pragma once

#include "valnag/linalg.hpp"
#include "valnag/model.hpp"
#include "valnag/surd.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace valnag {

/// The class is not pseudoeffective over the catalog, or the catalog is
/// inconsistent (indefinite negative support).
class NotPseudoeffective : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// x = P + N with P nef over the catalog, N >= 0 supported on a negative
/// definite set orthogonal to P. Always conditional on catalog completeness.
struct ZariskiDecomposition {
  NumericalClass positive;
  std::map<Component, Rational> negative;  // strictly positive coefficients
  bool conditional = true;

  std::vector<Component> neg_set() const {
    std::vector<Component> out;
    for (const auto& [c, _] : negative) out.push_back(c);
    return out;
  }
  Rational coefficient(const Component& c) const {
    auto it = negative.find(c);
    return it == negative.end() ? Rational(0) : it->second;
  }
  friend bool operator==(const ZariskiDecomposition& a, const ZariskiDecomposition& b) {
    return a.positive == b.positive && a.negative == b.negative;
  }
};

namespace detail {

inline RationalMatrix support_gram(const BlowupModel& model, const std::vector<Component>& support) {
  std::vector<NumericalClass> classes;
  for (const auto& c : support) classes.push_back(model.component_class(c));
  return gram_matrix(model.lattice(), classes);
}

/// Coefficients c with (x - sum c_k C_k).C_l = 0 for every C_l in `support`.
inline std::vector<Rational> orthogonal_coefficients(const BlowupModel& model, const NumericalClass& x,
                                                     const std::vector<Component>& support,
                                                     const RationalMatrix& gram) {
  std::vector<Rational> rhs;
  for (const auto& c : support) rhs.push_back(model.lattice().intersect(x, model.component_class(c)));
  auto sol = solve(gram, rhs);
  if (!sol) throw NotPseudoeffective("singular intersection matrix on the negative support");
  return *sol;
}

inline NumericalClass combine(const BlowupModel& model, const std::vector<Component>& support,
                              const std::vector<Rational>& coeffs) {
  NumericalClass n;
  n.e.assign(static_cast<std::size_t>(model.r()), Rational(0));
  for (std::size_t k = 0; k < support.size(); ++k) n += coeffs[k] * model.component_class(support[k]);
  return n;
}

}  // namespace detail

/// Zariski decomposition over the catalog (exceptional stricts are always
/// included). Grows the negative support: solve for orthogonality on the
/// current support, then add every component the remainder meets negatively.
inline ZariskiDecomposition zariski_decompose(const BlowupModel& model, const NumericalClass& x) {
  const auto& lattice = model.lattice();
  std::vector<Component> support;
  std::vector<Rational> coeffs;
  NumericalClass positive = x;
  for (std::size_t round = 0; round <= model.components().size(); ++round) {
    std::vector<Component> added;
    for (const auto& c : model.components()) {
      if (std::binary_search(support.begin(), support.end(), c)) continue;
      if (lattice.intersect(positive, model.component_class(c)) < 0) added.push_back(c);
    }
    if (added.empty()) break;
    support.insert(support.end(), added.begin(), added.end());
    std::sort(support.begin(), support.end());
    auto gram = detail::support_gram(model, support);
    if (!negative_definite(gram))
      throw NotPseudoeffective("catalog inconsistent or class not pseudoeffective over catalog: "
                               "negative support is not negative definite");
    coeffs = detail::orthogonal_coefficients(model, x, support, gram);
    for (const auto& c : coeffs)
      if (c < 0)
        throw NotPseudoeffective("catalog inconsistent or class not pseudoeffective over catalog: "
                                 "negative coefficient in the negative part");
    positive = x - detail::combine(model, support, coeffs);
  }
  if (lattice.square(positive) < 0 || lattice.intersect(positive, lattice.pullback_D()) < 0)
    throw NotPseudoeffective("class not pseudoeffective over catalog: positive part has negative square");
  ZariskiDecomposition out;
  out.positive = positive;
  for (std::size_t k = 0; k < support.size(); ++k)
    if (coeffs[k] != 0) out.negative[support[k]] = coeffs[k];
  return out;
}

struct ClosedFormDecomposition {
  ZariskiDecomposition decomposition;
  bool valid = true;  // P_t . C~ >= 0 for every catalog curve
};

/// P_t = D* - (t/beta_{g+1}) sum nu(m_i) E_i*,
/// N_t = (t/beta_{g+1}) sum_{i<r} nu_r(phi_i) E~_i.
/// Valid exactly while t <= eps * beta_{g+1}; `valid` reports this against the catalog.
inline ClosedFormDecomposition segment_closed_form(const BlowupModel& model, const Rational& t) {
  if (t < 0) throw InvalidInput("segment parameter t must be non-negative");
  const auto& inv = model.invariants();
  Rational scale = t / Rational(inv.beta_last());
  ClosedFormDecomposition out;
  out.decomposition.positive = model.lattice().pullback_D() - scale * model.valuation_class();
  if (t != 0)
    for (int i = 1; i < model.r(); ++i)
      out.decomposition.negative[Component::exceptional(i)] =
          scale * Rational(curvette_value(model.structure(), i));
  for (std::size_t k = 0; k < model.curves().size(); ++k)
    if (model.lattice().intersect(out.decomposition.positive,
                                  model.component_class(Component::curve(static_cast<int>(k)))) < 0)
      out.valid = false;
  return out;
}

/// c0 + c1 t.
struct Affine {
  Rational c0, c1;
  Rational at(const Rational& t) const { return c0 + c1 * t; }
  Surd at(const Surd& t) const { return Surd(c0) + Surd(c1) * t; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

/// c0 + c1 t + c2 t^2.
struct Quadratic {
  Rational c0, c1, c2;
  Rational at(const Rational& t) const { return c0 + c1 * t + c2 * t * t; }
  Surd at(const Surd& t) const { return Surd(c0) + Surd(c1) * t + Surd(c2) * t * t; }
  friend bool operator==(const Quadratic&, const Quadratic&) = default;
};

/// One Zariski chamber crossed by D_t: on [start, end] the negative support is
/// fixed and every coefficient is affine in t.
struct WalkInterval {
  Rational start;
  Surd end;
  std::vector<Component> neg_set;
  std::map<Component, Affine> coefficients;
  NumericalClass p_const;  // P_t = p_const + t * p_slope
  NumericalClass p_slope;
  Affine p_dot_last;  // P_t . E~_r
  Quadratic p_square;
};

enum class WalkEnd {
  SelfIntersectionZero,  // P_t^2 = 0: t_end is mu-hat over the catalog
  UserBound,
  IncompleteCatalog,  // safety cap reached without P_t^2 vanishing
};

inline const char* to_string(WalkEnd e) {
  switch (e) {
    case WalkEnd::SelfIntersectionZero: return "P_t^2=0";
    case WalkEnd::UserBound: return "user bound";
    case WalkEnd::IncompleteCatalog: return "incomplete catalog beyond t";
  }
  return "";
}

struct ChamberWalk {
  std::vector<Rational> breakpoints;  // interval starts, beginning with 0
  std::vector<WalkInterval> intervals;
  Surd t_end;
  WalkEnd reason = WalkEnd::SelfIntersectionZero;
  std::vector<std::string> diagnostics;
  bool conditional = true;

  std::size_t chamber_count() const { return intervals.size(); }
  bool reached_zero_square() const { return reason == WalkEnd::SelfIntersectionZero; }
};

struct WalkOptions {
  std::optional<Rational> t_max;  // nullopt = auto
};

namespace detail {

struct AffineSolution {
  std::vector<Component> support;
  std::vector<Affine> coeffs;
  NumericalClass p_const, p_slope;
};

inline AffineSolution affine_solution(const BlowupModel& model, const std::vector<Component>& support) {
  AffineSolution sol;
  sol.support = support;
  const auto& lattice = model.lattice();
  NumericalClass d = lattice.pullback_D();
  NumericalClass minus_er = Rational(-1) * lattice.exceptional_pullback(model.r());
  std::vector<Rational> c0, c1;
  if (!support.empty()) {
    auto gram = support_gram(model, support);
    c0 = orthogonal_coefficients(model, d, support, gram);
    c1 = orthogonal_coefficients(model, minus_er, support, gram);
  }
  for (std::size_t k = 0; k < support.size(); ++k) sol.coeffs.push_back({c0[k], c1[k]});
  sol.p_const = d - combine(model, support, c0);
  sol.p_slope = minus_er - combine(model, support, c1);
  return sol;
}

/// Whether the affine decomposition on `sol.support` is a valid Zariski
/// decomposition at t (coefficients >= 0, P_t nef over the catalog).
inline bool affine_valid_at(const BlowupModel& model, const AffineSolution& sol, const Rational& t) {
  for (const auto& a : sol.coeffs)
    if (a.at(t) < 0) return false;
  NumericalClass p = sol.p_const + t * sol.p_slope;
  for (const auto& c : model.components()) {
    if (std::binary_search(sol.support.begin(), sol.support.end(), c)) continue;
    if (model.lattice().intersect(p, model.component_class(c)) < 0) return false;
  }
  return true;
}

/// Smallest root of q in (lo, hi], if any.
inline std::optional<Surd> first_root(const Quadratic& q, const Rational& lo, const Surd& hi) {
  std::vector<Surd> roots;
  if (q.c2 == 0) {
    if (q.c1 == 0) return std::nullopt;
    roots.emplace_back(-q.c0 / q.c1);
  } else {
    Rational disc = q.c1 * q.c1 - 4 * q.c2 * q.c0;
    if (disc < 0) return std::nullopt;
    Surd root = Surd::sqrt_of(disc);
    Surd two_a(2 * q.c2);
    roots.push_back((Surd(-q.c1) - root) / two_a);
    roots.push_back((Surd(-q.c1) + root) / two_a);
    std::sort(roots.begin(), roots.end());
  }
  for (const auto& x : roots)
    if (x > Surd(lo) && x <= hi) return x;
  return std::nullopt;
}

}  // namespace detail

/// Walks D_t = D* - t E_r* from t = 0, one Zariski chamber at a time.
///
/// At each start point the negative support just to the right is found by
/// decomposing at a probe point and shrinking the probe until the affine
/// solution on that support is valid back to the start. The interval ends at
/// the first component whose intersection with P_t would turn negative (all
/// ties join together) or where P_t^2 reaches zero.
inline ChamberWalk chamber_walk(const BlowupModel& model, const WalkOptions& options = {}) {
  const auto& lattice = model.lattice();
  const auto& inv = model.invariants();
  ChamberWalk walk;
  Surd cap = Rational(10) * Surd::sqrt_of(lattice.surface().d2 * Rational(inv.beta_last()));
  Surd limit = cap;
  bool user_limited = false;
  if (options.t_max) {
    if (*options.t_max <= 0) throw InvalidInput("t_max must be positive");
    if (Surd(*options.t_max) <= cap) {
      limit = *options.t_max;
      user_limited = true;
    }
  }

  Rational t0 = 0;
  std::vector<Component> previous;
  for (std::size_t step = 0;; ++step) {
    if (step > 4 * model.components().size() + 8)
      throw InternalInconsistency("chamber walk did not terminate");

    // probe for the support just right of t0
    Rational probe = limit > Surd(t0 + 1) ? t0 + 1 : limit.rational_below(t0);
    detail::AffineSolution sol;
    bool decomposed = false;
    for (int attempt = 0;; ++attempt) {
      if (attempt > (decomposed ? 512 : 64)) {
        // a consistent catalog keeps D_t pseudoeffective until P_t^2 = 0
        if (!decomposed)
          throw NotPseudoeffective("catalog inconsistent: D_t is not pseudoeffective over the catalog just after t=" +
                                   to_string(t0));
        throw InternalInconsistency("could not resolve the chamber after t=" + to_string(t0));
      }
      try {
        auto dec = zariski_decompose(model, model.segment_class(probe));
        decomposed = true;
        sol = detail::affine_solution(model, dec.neg_set());
        if (detail::affine_valid_at(model, sol, t0)) break;
      } catch (const NotPseudoeffective&) {
      }
      probe = (t0 + probe) / 2;
    }

    for (const auto& c : previous)
      if (!std::binary_search(sol.support.begin(), sol.support.end(), c))
        walk.diagnostics.push_back("anomaly: " + model.component_name(c) +
                                   " leaves the negative part at t=" + to_string(t0));

    WalkInterval iv;
    iv.start = t0;
    iv.neg_set = sol.support;
    for (std::size_t k = 0; k < sol.support.size(); ++k) iv.coefficients[sol.support[k]] = sol.coeffs[k];
    iv.p_const = sol.p_const;
    iv.p_slope = sol.p_slope;
    const auto& er = model.component_class(Component::exceptional(model.r()));
    iv.p_dot_last = {lattice.intersect(sol.p_const, er), lattice.intersect(sol.p_slope, er)};
    iv.p_square = {lattice.square(sol.p_const), 2 * lattice.intersect(sol.p_const, sol.p_slope),
                   lattice.square(sol.p_slope)};

    // next event: an outside component turning negative, or a coefficient reaching zero
    std::optional<Rational> next;
    auto consider = [&](const Rational& root) {
      if (root > t0 && (!next || root < *next)) next = root;
    };
    for (const auto& c : model.components()) {
      if (std::binary_search(sol.support.begin(), sol.support.end(), c)) continue;
      Rational f0 = lattice.intersect(sol.p_const, model.component_class(c));
      Rational f1 = lattice.intersect(sol.p_slope, model.component_class(c));
      if (f1 < 0) consider(-f0 / f1);
    }
    for (const auto& a : sol.coeffs)
      if (a.c1 < 0) consider(-a.c0 / a.c1);

    Surd horizon = next ? min(Surd(*next), limit) : limit;
    walk.breakpoints.push_back(t0);
    if (auto root = detail::first_root(iv.p_square, t0, horizon)) {
      iv.end = *root;
      walk.intervals.push_back(std::move(iv));
      walk.t_end = *root;
      walk.reason = WalkEnd::SelfIntersectionZero;
      break;
    }
    if (!next || limit <= Surd(*next)) {
      iv.end = limit;
      walk.intervals.push_back(std::move(iv));
      walk.t_end = limit;
      walk.reason = user_limited ? WalkEnd::UserBound : WalkEnd::IncompleteCatalog;
      if (!user_limited)
        walk.diagnostics.push_back("incomplete catalog beyond t=" + limit.str() +
                                   ": P_t^2 stays positive up to the safety cap");
      break;
    }
    iv.end = *next;
    previous = iv.neg_set;
    walk.intervals.push_back(std::move(iv));
    t0 = *next;
  }
  return walk;
}

/// A rational point strictly inside an interval.
inline Rational interval_midpoint(const WalkInterval& iv) {
  if (iv.end.is_rational()) return (iv.start + iv.end.rational()) / 2;
  return (iv.start + iv.end.rational_below(iv.start)) / 2;
}

/// Re-derives each interval's decomposition at its midpoint with the general
/// algorithm and checks the walk's invariants; throws InternalInconsistency.
inline void verify_walk(const BlowupModel& model, const ChamberWalk& walk) {
  const auto& lattice = model.lattice();
  Surd last_square = Surd(lattice.surface().d2);
  for (std::size_t k = 0; k < walk.intervals.size(); ++k) {
    const auto& iv = walk.intervals[k];
    Rational mid = interval_midpoint(iv);
    auto dec = zariski_decompose(model, model.segment_class(mid));
    if (dec.neg_set() != iv.neg_set)
      throw InternalInconsistency("walk support disagrees with the decomposition at t=" + to_string(mid));
    for (const auto& [c, a] : iv.coefficients)
      if (dec.coefficient(c) != a.at(mid))
        throw InternalInconsistency("walk coefficient disagrees at t=" + to_string(mid));
    NumericalClass p = iv.p_const + mid * iv.p_slope;
    if (!(p == dec.positive)) throw InternalInconsistency("walk positive part disagrees at t=" + to_string(mid));
    for (int i = 1; i < model.r(); ++i)
      if (lattice.intersect(p, model.component_class(Component::exceptional(i))) != 0)
        throw InternalInconsistency("P_t is not orthogonal to E" + std::to_string(i));
    if (iv.p_dot_last.at(mid) <= 0) throw InternalInconsistency("P_t . E_r must be positive before t_end");
    // P_t^2 is continuous and non-increasing
    Surd at_start = iv.p_square.at(Surd(iv.start));
    if (at_start != last_square) throw InternalInconsistency("P_t^2 is discontinuous at a breakpoint");
    if (iv.p_square.at(mid) > at_start) throw InternalInconsistency("P_t^2 increases along the walk");
    last_square = iv.p_square.at(iv.end);
    if (last_square < Surd(0)) throw InternalInconsistency("P_t^2 negative at an interval end");
  }
}

struct ChamberCountReport {
  std::size_t chambers = 0;
  long bound = 0;  // 2 + rho - n
  bool within_bound = false;
  bool at_least_two = false;
  bool ok = false;
};

/// Non-minimal valuations: the segment crosses at most 2 + rho - n chambers
/// (n = number of computing curves) and at least two.
inline ChamberCountReport chamber_count_check(const ChamberWalk& walk, long n_computing_curves, int rho) {
  ChamberCountReport rep;
  rep.chambers = walk.chamber_count();
  rep.bound = 2 + rho - n_computing_curves;
  rep.within_bound = static_cast<long>(rep.chambers) <= rep.bound;
  rep.at_least_two = rep.chambers >= 2;
  rep.ok = rep.within_bound && rep.at_least_two;
  return rep;
}

}  // namespace valnag
