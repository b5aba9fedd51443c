#pragma once

#include "valnag/valnag.hpp"

#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace valnag;

inline ProximityStructure v2_structure() {
  std::vector<PointDecl> d{PointDecl::free(), PointDecl::free(), PointDecl::satellite(1)};
  return ProximityStructure::validate(d);
}

inline CurveRecord line(const std::string& name, GermMultVector germ) {
  return CurveRecord::p2_curve(name, 1, std::move(germ));
}

/// V1: one free point.
inline BlowupModel v1() { return BlowupModel(ProximityStructure::all_free(1), SurfaceModel::p2(), {}); }

/// V2 with the line H through p1, p2.
inline BlowupModel v2_with_h() { return BlowupModel(v2_structure(), SurfaceModel::p2(), {line("H", {1, 1, 0})}); }

inline BlowupModel v2_bare() { return BlowupModel(v2_structure(), SurfaceModel::p2(), {}); }

/// V3(r): r free points on the line H; `meet` marks H through the flag point.
inline BlowupModel v3(int r, bool meet = false) {
  auto h = line("H", GermMultVector(static_cast<std::size_t>(r), Integer(1)));
  if (meet) h.flag_meet = 1;
  return BlowupModel(ProximityStructure::all_free(r), SurfaceModel::p2(), {h});
}

inline Rational q(long long n, long long d = 1) { return Rational(n, d); }

/// A valid random structure: each satellite target is either i-2 or the
/// target of p_{i-1}, which keeps every proximate block consecutive.
inline ProximityStructure random_structure(std::mt19937& rng, int max_r) {
  std::uniform_int_distribution<int> size(1, max_r);
  std::uniform_int_distribution<int> coin(0, 2);
  const int r = size(rng);
  std::vector<PointDecl> decls;
  for (int i = 1; i <= r; ++i) {
    if (i <= 2 || coin(rng) != 0) {
      decls.push_back(PointDecl::free());
      continue;
    }
    std::vector<int> options{i - 2};
    if (const auto& prev = decls[static_cast<std::size_t>(i - 2)].satellite_of; prev) options.push_back(*prev);
    decls.push_back(PointDecl::satellite(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]));
  }
  return ProximityStructure::validate(decls);
}

inline GermMultVector random_germ(std::mt19937& rng, int r, int max_mult = 3) {
  std::uniform_int_distribution<int> m(0, max_mult);
  GermMultVector g;
  for (int i = 0; i < r; ++i) g.emplace_back(m(rng));
  return g;
}

// Lines realizable in the plane: a smooth line follows free points only, and two
// distinct lines share at most one point.
inline std::vector<CurveRecord> random_lines(std::mt19937& rng, const ProximityStructure& ps) {
  int free_run = 1;
  while (free_run < ps.size() && !ps.is_satellite(free_run + 1)) ++free_run;
  std::vector<CurveRecord> out;
  int lines = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int l = 0; l < lines; ++l) {
    GermMultVector g(static_cast<std::size_t>(ps.size()), Integer(0));
    int len = l == 0 ? std::uniform_int_distribution<int>(1, free_run)(rng) : 1;
    for (int i = 0; i < len; ++i) g[i] = 1;
    out.push_back(line("L" + std::to_string(l), g));
  }
  return out;
}

// Necessary conditions for a catalog of distinct irreducible curves: proximity
// inequalities on each germ and non-negative meets with other components.
inline bool plausible_catalog(const BlowupModel& m) {
  const auto& ps = m.structure();
  for (const auto& c : m.curves())
    for (int i = 1; i <= ps.size(); ++i) {
      Integer tail = 0;
      for (int j : ps.proximate_points(i)) tail += c.germ[j - 1];
      if (c.germ[i - 1] < tail) return false;
    }
  const auto comps = m.components();
  for (std::size_t a = 0; a < comps.size(); ++a)
    for (std::size_t b = a + 1; b < comps.size(); ++b)
      if (m.lattice().intersect(m.component_class(comps[a]), m.component_class(comps[b])) < 0) return false;
  return true;
}

inline Rational random_rational(std::mt19937& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
  return Rational(num(rng), den(rng));
}

/// A random scene that parses back: valid structure, consistent catalog.
inline Scene random_scene(std::mt19937& rng) {
  Scene s;
  std::uniform_int_distribution<int> coin(0, 1), small(0, 3), count(0, 3);
  s.valuation = random_structure(rng, 7);
  const int r = s.valuation.size();
  const bool custom = coin(rng) == 1;
  if (custom) s.surface = SurfaceModel::custom(1 + small(rng), Rational(1 + small(rng), 1 + small(rng)));
  const int n = count(rng);
  for (int k = 0; k < n; ++k) {
    CurveRecord c;
    c.name = "C" + std::to_string(k);
    c.germ = random_germ(rng, r, 2);
    if (custom) {
      c.dC = Rational(1 + small(rng), 1 + small(rng));
      c.selfint = random_rational(rng, 4, 3);
      if (coin(rng)) c.system_m = 1 + small(rng);
    } else {
      c.degree = 1 + small(rng);
    }
    if (coin(rng)) c.flag_meet = small(rng);
    bool smooth = true, through_sat = false;
    for (int i = 0; i < r; ++i) {
      if (c.germ[i] > 1) smooth = false;
      if (c.germ[i] > 0 && s.valuation.is_satellite(i + 1)) through_sat = true;
    }
    if (smooth && through_sat) c.satellite_ok = true;
    else if (coin(rng)) c.satellite_ok = true;
    bool proximity_ok = true;
    for (int i = 1; i <= r; ++i) {
      Integer tail = 0;
      for (int j : s.valuation.proximate_points(i)) tail += c.germ[j - 1];
      if (c.germ[i - 1] < tail) proximity_ok = false;
    }
    c.irreducible = proximity_ok && coin(rng);
    s.curves.push_back(c);
  }
  if (custom) {
    for (auto& c : s.curves)
      for (auto& o : s.curves)
        if (c.name < o.name) {
          Rational v = Rational(small(rng));
          c.pairwise[o.name] = v;
          o.pairwise[c.name] = v;
        }
  } else {
    fill_p2_curve_data(s.curves);
  }
  // flag: free or a neighbour of r
  std::vector<int> etas;
  for (int eta = 1; eta < r; ++eta)
    if (s.valuation.last_proximate(eta) == r) etas.push_back(eta);
  if (!etas.empty() && coin(rng)) s.flag = Flag::satellite(etas[std::uniform_int_distribution<std::size_t>(0, etas.size() - 1)(rng)]);
  if (r >= 2 && coin(rng)) {
    std::vector<int> inc;
    int k = std::uniform_int_distribution<int>(2, r)(rng);
    for (int i = 1; i <= k; ++i) inc.push_back(i);
    s.tangent.incidence = inc;
    s.tangent.satellite_ok = coin(rng) == 1;
  }
  if (coin(rng)) s.t_max = Rational(1 + small(rng), 1 + small(rng));
  if (coin(rng)) s.assertions.status = static_cast<Status>(small(rng) % 3);
  if (coin(rng)) s.assertions.eps = Rational(1, 1 + small(rng));
  if (coin(rng)) s.assertions.mu = Rational(1 + small(rng));
  return s;
}

}  // namespace fixtures
