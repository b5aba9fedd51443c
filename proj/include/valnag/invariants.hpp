#pragma once

#include "valnag/proximity.hpp"
#include "valnag/rational.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace valnag {

/// Multiplicities of a germ and its strict transforms at p_1..p_r.
using GermMultVector = std::vector<Integer>;

/// Values nu(m_i) of the maximal ideals, normalized so nu(m_r) = 1, obtained
/// by running the proximity equalities backwards from the last center.
inline std::vector<Integer> multiplicity_sequence(const ProximityStructure& ps) {
  const int r = ps.size();
  std::vector<Integer> mults(static_cast<std::size_t>(r), Integer(0));
  mults[r - 1] = 1;
  for (int i = r - 1; i >= 1; --i) {
    Integer sum = 0;
    for (int j : ps.proximate_points(i)) sum += mults[j - 1];
    mults[i - 1] = sum;
  }
  return mults;
}

/// Noether formula: nu(f) = sum_i nu(m_i) * mult_{p_i}(f).
inline Integer noether_value(std::span<const Integer> mults, std::span<const Integer> germ) {
  if (mults.size() != germ.size())
    throw InvalidInput("germ has " + std::to_string(germ.size()) + " multiplicities, expected " +
                       std::to_string(mults.size()));
  Integer v = 0;
  for (std::size_t i = 0; i < mults.size(); ++i) v += mults[i] * germ[i];
  return v;
}

struct DualGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // (j, last(j)), j ascending

  std::vector<int> degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(vertices) + 1, 0);
    for (auto [a, b] : edges) {
      ++deg[a];
      ++deg[b];
    }
    return deg;
  }

  bool adjacent(int a, int b) const {
    return std::any_of(edges.begin(), edges.end(), [&](auto e) {
      return (e.first == a && e.second == b) || (e.first == b && e.second == a);
    });
  }

  /// Vertices on the path from 1 to v, in order.
  std::vector<int> path_from_root(int v) const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertices) + 1);
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<int> parent(static_cast<std::size_t>(vertices) + 1, -1);
    std::vector<int> stack{1};
    parent[1] = 0;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (parent[w] < 0) {
          parent[w] = u;
          stack.push_back(w);
        }
    }
    std::vector<int> path;
    for (int u = v; u > 0; u = parent[u]) path.push_back(u);
    std::reverse(path.begin(), path.end());
    return path;
  }
};

/// E_j meets E_{last(j)} where last(j) is the last center proximate to p_j.
inline DualGraph dual_graph(const ProximityStructure& ps) {
  DualGraph g;
  g.vertices = ps.size();
  for (int j = 1; j <= ps.size(); ++j)
    if (int last = ps.last_proximate(j); last != 0) g.edges.emplace_back(j, last);
  return g;
}

/// Star indices l_0 < ... < l_g: degree-one vertices other than r. For r = 1
/// the convention is (1).
inline std::vector<int> star_indices(const ProximityStructure& ps) {
  if (ps.size() == 1) return {1};
  auto deg = dual_graph(ps).degrees();
  std::vector<int> stars;
  for (int v = 1; v < ps.size(); ++v)
    if (deg[v] == 1) stars.push_back(v);
  return stars;
}

/// Multiplicities of a curvette phi_i (transversal to E_i at a general point):
/// the multiplicity sequence of nu_i, padded with zeros to length r.
inline GermMultVector curvette_multiplicities(const ProximityStructure& ps, int i) {
  if (i < 1 || i > ps.size())
    throw InvalidInput("curvette index " + std::to_string(i) + " out of range 1.." +
                       std::to_string(ps.size()));
  GermMultVector germ = multiplicity_sequence(ps.truncated(i));
  germ.resize(static_cast<std::size_t>(ps.size()), Integer(0));
  return germ;
}

/// nu_r(phi_i) for the curvette of E_i.
inline Integer curvette_value(const ProximityStructure& ps, int i) {
  return noether_value(multiplicity_sequence(ps), curvette_multiplicities(ps, i));
}

/// beta_0..beta_{g+1}: curvette values at the star vertices, then sum nu(m_i)^2.
inline std::vector<Integer> maximal_contact_values(const ProximityStructure& ps) {
  auto mults = multiplicity_sequence(ps);
  std::vector<Integer> betas;
  for (int l : star_indices(ps)) betas.push_back(noether_value(mults, curvette_multiplicities(ps, l)));
  Integer last = 0;
  for (const auto& m : mults) last += m * m;
  betas.push_back(last);
  return betas;
}

struct ValuationInvariants {
  std::vector<Integer> mults;
  DualGraph graph;
  std::vector<int> stars;
  std::vector<Integer> betas;  // beta_0..beta_{g+1}
  Rational vol;
  Rational volN;
  Rational volN_inv;

  int r() const { return static_cast<int>(mults.size()); }
  int g() const { return static_cast<int>(betas.size()) - 2; }
  const Integer& beta0() const { return betas.front(); }
  /// beta_{g+1} = sum nu(m_i)^2 = 1/vol.
  const Integer& beta_last() const { return betas.back(); }

  /// nu^N(m_i) = nu(m_i)/beta_0.
  std::vector<Rational> normalized_mults() const {
    std::vector<Rational> out;
    for (const auto& m : mults) out.emplace_back(m, beta0());
    return out;
  }
  std::vector<Rational> normalized_betas() const {
    std::vector<Rational> out;
    for (const auto& b : betas) out.emplace_back(b, beta0());
    return out;
  }
};

inline ValuationInvariants compute_invariants(const ProximityStructure& ps) {
  ValuationInvariants inv;
  inv.mults = multiplicity_sequence(ps);
  inv.graph = dual_graph(ps);
  inv.stars = star_indices(ps);
  inv.betas = maximal_contact_values(ps);
  inv.vol = Rational(Integer(1), inv.beta_last());
  inv.volN = Rational(inv.beta0() * inv.beta0(), inv.beta_last());
  inv.volN_inv = Rational(inv.beta_last(), inv.beta0() * inv.beta0());
  return inv;
}

/// Membership of v in the semigroup generated by `generators` (all positive).
inline bool semigroup_contains(std::span<const Integer> generators, const Integer& v) {
  if (v < 0) return false;
  if (v == 0) return true;
  if (generators.empty()) return false;
  Integer d = 0;
  for (const auto& x : generators) {
    if (x <= 0) throw InvalidInput("semigroup generators must be positive");
    d = gcd(d, x);
  }
  if (v % d != 0) return false;
  std::vector<Integer> gens;
  for (const auto& x : generators) gens.push_back(x / d);
  Integer target = v / d;
  auto [lo, hi] = std::minmax_element(gens.begin(), gens.end());
  // Schur: every integer above (a_min - 1)(a_max - 1) - 1 is representable
  if (target > (*lo - 1) * (*hi - 1)) return true;
  if (target > 100'000'000) throw InvalidInput("semigroup membership search too large");
  const auto n = target.convert_to<std::size_t>();
  std::vector<std::size_t> small;
  for (const auto& gen : gens)
    if (gen <= target) small.push_back(gen.convert_to<std::size_t>());
  std::vector<char> reachable(n + 1, 0);
  reachable[0] = 1;
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t gen : small) {
      if (gen <= k && reachable[k - gen]) {
        reachable[k] = 1;
        break;
      }
    }
  return reachable[n] != 0;
}

struct TangentLineValue {
  Integer t;
  std::vector<int> incidence;
  std::vector<std::string> warnings;
};

/// t(nu_r) from the centers a line through p_1 passes through. Defaults to
/// {1, 2} (very general position); r = 1 gives t = 1.
inline TangentLineValue tangent_line_value(const ProximityStructure& ps,
                                           const std::optional<std::vector<int>>& incidence = {},
                                           bool allow_satellite = false) {
  TangentLineValue out;
  if (ps.size() == 1) {
    out.t = 1;
    out.incidence = {1};
    return out;
  }
  out.incidence = incidence.value_or(std::vector<int>{1, 2});
  std::sort(out.incidence.begin(), out.incidence.end());
  for (std::size_t k = 0; k < out.incidence.size(); ++k) {
    if (out.incidence[k] != static_cast<int>(k) + 1)
      throw InvalidInput("tangent-line incidence must be p1..pk: a smooth germ through p" +
                         std::to_string(out.incidence[k]) + " passes through every earlier center");
  }
  if (out.incidence.size() < 2 || static_cast<int>(out.incidence.size()) > ps.size())
    throw InvalidInput("tangent-line incidence must contain p1, p2 and stay within the r centers");
  auto mults = multiplicity_sequence(ps);
  out.t = 0;
  for (int i : out.incidence) {
    out.t += mults[i - 1];
    if (ps.is_satellite(i) && !allow_satellite)
      out.warnings.push_back("tangent line passes through satellite center p" + std::to_string(i) +
                             " without confirmation");
  }
  return out;
}

}  // namespace valnag
