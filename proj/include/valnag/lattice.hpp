#pragma once

#include "valnag/invariants.hpp"
#include "valnag/linalg.hpp"
#include "valnag/proximity.hpp"
#include "valnag/surd.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace valnag {

enum class SurfaceKind { P2, Custom };

/// The minimal Gram data of the base surface S: D^2 and the Picard number.
struct SurfaceModel {
  SurfaceKind kind = SurfaceKind::P2;
  Rational d2 = 1;
  int rho = 1;

  static SurfaceModel p2() { return {}; }
  static SurfaceModel custom(int rho, Rational d2) {
    if (d2 <= 0) throw InvalidInput("D^2 must be positive for an ample D");
    if (rho < 1) throw InvalidInput("Picard number must be at least 1");
    return {SurfaceKind::Custom, std::move(d2), rho};
  }
  bool is_p2() const { return kind == SurfaceKind::P2; }
  friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;
};

/// A curve C on S from the user catalog.
struct CurveRecord {
  std::string name;
  std::optional<Integer> degree;  // P^2 only
  Rational dC;                    // D.C
  Rational selfint;               // C^2
  std::optional<Integer> system_m;  // C in |mD|
  GermMultVector germ;
  std::map<std::string, Rational> pairwise;  // C.C' for the other catalog curves
  std::optional<Integer> flag_meet;
  bool irreducible = false;
  bool satellite_ok = false;

  /// A curve of degree `deg` on P^2; dC, selfint and system follow from it.
  static CurveRecord p2_curve(std::string name, Integer deg, GermMultVector germ) {
    CurveRecord c;
    c.name = std::move(name);
    c.degree = deg;
    c.dC = Rational(deg);
    c.selfint = Rational(deg * deg);
    c.system_m = deg;
    c.germ = std::move(germ);
    return c;
  }

  friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
};

/// On P^2, fills D.C, C^2, system and the pairwise products from the degrees.
inline void fill_p2_curve_data(std::vector<CurveRecord>& curves) {
  for (auto& c : curves) {
    if (!c.degree) throw InvalidInput("curve " + c.name + " on p2 needs a degree");
    c.dC = Rational(*c.degree);
    c.selfint = Rational(*c.degree * *c.degree);
    c.system_m = *c.degree;
  }
  for (auto& c : curves) {
    c.pairwise.clear();
    for (const auto& o : curves)
      if (o.name != c.name) c.pairwise[o.name] = Rational(*c.degree * *o.degree);
  }
}

/// Class on the blown-up surface in the basis {D*, C_1*, .., C_m*, E_1*, .., E_r*}.
///
/// On P^2 every pullback C* equals deg(C) D*, so `curves` stays empty. On a
/// custom surface the catalog curves are kept as separate generators, paired
/// through the declared Gram data. A short or empty `curves` vector means the
/// missing coefficients are zero.
template <class Scalar>
struct BasicClass {
  Scalar d{};
  std::vector<Scalar> curves;
  std::vector<Scalar> e;

  /// Coefficient-wise equality; missing trailing coefficients count as zero.
  friend bool operator==(const BasicClass& x, const BasicClass& y) {
    return x.d == y.d && padded_equal(x.curves, y.curves) && padded_equal(x.e, y.e);
  }

  BasicClass& operator+=(const BasicClass& o) {
    d += o.d;
    add_into(curves, o.curves, 1);
    add_into(e, o.e, 1);
    return *this;
  }
  BasicClass& operator-=(const BasicClass& o) {
    d -= o.d;
    add_into(curves, o.curves, -1);
    add_into(e, o.e, -1);
    return *this;
  }
  friend BasicClass operator+(BasicClass a, const BasicClass& b) { return a += b; }
  friend BasicClass operator-(BasicClass a, const BasicClass& b) { return a -= b; }
  friend BasicClass operator*(const Scalar& s, BasicClass a) {
    a.d *= s;
    for (auto& x : a.curves) x *= s;
    for (auto& x : a.e) x *= s;
    return a;
  }

  bool is_zero() const {
    auto zero = [](const Scalar& x) { return x == Scalar(0); };
    return d == Scalar(0) && std::all_of(curves.begin(), curves.end(), zero) &&
           std::all_of(e.begin(), e.end(), zero);
  }

 private:
  static bool padded_equal(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar& x = i < a.size() ? a[i] : zero_;
      const Scalar& y = i < b.size() ? b[i] : zero_;
      if (!(x == y)) return false;
    }
    return true;
  }
  static inline const Scalar zero_{};

  static void add_into(std::vector<Scalar>& dst, const std::vector<Scalar>& src, int s) {
    if (dst.size() < src.size()) dst.resize(src.size(), Scalar(0));
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] += (s > 0 ? src[i] : Scalar(0) - src[i]);
  }
};

using NumericalClass = BasicClass<Rational>;
using SurdClass = BasicClass<Surd>;

inline SurdClass to_surd(const NumericalClass& x) {
  SurdClass out;
  out.d = x.d;
  for (const auto& c : x.curves) out.curves.emplace_back(c);
  for (const auto& c : x.e) out.e.emplace_back(c);
  return out;
}

/// sum_i coeffs_i E_i* (no D* part).
inline NumericalClass exceptional_combination(std::span<const Rational> coeffs) {
  NumericalClass x;
  x.e.assign(coeffs.begin(), coeffs.end());
  return x;
}

/// Strict transforms E~_i = E_i* - sum_{p_j -> p_i} E_j*; the coefficient
/// matrix is the (unit lower-triangular) proximity matrix.
inline std::vector<NumericalClass> exceptional_strict_transforms(const ProximityStructure& ps) {
  const int r = ps.size();
  std::vector<NumericalClass> out;
  for (int i = 1; i <= r; ++i) {
    NumericalClass x;
    x.e.assign(static_cast<std::size_t>(r), Rational(0));
    x.e[i - 1] = 1;
    for (int j : ps.proximate_points(i)) x.e[j - 1] = -1;
    out.push_back(std::move(x));
  }
  return out;
}

/// Intersection form on the blown-up surface over a fixed catalog.
class IntersectionLattice {
 public:
  IntersectionLattice(SurfaceModel surface, int r, std::vector<CurveRecord> curves)
      : surface_(std::move(surface)), r_(r), curves_(std::move(curves)) {
    if (surface_.d2 <= 0) throw InvalidInput("D^2 must be positive");
    for (const auto& c : curves_)
      if (static_cast<int>(c.germ.size()) != r_)
        throw InvalidInput("curve " + c.name + " has " + std::to_string(c.germ.size()) +
                           " multiplicities, expected " + std::to_string(r_));
    if (!surface_.is_p2()) {
      const std::size_t m = curves_.size();
      gram_.assign(m + 1, std::vector<Rational>(m + 1));
      gram_[0][0] = surface_.d2;
      for (std::size_t k = 0; k < m; ++k) {
        gram_[0][k + 1] = gram_[k + 1][0] = curves_[k].dC;
        gram_[k + 1][k + 1] = curves_[k].selfint;
        for (std::size_t l = 0; l < m; ++l) {
          if (l == k) continue;
          auto it = curves_[k].pairwise.find(curves_[l].name);
          if (it == curves_[k].pairwise.end())
            throw InvalidInput("missing intersection number " + curves_[k].name + "." + curves_[l].name);
          gram_[k + 1][l + 1] = it->second;
        }
      }
      if (!is_symmetric(gram_)) throw InvalidInput("catalog intersection numbers are not symmetric");
    }
  }

  const SurfaceModel& surface() const { return surface_; }
  int r() const { return r_; }
  const std::vector<CurveRecord>& curves() const { return curves_; }

  template <class Scalar>
  Scalar intersect(const BasicClass<Scalar>& x, const BasicClass<Scalar>& y) const {
    auto fits = [&](const BasicClass<Scalar>& z) { return z.e.empty() || static_cast<int>(z.e.size()) == r_; };
    if (!fits(x) || !fits(y)) throw InvalidInput("intersect: dimension mismatch");
    Scalar out = Scalar(surface_.d2) * x.d * y.d;
    if (!x.curves.empty() || !y.curves.empty()) {
      if (surface_.is_p2()) throw InvalidInput("intersect: curve generators are folded into D* on p2");
      const std::size_t m = curves_.size();
      if (x.curves.size() > m || y.curves.size() > m) throw InvalidInput("intersect: dimension mismatch");
      auto base = [&](const BasicClass<Scalar>& z, std::size_t k) {
        if (k == 0) return z.d;
        return k - 1 < z.curves.size() ? z.curves[k - 1] : Scalar(0);
      };
      for (std::size_t k = 0; k <= m; ++k)
        for (std::size_t l = 0; l <= m; ++l) {
          if (k == 0 && l == 0) continue;
          Scalar bk = base(x, k), bl = base(y, l);
          if (bk == Scalar(0) || bl == Scalar(0)) continue;
          out += Scalar(gram_[k][l]) * bk * bl;
        }
    }
    const std::size_t n = std::min(x.e.size(), y.e.size());
    for (std::size_t i = 0; i < n; ++i) out -= x.e[i] * y.e[i];
    return out;
  }

  template <class Scalar>
  Scalar square(const BasicClass<Scalar>& x) const {
    return intersect(x, x);
  }

  NumericalClass pullback_D() const {
    NumericalClass x;
    x.d = 1;
    x.e.assign(static_cast<std::size_t>(r_), Rational(0));
    return x;
  }

  NumericalClass exceptional_pullback(int i) const {
    NumericalClass x;
    x.e.assign(static_cast<std::size_t>(r_), Rational(0));
    x.e.at(i - 1) = 1;
    return x;
  }

  /// C* on the blown-up surface: deg(C) D* on P^2, the generator C_k* otherwise.
  NumericalClass curve_pullback(std::size_t k) const {
    NumericalClass x;
    x.e.assign(static_cast<std::size_t>(r_), Rational(0));
    if (surface_.is_p2()) {
      x.d = Rational(*curves_.at(k).degree);
    } else {
      x.curves.assign(curves_.size(), Rational(0));
      x.curves.at(k) = 1;
    }
    return x;
  }

  /// C~ = C* - sum_i mult_{p_i}(C) E_i*.
  NumericalClass curve_strict_transform(std::size_t k) const {
    NumericalClass x = curve_pullback(k);
    const auto& germ = curves_.at(k).germ;
    for (int i = 0; i < r_; ++i) x.e[i] = -Rational(germ[i]);
    return x;
  }

 private:
  SurfaceModel surface_;
  int r_;
  std::vector<CurveRecord> curves_;
  RationalMatrix gram_;  // {D, C_1..C_m} on custom surfaces
};

/// x^2 > 0 and x.D* > 0. With D ample this is equivalent to x being strictly
/// positive on Q(S~) \ {0}; for x = d D* - sum e_i E_i* it reduces to
/// d > 0 and d^2 D^2 > sum e_i^2.
template <class Scalar>
bool q_cone_positive(const IntersectionLattice& lattice, const BasicClass<Scalar>& x) {
  BasicClass<Scalar> d;
  d.d = Scalar(1);
  return lattice.square(x) > Scalar(0) && lattice.intersect(x, d) > Scalar(0);
}

/// Gram matrix of a family of classes.
inline RationalMatrix gram_matrix(const IntersectionLattice& lattice,
                                  std::span<const NumericalClass> classes) {
  RationalMatrix g(classes.size(), std::vector<Rational>(classes.size()));
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) g[i][j] = g[j][i] = lattice.intersect(classes[i], classes[j]);
  return g;
}

}  // namespace valnag
