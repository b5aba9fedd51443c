#pragma once

#include "valnag/zariski.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace valnag {

/// The point of E_r completing the flag: a general point, or E_eta ∩ E_r.
struct Flag {
  enum class Kind { Free, Satellite };
  Kind kind = Kind::Free;
  int eta = 0;

  static Flag free() { return {}; }
  static Flag satellite(int eta) { return {Kind::Satellite, eta}; }
  bool is_satellite() const { return kind == Kind::Satellite; }
  friend bool operator==(const Flag&, const Flag&) = default;
};

struct ExactPoint {
  Surd x, y;
  friend bool operator==(const ExactPoint&, const ExactPoint&) = default;
  friend std::strong_ordering operator<=>(const ExactPoint& p, const ExactPoint& q) {
    if (auto c = p.x <=> q.x; c != 0) return c;
    return p.y <=> q.y;
  }
};

/// Data of the rank-two valuation attached to the flag.
struct ExceptionalValuationData {
  Flag flag;
  Integer beta_last;     // beta_{g+1}(nu_r)
  Integer phi_eta = 0;   // nu_r(phi_eta), satellite flags only
  int gstar = 0;
  bool eta_precedes_r = false;
  Rational slope_low, slope_high;
  bool identity_holds = true;  // satellite identity cross-check
  std::vector<std::string> diagnostics;
};

/// Whether the satellite flag point E_eta ∩ E_r exists.
inline bool valid_satellite_flag(const BlowupModel& model, int eta) {
  const int r = model.r();
  if (eta < 1 || eta >= r) return false;
  if (model.structure().last_proximate(eta) != r) return false;
  const auto& e = model.component_class(Component::exceptional(eta));
  const auto& er = model.component_class(Component::exceptional(r));
  return model.lattice().intersect(e, er) == 1;
}

/// nu_eta(phi_l): the divisorial valuation of E_eta on a curvette of E_l.
inline Integer truncated_curvette_value(const ProximityStructure& ps, int eta, int l) {
  auto mults = multiplicity_sequence(ps.truncated(eta));
  auto germ = curvette_multiplicities(ps, l);
  germ.resize(static_cast<std::size_t>(eta));
  return noether_value(mults, germ);
}

inline ExceptionalValuationData build_flag_data(const BlowupModel& model, const Flag& flag) {
  const auto& ps = model.structure();
  const auto& inv = model.invariants();
  ExceptionalValuationData data;
  data.flag = flag;
  data.beta_last = inv.beta_last();
  Rational beta(inv.beta_last());
  if (!flag.is_satellite()) {
    data.gstar = inv.g() + 1;
    data.slope_low = 0;
    data.slope_high = 1 / beta;
    return data;
  }
  const int eta = flag.eta;
  const int r = model.r();
  if (!valid_satellite_flag(model, eta))
    throw InvalidInput("flag sat(" + std::to_string(eta) + "): E" + std::to_string(eta) +
                       " does not meet E" + std::to_string(r));

  // nu_r(phi_eta) directly from Noether on the curvette of E_eta
  data.phi_eta = curvette_value(ps, eta);
  data.slope_low = Rational(data.phi_eta) / beta;
  data.slope_high = Rational(data.phi_eta + 1) / beta;

  const int g = inv.g();
  data.gstar = ps.is_satellite(r) ? g : g + 1;
  auto path = inv.graph.path_from_root(r);
  data.eta_precedes_r = std::find(path.begin(), path.end(), eta) != path.end();

  // cross-check against the maximal contact values of nu_eta
  auto star = [&](int i) { return i <= g ? inv.stars[static_cast<std::size_t>(i)] : r; };
  Rational q0(truncated_curvette_value(ps, eta, star(0)), inv.beta0());
  Rational qg(truncated_curvette_value(ps, eta, star(data.gstar)),
              inv.betas[static_cast<std::size_t>(data.gstar)]);
  Rational diff = qg - q0;
  if (diff == 0 || 1 / (diff < 0 ? -diff : diff) != beta) {
    data.identity_holds = false;
    data.diagnostics.push_back("satellite identity fails for flag sat(" + std::to_string(eta) + ")");
  }
  const Rational& expect_g = data.eta_precedes_r ? data.slope_low : data.slope_high;
  const Rational& expect_0 = data.eta_precedes_r ? data.slope_high : data.slope_low;
  if (qg != expect_g || q0 != expect_0) {
    data.identity_holds = false;
    data.diagnostics.push_back("boundary slopes disagree with the maximal contact ratios for flag sat(" +
                               std::to_string(eta) + ")");
  }
  return data;
}

/// Outer triangle: (0,0), (mu, mu*slope_low), (mu, mu*slope_high).
inline std::vector<ExactPoint> triangle_T(const ExceptionalValuationData& data, const Surd& mu_hat) {
  if (mu_hat <= Surd(0)) throw InvalidInput("mu-hat must be positive");
  return {{0, 0}, {mu_hat, mu_hat * Surd(data.slope_low)}, {mu_hat, mu_hat * Surd(data.slope_high)}};
}

/// Inner triangle: (0,0) and eps * (beta, slope * beta) for both slopes.
inline std::vector<ExactPoint> inner_triangle(const ExceptionalValuationData& data, const Surd& eps) {
  if (eps <= Surd(0)) throw InvalidInput("epsilon must be positive");
  Rational beta(data.beta_last);
  Surd x = eps * Surd(beta);
  return {{0, 0}, {x, eps * Surd(data.slope_low * beta)}, {x, eps * Surd(data.slope_high * beta)}};
}

namespace geom {

inline Surd cross(const ExactPoint& o, const ExactPoint& a, const ExactPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Convex hull, counter-clockwise, without collinear points.
inline std::vector<ExactPoint> convex_hull(std::vector<ExactPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<ExactPoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= Surd(0)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= Surd(0)) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline Surd area(const std::vector<ExactPoint>& ccw) {
  Surd twice = 0;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const auto& p = ccw[i];
    const auto& q = ccw[(i + 1) % ccw.size()];
    twice += p.x * q.y - q.x * p.y;
  }
  return twice / Surd(2);
}

/// Point in a closed convex polygon given counter-clockwise.
inline bool contains(const std::vector<ExactPoint>& ccw, const ExactPoint& p) {
  if (ccw.size() < 3) return std::find(ccw.begin(), ccw.end(), p) != ccw.end();
  for (std::size_t i = 0; i < ccw.size(); ++i)
    if (cross(ccw[i], ccw[(i + 1) % ccw.size()], p) < Surd(0)) return false;
  return true;
}

/// Inner ⊆ outer for convex polygons.
inline bool contains(const std::vector<ExactPoint>& outer, const std::vector<ExactPoint>& inner) {
  return std::all_of(inner.begin(), inner.end(), [&](const ExactPoint& p) { return contains(outer, p); });
}

/// Same convex set.
inline bool same_polygon(const std::vector<ExactPoint>& a, const std::vector<ExactPoint>& b) {
  auto ha = convex_hull(a), hb = convex_hull(b);
  std::sort(ha.begin(), ha.end());
  std::sort(hb.begin(), hb.end());
  return ha == hb;
}

}  // namespace geom

struct NokPiece {
  Rational start;
  Surd end;
  Affine alpha, beta;
};

struct NokPolygon {
  Flag flag;
  std::vector<ExactPoint> boundary;  // counter-clockwise from the origin
  std::vector<ExactPoint> vertices;  // lexicographically sorted
  std::vector<NokPiece> pieces;
  Surd t_end;
  Surd area;
  bool complete = false;
  bool conditional = true;
};

/// Local meeting number of a negative component with E_r at the flag point.
inline Rational flag_meet(const BlowupModel& model, const Flag& flag, const Component& c) {
  if (c.is_exceptional()) return flag.is_satellite() && c.index == flag.eta ? 1 : 0;
  const auto& meet = model.curves().at(static_cast<std::size_t>(c.index)).flag_meet;
  return meet ? Rational(*meet) : Rational(0);
}

/// alpha(t) = sum of coefficient * meeting number over the negative part,
/// beta(t) = alpha(t) + P_t . E~_r, piece by piece along the walk.
inline NokPolygon nok_polygon(const BlowupModel& model, const ChamberWalk& walk, const Flag& flag) {
  if (flag.is_satellite() && !valid_satellite_flag(model, flag.eta))
    throw InvalidInput("flag sat(" + std::to_string(flag.eta) + ") is not a point of E" + std::to_string(model.r()));
  NokPolygon poly;
  poly.flag = flag;
  poly.t_end = walk.t_end;
  for (const auto& iv : walk.intervals) {
    NokPiece piece{iv.start, iv.end, {}, {}};
    for (const auto& [c, a] : iv.coefficients) {
      Rational m = flag_meet(model, flag, c);
      piece.alpha.c0 += m * a.c0;
      piece.alpha.c1 += m * a.c1;
    }
    piece.beta = {piece.alpha.c0 + iv.p_dot_last.c0, piece.alpha.c1 + iv.p_dot_last.c1};
    poly.pieces.push_back(piece);
  }
  std::vector<ExactPoint> lower, upper;
  for (const auto& piece : poly.pieces) {
    lower.push_back({piece.start, piece.alpha.at(piece.start)});
    upper.push_back({piece.start, piece.beta.at(piece.start)});
  }
  const auto& last = poly.pieces.back();
  lower.push_back({walk.t_end, last.alpha.at(walk.t_end)});
  upper.push_back({walk.t_end, last.beta.at(walk.t_end)});

  std::vector<ExactPoint> ring = lower;
  for (auto it = upper.rbegin(); it != upper.rend(); ++it) ring.push_back(*it);
  std::vector<ExactPoint> cleaned;
  for (const auto& p : ring)
    if (cleaned.empty() || !(cleaned.back() == p)) cleaned.push_back(p);
  while (cleaned.size() > 1 && cleaned.front() == cleaned.back()) cleaned.pop_back();
  bool changed = true;
  while (changed && cleaned.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < cleaned.size(); ++i) {
      const auto& prev = cleaned[(i + cleaned.size() - 1) % cleaned.size()];
      const auto& next = cleaned[(i + 1) % cleaned.size()];
      if (geom::cross(prev, cleaned[i], next) == Surd(0)) {
        cleaned.erase(cleaned.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  poly.boundary = cleaned;
  poly.vertices = cleaned;
  std::sort(poly.vertices.begin(), poly.vertices.end());
  poly.area = geom::area(poly.boundary);
  poly.complete = Surd(2) * poly.area == Surd(model.surface().d2);
  return poly;
}

/// Checks convexity and beta - alpha = P_t . E~_r >= 0 on every piece;
/// throws InternalInconsistency.
inline void verify_polygon(const BlowupModel& model, const ChamberWalk& walk, const NokPolygon& poly) {
  if (poly.boundary.size() >= 3 && !geom::same_polygon(poly.boundary, geom::convex_hull(poly.boundary)))
    throw InternalInconsistency("Newton-Okounkov polygon is not convex");
  if (geom::area(poly.boundary) < Surd(0)) throw InternalInconsistency("polygon boundary is not counter-clockwise");
  for (std::size_t k = 0; k < poly.pieces.size(); ++k) {
    const auto& piece = poly.pieces[k];
    Rational mid = interval_midpoint(walk.intervals[k]);
    Rational width = piece.beta.at(mid) - piece.alpha.at(mid);
    if (width != walk.intervals[k].p_dot_last.at(mid) || width < 0)
      throw InternalInconsistency("beta - alpha differs from P_t . E_r");
  }
  // d/dt P_t^2 = -2 P_t . E~_r, so a walk ending at P^2 = 0 encloses D^2 / 2
  if (walk.reached_zero_square() && Surd(2) * poly.area != Surd(model.surface().d2))
    throw InternalInconsistency("polygon area differs from D^2 / 2");
}

}  // namespace valnag
