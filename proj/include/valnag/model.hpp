#pragma once

#include "valnag/invariants.hpp"
#include "valnag/lattice.hpp"

#include <compare>
#include <string>
#include <vector>

namespace valnag {

/// A possible component of a negative part: an exceptional strict transform
/// E~_i (index 1..r) or the strict transform of catalog curve `index` (0-based).
struct Component {
  enum class Kind { Exceptional, Curve };
  Kind kind = Kind::Exceptional;
  int index = 0;

  static Component exceptional(int i) { return {Kind::Exceptional, i}; }
  static Component curve(int k) { return {Kind::Curve, k}; }
  bool is_exceptional() const { return kind == Kind::Exceptional; }

  friend auto operator<=>(const Component&, const Component&) = default;
};

/// Everything fixed by a scene: the valuation, the surface and the catalog,
/// plus the derived invariants and lattice. Immutable after construction.
class BlowupModel {
 public:
  BlowupModel(ProximityStructure ps, SurfaceModel surface, std::vector<CurveRecord> curves)
      : ps_(std::move(ps)),
        inv_(compute_invariants(ps_)),
        lattice_(surface, ps_.size(), prepare(surface, std::move(curves))) {
    auto stricts = exceptional_strict_transforms(ps_);
    for (int i = 1; i <= ps_.size(); ++i) {
      components_.push_back(Component::exceptional(i));
      classes_.push_back(stricts[i - 1]);
    }
    for (std::size_t k = 0; k < lattice_.curves().size(); ++k) {
      components_.push_back(Component::curve(static_cast<int>(k)));
      classes_.push_back(lattice_.curve_strict_transform(k));
    }
  }

  const ProximityStructure& structure() const { return ps_; }
  const ValuationInvariants& invariants() const { return inv_; }
  const IntersectionLattice& lattice() const { return lattice_; }
  const SurfaceModel& surface() const { return lattice_.surface(); }
  const std::vector<CurveRecord>& curves() const { return lattice_.curves(); }
  int r() const { return ps_.size(); }

  /// Exceptional stricts first (E~_1..E~_r), then catalog curves in order.
  const std::vector<Component>& components() const { return components_; }

  const NumericalClass& component_class(const Component& c) const {
    return classes_.at(c.is_exceptional() ? c.index - 1 : r() + c.index);
  }

  std::string component_name(const Component& c) const {
    if (c.is_exceptional()) return "E" + std::to_string(c.index);
    return curves().at(c.index).name;
  }

  /// nu_r(phi_C) by the Noether formula.
  Integer curve_value(std::size_t k) const { return noether_value(inv_.mults, curves().at(k).germ); }

  /// sum_i nu(m_i) E_i*.
  NumericalClass valuation_class() const {
    std::vector<Rational> e;
    for (const auto& m : inv_.mults) e.emplace_back(m);
    return exceptional_combination(e);
  }

  /// D_t = D* - t E_r*.
  NumericalClass segment_class(const Rational& t) const {
    NumericalClass x = lattice_.pullback_D();
    x.e[r() - 1] = -t;
    return x;
  }

 private:
  static std::vector<CurveRecord> prepare(const SurfaceModel& s, std::vector<CurveRecord> curves) {
    if (s.is_p2()) fill_p2_curve_data(curves);
    return curves;
  }

  ProximityStructure ps_;
  ValuationInvariants inv_;
  IntersectionLattice lattice_;
  std::vector<Component> components_;
  std::vector<NumericalClass> classes_;
};

}  // namespace valnag
