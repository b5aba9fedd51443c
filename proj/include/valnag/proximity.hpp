#pragma once

#include "valnag/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace valnag {

/// Raw declaration of one center: free, or satellite with an extra proximity
/// target (1-based index of an earlier center).
struct PointDecl {
  std::optional<int> satellite_of;

  static PointDecl free() { return {}; }
  static PointDecl satellite(int target) { return {target}; }
  friend bool operator==(const PointDecl&, const PointDecl&) = default;
};

/// A declaration rejected by ProximityStructure::validate. `point` is the
/// 1-based index of the offending center.
class StructureError : public InvalidInput {
 public:
  StructureError(int point, const std::string& what) : InvalidInput(what), point_(point) {}
  int point() const { return point_; }

 private:
  int point_;
};

/// Configuration of infinitely near centers p_1..p_r of a divisorial valuation.
///
/// Center i >= 2 is proximate to i-1 and, when satellite, to one further
/// center j < i-1. Indices are 1-based throughout the public interface.
class ProximityStructure {
 public:
  /// Checks the declarations and builds the structure, throwing StructureError
  /// on the first violation:
  ///  - the satellite target of p_i must lie in [1, i-2] (so p_1, p_2 are free);
  ///  - for every j, the centers proximate to p_j form a block j+1, j+2, ...
  static ProximityStructure validate(std::span<const PointDecl> decls) {
    if (decls.empty()) throw StructureError(0, "valuation needs at least one center");
    const int r = static_cast<int>(decls.size());
    for (int i = 1; i <= r; ++i) {
      const auto& target = decls[i - 1].satellite_of;
      if (!target) continue;
      if (i == 1) throw StructureError(i, "the first center must be free");
      if (*target < 1 || *target >= i - 1)
        throw StructureError(i, "satellite target out of range: p" + std::to_string(i) +
                                    " cannot be proximate to p" + std::to_string(*target) +
                                    (i == 2 ? " (p2 is always free)" : ""));
    }
    ProximityStructure ps;
    ps.satellite_.reserve(r);
    for (const auto& d : decls) ps.satellite_.push_back(d.satellite_of);
    for (int j = 1; j <= r; ++j) {
      auto block = ps.proximate_points(j);
      for (std::size_t k = 0; k < block.size(); ++k) {
        if (block[k] != j + 1 + static_cast<int>(k))
          throw StructureError(block[k], "points proximate to p" + std::to_string(j) +
                                             " are not consecutive: p" + std::to_string(block[k]) +
                                             " does not lie on E" + std::to_string(j));
      }
    }
    return ps;
  }

  /// r free centers.
  static ProximityStructure all_free(int r) {
    std::vector<PointDecl> decls(static_cast<std::size_t>(r));
    return validate(decls);
  }

  int size() const { return static_cast<int>(satellite_.size()); }

  std::optional<int> satellite_target(int i) const { return satellite_.at(i - 1); }
  bool is_satellite(int i) const { return satellite_target(i).has_value(); }

  /// prox(i): indices j < i with p_i -> p_j, ascending.
  std::vector<int> proximate_to(int i) const {
    std::vector<int> out;
    if (i < 2) return out;
    if (auto t = satellite_target(i)) out.push_back(*t);
    out.push_back(i - 1);
    return out;
  }

  bool is_proximate(int i, int j) const {
    if (i < 2 || j >= i) return false;
    return j == i - 1 || satellite_target(i) == j;
  }

  /// {i : p_i -> p_j}, ascending.
  std::vector<int> proximate_points(int j) const {
    std::vector<int> out;
    for (int i = j + 1; i <= size(); ++i)
      if (is_proximate(i, j)) out.push_back(i);
    return out;
  }

  /// max{k : p_k -> p_j}, or 0 when no center is proximate to p_j (only j = r).
  int last_proximate(int j) const {
    auto pts = proximate_points(j);
    return pts.empty() ? 0 : pts.back();
  }

  /// Structure of the truncated valuation nu_i on p_1..p_i.
  ProximityStructure truncated(int i) const {
    if (i < 1 || i > size()) throw InvalidInput("truncation index out of range");
    ProximityStructure out;
    out.satellite_.assign(satellite_.begin(), satellite_.begin() + i);
    return out;
  }

  std::vector<PointDecl> declarations() const {
    std::vector<PointDecl> out;
    for (const auto& s : satellite_) out.push_back({s});
    return out;
  }

  friend bool operator==(const ProximityStructure&, const ProximityStructure&) = default;

 private:
  std::vector<std::optional<int>> satellite_;
};

}  // namespace valnag
