#pragma once

// Exact polyhedra in dimension <= 4, stored by inequalities
// <u, normal> >= -offset with integer normals and rational offsets.
//
// Vertices are found by brute force over d-subsets of the inequalities, which
// is exact and cheap at the sizes used here (a handful of rays, d <= 4).

#include <cstdint>
#include <optional>
#include <vector>

#include "asymvol/scalar.hpp"

namespace asymvol {

inline constexpr int kMaxAmbientDimension = 4;
inline constexpr std::uint64_t kDefaultLatticeBudget = 1'000'000;

struct Inequality {
  IntVec normal;
  Rat offset;  // encodes <u, normal> >= -offset

  Rat slack(const RatVec& u) const;  // <u, normal> + offset
};

class LatticePolytope {
 public:
  /// Builds the region cut out by `inequalities` in R^dim and enumerates its
  /// vertices. Unbounded regions are allowed; operations that need a bounded
  /// polytope throw UnboundedPolytope.
  static LatticePolytope from_inequalities(int dim, std::vector<Inequality> inequalities);

  /// Trusted constructor used by hull computations that already know the
  /// vertex set.
  static LatticePolytope with_vertices(int dim, std::vector<Inequality> inequalities,
                                       std::vector<RatVec> vertices);

  static LatticePolytope empty_polytope(int dim);

  int ambient_dimension() const { return dim_; }
  const std::vector<Inequality>& inequalities() const { return inequalities_; }
  const std::vector<RatVec>& vertices() const { return vertices_; }
  /// Extreme rays of the recession cone (empty when bounded).
  const std::vector<RatVec>& recession_rays() const { return rays_; }

  bool is_empty() const { return empty_; }
  bool is_bounded() const { return rays_.empty() && !has_lineality_; }
  /// Affine dimension; -1 when empty. Only meaningful for pointed regions.
  int dimension() const { return affine_dim_; }
  bool is_full_dimensional() const { return !empty_ && affine_dim_ == dim_; }

  bool contains(const RatVec& u) const;
  /// Does this region contain `other` (vertices and recession directions)?
  bool contains(const LatticePolytope& other) const;

  LatticePolytope scaled(const Rat& factor) const;
  LatticePolytope translated(const RatVec& shift) const;

  void require_bounded(const char* operation) const;

 private:
  int dim_ = 0;
  std::vector<Inequality> inequalities_;
  std::vector<RatVec> vertices_;
  std::vector<RatVec> rays_;
  bool empty_ = true;
  bool has_lineality_ = false;
  int affine_dim_ = -1;

  void compute_recession();
  void finish_metadata();
};

LatticePolytope build_polytope(int dim, std::vector<Inequality> inequalities);

/// #(m P ∩ Z^d). Throws BudgetExceeded when the scanned bounding box holds
/// more than `budget` candidate points.
Int lattice_point_count(const LatticePolytope& p, long long m = 1,
                        std::uint64_t budget = kDefaultLatticeBudget);

/// The integer points of m P, in lexicographic order.
std::vector<IntVec> lattice_points(const LatticePolytope& p, long long m = 1,
                                   std::uint64_t budget = kDefaultLatticeBudget);

/// Exact Euclidean volume; 0 when P is empty or lower dimensional.
Rat euclidean_volume(const LatticePolytope& p);

/// d! * euclidean_volume.
Rat normalized_volume(const LatticePolytope& p);

/// P ∩ {<u, normal> = -offset}, expressed in lattice coordinates of that
/// hyperplane (a polytope of ambient dimension d - 1). Throws NotAFace when
/// the hyperplane meets the interior.
LatticePolytope face(const LatticePolytope& p, const IntVec& normal, const Rat& offset);

/// Convex hull of m P ∩ Z^d.
LatticePolytope hull_of_lattice_points(const LatticePolytope& p, long long m = 1,
                                       std::uint64_t budget = kDefaultLatticeBudget);

/// Exact convex hull of rational points.
LatticePolytope convex_hull(int dim, const std::vector<RatVec>& points);

/// conv(points) + R^d_{>=0}.
LatticePolytope newton_region(int dim, const std::vector<RatVec>& points);

/// Bounded + bounded, or Newton region + Newton region. Throws
/// InvalidOperands for anything else.
LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);

/// True when the region is upward closed (recession cone contains the
/// nonnegative orthant and all normals are nonnegative).
bool is_newton_region(const LatticePolytope& p);

}  // namespace asymvol
