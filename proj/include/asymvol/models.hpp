#pragma once

// The model zoo. Every model knows its Neron-Severi coordinates, its cones,
// and (through the volume engine) how to count sections at level m.
//
// Coordinate conventions:
//   ToricModel         coordinates w.r.t. the classes of `basis_divisors`.
//   BlowupPdModel      (c_h, c_e) for c_h h + c_e e; the classical
//                      parametrization x h - y e has x = c_h, y = -c_e.
//   SurfaceModel       coordinates of the user-supplied basis of N^1.
//   AbelianSurfaceModel  coordinates of N^1(V) = Q^3 with the given gram.
//   CutkoskyModel      (s, c1, c2, c3) for s ξ + π*c on X = P(O(A) ⊕ O(B)),
//                      ξ the Serre class.
//   SplitRuledModel    (s, k) for s ξ + k f on P(O(d1 p) ⊕ O(d2 p)) over an
//                      elliptic curve, f the fibre class.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "asymvol/cone.hpp"
#include "asymvol/linalg.hpp"
#include "asymvol/polytope.hpp"
#include "asymvol/scalar.hpp"

namespace asymvol {

/// A point of N^1(X)_Q in the owning model's fixed basis.
struct NSClass {
  RatVec coords;

  NSClass() = default;
  explicit NSClass(RatVec c) : coords(std::move(c)) {}
  NSClass(std::initializer_list<long> c) {
    for (long x : c) coords.emplace_back(x);
  }

  std::size_t size() const { return coords.size(); }
  const Rat& operator[](std::size_t i) const { return coords[i]; }
  Rat& operator[](std::size_t i) { return coords[i]; }
  bool is_zero() const;
  bool is_integral() const;

  friend NSClass operator+(const NSClass& a, const NSClass& b) { return NSClass(add(a.coords, b.coords)); }
  friend NSClass operator-(const NSClass& a, const NSClass& b) { return NSClass(sub(a.coords, b.coords)); }
  friend NSClass operator*(const Rat& s, const NSClass& a) { return NSClass(scale(s, a.coords)); }
  friend bool operator==(const NSClass& a, const NSClass& b) = default;
};

std::string format_class(const NSClass& c);
NSClass parse_class(std::string_view text);

Rat bilinear(const RatMatrix& gram, const RatVec& a, const RatVec& b);

struct ToricModel {
  std::string name;
  int dim = 0;
  std::vector<IntVec> rays;
  std::vector<RatVec> basis_divisors;  // ray-coefficient vectors
  NSClass ample;                       // a reference ample class
  RatMatrix class_map;                 // rho x n, kills principal divisors

  int picard_number() const { return static_cast<int>(basis_divisors.size()); }
  int ray_count() const { return static_cast<int>(rays.size()); }

  /// Validates the fan data and derives class_map. When `ample` is empty a
  /// small search for an ample class is run.
  static ToricModel create(std::string name, int dim, std::vector<IntVec> rays,
                           std::vector<RatVec> basis_divisors, std::optional<NSClass> ample = std::nullopt);
};

struct BlowupPdModel {
  int dim = 2;
  ToricModel toric;
};

struct SurfaceModel {
  std::string name;
  RatMatrix gram;
  std::vector<NSClass> negative_curves;
  NSClass ample_reference;

  int picard_number() const { return static_cast<int>(gram.size()); }
  /// Without `ample`, the first small integral class with positive square,
  /// positive degree on every curve and positive leading coordinate is used.
  static SurfaceModel create(std::string name, RatMatrix gram, std::vector<NSClass> curves,
                             std::optional<NSClass> ample = std::nullopt);
};

struct AbelianSurfaceModel {
  std::string name;
  RatMatrix gram;  // q(v) = v^T gram v
  NSClass ample;

  QuadraticCone nef_cone() const { return QuadraticCone(gram, ample.coords); }
  static AbelianSurfaceModel create(std::string name, RatMatrix gram, NSClass ample);
};

struct CutkoskyModel {
  std::string name;
  AbelianSurfaceModel base;
  NSClass a;  // ample
  NSClass b;  // not nef

  static CutkoskyModel create(std::string name, RatMatrix gram, NSClass a, NSClass b);
};

struct SplitRuledModel {
  std::string name;
  long long d1 = 0;
  long long d2 = 0;
};

using Model = std::variant<ToricModel, BlowupPdModel, SurfaceModel, AbelianSurfaceModel, CutkoskyModel,
                           SplitRuledModel>;

/// Variety dimension d.
int dimension(const Model& model);
int picard_number(const Model& model);
std::string model_name(const Model& model);
std::string model_kind(const Model& model);

/// The toric structure, if the model has one (ToricModel or BlowupPdModel).
const ToricModel* as_toric(const Model& model);

// Presets. `spec` accepts "projective_space(d)", "blowup_pd(d)",
// "hirzebruch(n)", "cutkosky_golden", "cutkosky(a1,a2,a3;b1,b2,b3)",
// "abelian_golden", "split_ruled(a)", "surface(g11,...,grr;curve;curve...)",
// "blowup_surface", plus the short aliases p<d>, blowup<d>.
Model preset(std::string_view spec);

ToricModel projective_space(int d);
BlowupPdModel blowup_pd(int d);
ToricModel hirzebruch(int n);
CutkoskyModel cutkosky_golden();
CutkoskyModel cutkosky(const NSClass& a, const NSClass& b);
AbelianSurfaceModel abelian_golden();
SplitRuledModel split_ruled(long long a);
SurfaceModel blowup_surface();

// Toric lattice algebra.
NSClass class_of_divisor(const ToricModel& model, const RatVec& divisor);
RatVec divisor_of_class(const ToricModel& model, const NSClass& cls);
RatVec principal_divisor(const ToricModel& model, const RatVec& u);
LatticePolytope toric_polytope(const ToricModel& model, const RatVec& divisor);
bool toric_is_ample(const ToricModel& model, const NSClass& cls);

// Positivity tests.
bool nef_test(const Model& model, const NSClass& cls);
bool psef_test(const Model& model, const NSClass& cls);
/// Interior of the pseudoeffective cone (equivalently vol > 0).
bool big_test(const Model& model, const NSClass& cls);

/// Surface negative-part iteration without validation: returns the support
/// (curve indices, ascending) and coefficients solving gram(P, C_j) = 0.
struct SurfaceSplit {
  NSClass positive;
  std::vector<std::size_t> support;
  RatVec coefficients;
  bool solvable = true;
};
SurfaceSplit surface_split(const SurfaceModel& model, const NSClass& cls);

/// The closed interval of t in [0, 1] with p + t w nef on the abelian
/// surface, or nullopt when no such t exists.
struct NefSegment {
  QuadExt lo;
  QuadExt hi;
};
std::optional<NefSegment> nef_segment(const AbelianSurfaceModel& surface, const RatVec& p, const RatVec& w);

void require_rank(const Model& model, const NSClass& cls);

}  // namespace asymvol
