#pragma once

// Multigraded families of monomial ideals a_m, m in Z^r, given by rules.
// An ideal is stored by its minimal exponent generators; the zero ideal has
// none and the unit ideal has the single generator 0.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asymvol/cone.hpp"
#include "asymvol/models.hpp"
#include "asymvol/scalar.hpp"

namespace asymvol {

class MonomialIdeal {
 public:
  MonomialIdeal() = default;  // zero ideal
  MonomialIdeal(int vars, std::vector<IntVec> generators);

  static MonomialIdeal zero(int vars);
  static MonomialIdeal unit(int vars);

  int variable_count() const { return vars_; }
  const std::vector<IntVec>& generators() const { return generators_; }
  bool is_zero() const { return generators_.empty(); }
  bool is_unit() const;
  /// x^alpha in the ideal (some generator divides it).
  bool contains(const IntVec& alpha) const;
  /// min over generators of <weight, alpha>; throws NotEffective on zero.
  Rat order(const RatVec& weight) const;

 private:
  int vars_ = 0;
  std::vector<IntVec> generators_;
};

/// Closed box of indices lo <= m <= hi.
struct IndexBox {
  IntVec lo;
  IntVec hi;

  static IndexBox cube(int rank, long long lo, long long hi);
  std::vector<IntVec> points() const;
  bool contains(const IntVec& m) const;
};

/// Polynomial in the index coordinates m1..mr, e.g. "m1 + 2*m2 - 1" or "m1^2".
struct IndexPolynomial {
  struct Term {
    Rat coefficient;
    std::vector<unsigned> powers;
  };
  int rank = 0;
  std::vector<Term> terms;

  Rat operator()(const IntVec& m) const;
  std::string to_string() const;
  bool is_linear() const;
  static IndexPolynomial parse(std::string_view text, int rank);
};

class MonomialIdealFamily {
 public:
  using Rule = std::function<MonomialIdeal(const IntVec&)>;

  MonomialIdealFamily(int rank, int vars, Rule rule, std::string description);

  int rank() const { return rank_; }
  int variable_count() const { return vars_; }
  const std::string& description() const { return description_; }

  /// Valuation weight used by ord (all ones by default).
  const RatVec& weight() const { return weight_; }
  MonomialIdealFamily& set_weight(RatVec weight);

  /// Box used by the ample-indices check; defaults to [-3, 3]^r.
  const IndexBox& box() const { return box_; }
  MonomialIdealFamily& set_box(IndexBox box);

  /// Indices outside the domain are not evaluated by the checks (tables).
  const std::optional<IndexBox>& domain() const { return domain_; }
  MonomialIdealFamily& set_domain(IndexBox box);

  MonomialIdeal operator()(const IntVec& m) const;

 private:
  int rank_;
  int vars_;
  Rule rule_;
  std::string description_;
  RatVec weight_;
  IndexBox box_;
  std::optional<IndexBox> domain_;
};

// Constructors.
/// a_m = (x^alpha : |alpha| >= L(m)).
MonomialIdealFamily threshold_family(int rank, int vars, IndexPolynomial threshold);
/// a_m = (x^alpha : <lambda, alpha> >= L(m)), lambda > 0.
MonomialIdealFamily weighted_family(int rank, RatVec lambda, IndexPolynomial threshold);
/// a_m = (x^(sum_j m_j e_j)) when that exponent is nonnegative, else 0.
MonomialIdealFamily principal_family(std::vector<IntVec> exponents_per_index);
/// Explicit ideals on a finite domain; 0 maps to the unit ideal.
MonomialIdealFamily table_family(int rank, int vars, std::map<IntVec, std::vector<IntVec>> table);

/// Base ideals of |m1 D1 + ... + mr Dr| in the affine chart of the smooth
/// cone spanned by `chart` (ray indices). `basis` defaults to the model's
/// basis divisors.
MonomialIdealFamily family_from_toric(const ToricModel& model, const std::vector<std::size_t>& chart,
                                      std::optional<std::vector<RatVec>> basis = std::nullopt,
                                      std::uint64_t budget = kDefaultLatticeBudget);

struct MultiplicativityViolation {
  IntVec m;
  IntVec l;
  IntVec witness;  // exponent in a_m a_l missing from a_{m+l}
  std::string note;
};

struct MultiplicativityReport {
  std::size_t pairs_checked = 0;
  std::vector<MultiplicativityViolation> violations;
  bool passed() const { return violations.empty(); }
};

MultiplicativityReport verify_multiplicativity(const MonomialIdealFamily& family, const IndexBox& box);

struct OrdSample {
  RatVec point;
  Rat value;
  int depth = 0;
};

struct OrdEstimate {
  Rat value;                  // min_{k <= K} ord(a_{k m}) / k
  std::vector<Rat> sequence;  // running minimum per k; zero ideals repeat the last value
  int depth = 0;
};

OrdEstimate asymptotic_ord0(const MonomialIdealFamily& family, const IntVec& direction, int depth);

/// Rational directions are scaled to the lattice first (ord0 is homogeneous).
OrdEstimate asymptotic_ord0(const MonomialIdealFamily& family, const RatVec& direction, int depth);

struct ConeEstimate {
  PolyCone nef;
  PolyCone psef;
  std::size_t nef_generators = 0;
  std::size_t psef_generators = 0;
  IndexBox box;
};

ConeEstimate cones_estimate(const MonomialIdealFamily& family, const IndexBox& box);

/// The box holds r linearly independent indices with unit ideal.
bool has_ample_indices(const MonomialIdealFamily& family, const IndexBox& box);

struct Slice2D {
  RatVec origin;
  RatVec u;
  RatVec v;
  int steps_u = 1;
  int steps_v = 1;

  RatVec point(int i, int j) const;
  /// "x0,y0;ux,uy;vx,vy;n1,n2".
  static Slice2D parse(std::string_view text);
};

struct RegularityReport {
  Slice2D slice;
  int depth = 0;
  std::vector<std::vector<Rat>> values;  // [i][j]
  std::vector<std::vector<Rat>> first_u, first_v;
  std::vector<std::vector<Rat>> second_u, second_v;  // interior points, zero elsewhere
  Rat max_second = 0;
  std::vector<std::pair<int, int>> creases;
  bool ample_indices = false;
  bool linear() const { return max_second == 0; }
};

/// Refuses families without ample indices in their box unless
/// `require_ample_indices` is false; the report records the check either way.
RegularityReport regularity_scan(const MonomialIdealFamily& family, const Slice2D& slice, int depth,
                                 bool require_ample_indices = true);

}  // namespace asymvol
