#pragma once

#include <vector>

#include "asymvol/linalg.hpp"
#include "asymvol/scalar.hpp"

namespace asymvol {

enum class ConeMembership { Outside, Boundary, Interior };

const char* to_string(ConeMembership m);

/// Cone generated by finitely many rational vectors. Membership is decided
/// exactly against the facet description computed at construction.
class PolyCone {
 public:
  PolyCone(int ambient_dimension, std::vector<RatVec> generators);

  int ambient_dimension() const { return dim_; }
  const std::vector<RatVec>& generators() const { return generators_; }
  /// Linear span dimension of the generators.
  int dimension() const { return span_dim_; }
  /// Inward facet normals (within the span).
  const std::vector<RatVec>& facet_normals() const { return facets_; }
  /// Normals of the hyperplanes containing the span.
  const std::vector<RatVec>& equations() const { return equations_; }

  ConeMembership classify(const RatVec& v) const;
  ConeMembership classify(const std::vector<QuadExt>& v) const;

  bool contains(const RatVec& v) const { return classify(v) != ConeMembership::Outside; }
  bool contains_interior(const RatVec& v) const { return classify(v) == ConeMembership::Interior; }

 private:
  int dim_;
  int span_dim_ = 0;
  std::vector<RatVec> generators_;
  std::vector<RatVec> facets_;
  std::vector<RatVec> equations_;
};

/// {v : q(v) >= 0, B(v, reference) >= 0} for a form of signature (1, n-1);
/// the nef cone of an abelian surface.
class QuadraticCone {
 public:
  QuadraticCone(RatMatrix gram, RatVec reference);

  ConeMembership classify(const RatVec& v) const;
  ConeMembership classify(const std::vector<QuadExt>& v) const;

  const RatMatrix& gram() const { return gram_; }
  const RatVec& reference() const { return reference_; }

 private:
  RatMatrix gram_;
  RatVec reference_;
};

/// Free-function form of PolyCone::classify.
inline ConeMembership cone_contains(const PolyCone& c, const RatVec& v) { return c.classify(v); }

}  // namespace asymvol
