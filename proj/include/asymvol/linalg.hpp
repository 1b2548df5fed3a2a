#pragma once

// Small dense linear algebra over Q. Matrices here are at most a dozen rows,
// so plain Gaussian elimination is the right tool.

#include <optional>
#include <vector>

#include "asymvol/scalar.hpp"

namespace asymvol {

using RatMatrix = std::vector<RatVec>;

RatMatrix identity_matrix(std::size_t n);
RatMatrix transpose(const RatMatrix& m);
RatVec mat_vec(const RatMatrix& m, const RatVec& v);
Rat dot(const RatVec& a, const RatVec& b);
Rat dot(const IntVec& a, const RatVec& b);

RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const Rat& s, const RatVec& v);

std::size_t rank(RatMatrix m);
Rat determinant(RatMatrix m);

/// Unique solution of the square system m x = rhs, or nullopt if singular.
std::optional<RatVec> solve(RatMatrix m, RatVec rhs);

/// Some solution of m x = rhs (free variables set to 0), or nullopt if the
/// system is inconsistent. m may be rectangular.
std::optional<RatVec> solve_any(RatMatrix m, RatVec rhs);

std::optional<RatMatrix> inverse(const RatMatrix& m);

/// Basis of {x : m x = 0}.
std::vector<RatVec> nullspace(RatMatrix m, std::size_t columns);

/// Indices of a maximal linearly independent subset of the rows, greedily in
/// order.
std::vector<std::size_t> independent_rows(const RatMatrix& rows);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Signature of a symmetric form via congruence diagonalization.
Inertia inertia(RatMatrix symmetric);

/// Sylvester test on all leading minors.
bool negative_definite(const RatMatrix& symmetric);

/// Scales a rational vector to a primitive integer vector with the same
/// direction.
IntVec primitive_integer(const RatVec& v);

long long gcd_ll(long long a, long long b);

}  // namespace asymvol
