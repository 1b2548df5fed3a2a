#pragma once

// Structural checks run against any catalog model. All sampling goes through
// a seeded std::mt19937_64 and a fixed integer mapping, so reports are
// reproducible byte for byte.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "asymvol/families.hpp"
#include "asymvol/models.hpp"
#include "asymvol/volume.hpp"

namespace asymvol {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi] from raw generator output.
long long uniform_int(Rng& rng, long long lo, long long hi);

using ClassSampler = std::function<NSClass(Rng&)>;

/// Rejection sampler over the box [-radius, radius]^rho with denominators up
/// to `denominator`, keeping classes that are big and inside the closed-form
/// domain of vol.
ClassSampler big_class_sampler(const Model& model, long radius = 4, long denominator = 4);

struct PropertyViolation {
  std::string inputs;
  std::string values;
  double margin = 0;
};

struct PropertyReport {
  std::string property;
  std::string model;
  std::size_t samples = 0;
  std::vector<PropertyViolation> violations;
  double worst_margin = 0;
  std::vector<std::string> notes;
  std::vector<std::string> records;  // one line per sample when requested

  bool passed() const { return violations.empty(); }
  /// "key: value" lines, then one "violation:" line per failure.
  std::string to_text() const;
  /// One JSON object; records included when present.
  std::string to_json() const;
};

struct CheckOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  bool keep_records = false;
};

/// vol(a + b)^(1/d) >= vol(a)^(1/d) + vol(b)^(1/d) - 1e-9 * rhs, with the
/// roots enclosed by MPFR directed rounding. Proportional pairs are checked
/// exactly and report margin 0.
PropertyReport check_log_concavity(const Model& model, const ClassSampler& sampler, const CheckOptions& options);

/// vol(a xi) == a^d vol(xi) exactly for each scalar in `scalars`.
PropertyReport check_homogeneity(const Model& model, const ClassSampler& sampler, const std::vector<Rat>& scalars,
                                 const CheckOptions& options);

/// Two divisor lifts differing by a random principal divisor give identical
/// vol, ord, restricted volume and section counts.
PropertyReport check_numerical_invariance(const ToricModel& model, const ClassSampler& sampler,
                                          const CheckOptions& options);

/// max |vol(p) - vol(q)| / (max(|p|, |q|)^(d-1) |p - q|) over grid edges of
/// the slice and of its 2x refinement; the two must agree within 20%.
PropertyReport check_lipschitz(const Model& model, const Slice2D& slice);

struct ChamberFit {
  std::string key;
  std::size_t points = 0;
  bool wall = false;        // points are collinear in the slice
  bool fitted = false;      // interpolation solved
  bool verified = false;    // fit reproduces every member exactly
  bool determined = false;  // enough points to pin the polynomial
  std::string polynomial;   // in ChamberFitResult::variables
  std::string failure;
};

struct ChamberFitResult {
  std::vector<ChamberFit> groups;
  std::size_t chambers = 0;  // full-dimensional groups
  std::size_t walls = 0;
  std::size_t skipped = 0;   // points outside the closed-form domain
  bool piecewise_polynomial = true;
  // Class coordinates (c1, c2) when rho = 2, else slice coordinates (s, t)
  // with point = origin + s u + t v.
  std::pair<std::string, std::string> variables;
};

/// Groups slice points by combinatorial type and fits a polynomial of the
/// given degree per group by exact interpolation over Q(sqrt D1, sqrt D2, ...).
ChamberFitResult chamber_fit(const Model& model, const Slice2D& slice, int degree);

PropertyReport chamber_fit_report(const Model& model, const Slice2D& slice, int degree);

}  // namespace asymvol
