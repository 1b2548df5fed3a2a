#pragma once

// Volume-type invariants of classes on catalog models. Each invariant has a
// closed-form path; section counts at finite level m back the oracles.
//
// Split ruled surfaces. On X = P(O(d1 p) + O(d2 p)) over an elliptic curve,
// h0(X, m(s xi + k f)) = sum_{i=0}^{ms} h0_E((d1 i + d2 (ms - i) + mk) p).
// With x = i/m the degree is m l(x), l(x) = d1 x + d2 (s - x) + k, linear
// from l0 = s d2 + k to l1 = s d1 + k on [0, s]. Riemann sums give
//   vol = 2 * integral_0^s max(l(x), 0) dx
//       = s (l0 + l1)                    if l0, l1 >= 0
//       = s max(l0, l1)^2 / |l0 - l1|     if l0, l1 have opposite signs
//       = 0                               otherwise (and whenever s <= 0).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asymvol/models.hpp"
#include "asymvol/polytope.hpp"
#include "asymvol/scalar.hpp"

namespace asymvol {

enum class Provenance { ClosedForm, OracleExtrapolated };
const char* to_string(Provenance p);

struct OracleStep {
  long long m = 0;
  Rat value;  // d! h0(mD) / m^d
};

struct VolumeResult {
  QuadExt value;  // exact; for oracles the ratio at the largest m
  Provenance provenance = Provenance::ClosedForm;
  std::string detail;
  // Oracle data.
  long long max_m = 0;
  std::vector<OracleStep> sequence;
  double error_estimate = 0;  // |last - previous| of the sequence

  double to_double() const { return value.to_double(); }
  /// "7 (closed_form)" or "2.0917... (oracle_extrapolated, m=1000)".
  std::string to_string() const;
};

struct ZariskiDecomposition {
  NSClass positive;
  NSClass negative;
  std::vector<std::size_t> support;
  RatVec coefficients;
};

struct HhatVector {
  std::vector<Rat> values;  // indexed 0..d
};

VolumeResult vol(const Model& model, const NSClass& cls);

/// h0(X, O(mD)) for an integral class D.
Int h0_exact(const Model& model, const NSClass& cls, long long m, std::uint64_t budget = kDefaultLatticeBudget);

/// Toric count for an explicit integral divisor lift.
Int h0_toric_divisor(const ToricModel& model, const RatVec& divisor, long long m,
                     std::uint64_t budget = kDefaultLatticeBudget);

VolumeResult vol_oracle(const Model& model, const NSClass& cls, const std::vector<long long>& schedule,
                        std::uint64_t budget = kDefaultLatticeBudget);

/// Geometric schedule 1, 2, 4, ... capped at and ending with `to`.
std::vector<long long> geometric_schedule(long long to);

ZariskiDecomposition zariski(const SurfaceModel& model, const NSClass& cls);

/// Largest s in [0, 1] with (1 - s) a + s b + c nef. `c` has 3 coordinates.
QuadExt sigma(const CutkoskyModel& model, const RatVec& c);

HhatVector hhat(const Model& model, const NSClass& cls);

/// ord along ray `index` (toric) or listed curve `index` (surface).
Rat ord(const Model& model, std::size_t index, const NSClass& cls);

Rat restricted_vol(const ToricModel& model, std::size_t ray, const NSClass& cls);

// Toric invariants of an explicit divisor lift (ray coefficients). The class
// versions above go through divisor_of_class.
Rat toric_volume_divisor(const ToricModel& model, const RatVec& divisor);
Rat toric_ord_divisor(const ToricModel& model, std::size_t ray, const RatVec& divisor);
Rat toric_restricted_vol_divisor(const ToricModel& model, std::size_t ray, const RatVec& divisor);

struct BaseLocusProbe {
  std::vector<Rat> epsilons;
  std::vector<std::vector<std::size_t>> rays_per_epsilon;
  std::vector<std::size_t> rays;  // agreed set
  bool consistent = true;
  // restricted_vol along xi + eps * ample for each returned ray, eps
  // decreasing, followed by the value at xi itself.
  std::vector<std::vector<Rat>> approach;
  bool cross_validated = true;
};

BaseLocusProbe augmented_base_locus_probe(const ToricModel& model, const NSClass& cls,
                                          std::vector<Rat> epsilons = {Rat(1, 64), Rat(1, 128)});

struct FujitaStep {
  long long m = 0;
  Rat value;
};

std::vector<FujitaStep> fujita_sweep(const Model& model, const NSClass& cls, const std::vector<long long>& schedule,
                                     std::uint64_t budget = kDefaultLatticeBudget);

/// One-sided test: hhat^i = 0 for i > 0 on the grid xi + (radius / samples)
/// * k, k in {-samples..samples}^rho.
bool ampleness_probe(const Model& model, const NSClass& cls, const Rat& radius, int samples);

/// Closed forms on Bl_p P^d in the classical coordinates xi = x h - y e.
Rat blowup_volume(int d, const Rat& x, const Rat& y);
HhatVector blowup_hhat(int d, const Rat& x, const Rat& y);

}  // namespace asymvol
