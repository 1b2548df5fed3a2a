#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "asymvol/error.hpp"
#include "asymvol/volume.hpp"

using namespace asymvol;

namespace {

Int binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// h0 on Bl_p P^d for aH - cE, 0 <= c <= a: monomials of degree k in [c, a].
Int blowup_window(int d, long a, long c) {
  Int s = 0;
  for (long k = std::max(c, 0L); k <= a; ++k) s += binom(k + d - 1, d - 1);
  return s;
}

Rat blowup_formula(int d, const Rat& x, const Rat& y) {
  if (x < 0) return 0;
  if (y <= 0) return pow_rat(x, d);
  if (y <= x) return pow_rat(x, d) - pow_rat(y, d);
  return 0;
}

double golden_q(const double v[3]) { return 2 * (v[0] * v[1] + v[0] * v[2] + v[1] * v[2]); }

// 3 * integral_0^sigma q((1-t) a + t b) dt by Simpson, sigma by bisection.
double cutkosky_quadrature() {
  const double a[3] = {1, 1, 0}, b[3] = {1, 2, -1};
  auto q_at = [&](double t) {
    double v[3];
    for (int i = 0; i < 3; ++i) v[i] = (1 - t) * a[i] + t * b[i];
    return golden_q(v);
  };
  double lo = 0, hi = 1;
  for (int i = 0; i < 200; ++i) {
    double mid = (lo + hi) / 2;
    (q_at(mid) >= 0 ? lo : hi) = mid;
  }
  const int n = 2000;
  double h = lo / n, s = q_at(0) + q_at(lo);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * q_at(i * h);
  return 3 * s * h / 3;
}

// Section count on E x E: sum over t of q(c_t)/2 for ample c_t = (m-t) a + t b.
Int cutkosky_count(long m) {
  Int total = 0;
  for (long t = 0; t <= m; ++t) {
    long v[3] = {(m - t) + t, (m - t) + 2 * t, -t};
    long q = 2 * (v[0] * v[1] + v[0] * v[2] + v[1] * v[2]);
    long with_a = v[1] + v[2] + v[0] + v[2] + 2 * (v[0] + v[1]);  // 2-form pairing with a = (1,1,0)
    if (q > 0 && with_a > 0) total += q / 2;
  }
  return total;
}

Int elliptic_h0(long n) { return n > 0 ? Int(n) : Int(n == 0 ? 1 : 0); }

Int split_count(long d1, long d2, long m) {
  Int s = 0;
  for (long i = 0; i <= m; ++i) s += elliptic_h0(d1 * i + d2 * (m - i));
  return s;
}

QuadExt golden_sigma() { return canonicalize(make_rat(-1, 2), make_rat(1, 2), 5); }

}  // namespace

TEST(Vol, Examples) {
  Model b3 = blowup_pd(3);
  EXPECT_EQ(vol(b3, NSClass{2, -1}).value, QuadExt(7));
  EXPECT_EQ(vol(b3, NSClass{2, -1}).to_string(), "7 (closed_form)");
  Model c = cutkosky_golden();
  EXPECT_EQ(vol(c, NSClass{1, 0, 0, 0}).value, canonicalize(make_rat(-7, 2), make_rat(5, 2), 5));
  EXPECT_EQ(vol(Model(split_ruled(2)), NSClass{1, 0}).value, QuadExt(make_rat(1, 2)));
  for (const char* name : {"p2", "blowup3", "hirzebruch(2)", "blowup_surface", "split_ruled(3)", "cutkosky_golden"}) {
    Model m = preset(name);
    NSClass zero(RatVec(picard_number(m), Rat(0)));
    EXPECT_EQ(vol(m, zero).value, QuadExt(0)) << name;
  }
}

TEST(Vol, BlowupClosedFormAgainstToricLift) {
  for (int d : {2, 3}) {
    auto b = blowup_pd(d);
    for (int i = -8; i <= 8; ++i) {
      for (int j = -8; j <= 8; ++j) {
        Rat x = make_rat(i, 4), y = make_rat(j, 4);
        NSClass c(RatVec{x, -y});
        Rat expected = blowup_formula(d, x, y);
        EXPECT_EQ(vol(Model(b), c).value, QuadExt(expected)) << d << " " << format_class(c);
        Rat lift = toric_volume_divisor(b.toric, divisor_of_class(b.toric, c));
        EXPECT_EQ(lift, expected) << d << " " << format_class(c);
      }
    }
  }
}

TEST(Vol, WallsAgreeWithBothChambers) {
  for (int d : {2, 3, 4}) {
    for (int x = 1; x <= 4; ++x) {
      Rat xr(x);
      EXPECT_EQ(blowup_volume(d, xr, 0), pow_rat(xr, d));
      EXPECT_EQ(blowup_volume(d, xr, xr), 0);
    }
  }
}

TEST(H0, BlowupWindowCounts) {
  Model b3 = blowup_pd(3);
  EXPECT_EQ(h0_exact(b3, NSClass{2, -1}, 2), 31);
  for (int d : {2, 3}) {
    Model b = blowup_pd(d);
    for (long a = 0; a <= 4; ++a) {
      for (long c = 0; c <= a; ++c) {
        for (long m : {1L, 3L}) {
          EXPECT_EQ(h0_exact(b, NSClass{a, -c}, m), blowup_window(d, a * m, c * m)) << d << " " << a << " " << c;
        }
      }
    }
  }
}

TEST(H0, CutkoskyFiberSum) {
  Model c = cutkosky_golden();
  EXPECT_EQ(h0_exact(c, NSClass{1, 0, 0, 0}, 1), 1);
  for (long m : {1L, 2L, 5L, 17L, 100L}) EXPECT_EQ(h0_exact(c, NSClass{1, 0, 0, 0}, m), cutkosky_count(m)) << m;
}

TEST(H0, SplitRuled) {
  Model s = split_ruled(2);
  EXPECT_EQ(h0_exact(s, NSClass{1, 0}, 2), 3);
  for (long a : {2L, 3L, 5L}) {
    Model sa = split_ruled(a);
    for (long m : {1L, 4L, 9L, 50L}) EXPECT_EQ(h0_exact(sa, NSClass{1, 0}, m), split_count(1 - a, 1, m));
  }
}

TEST(Vol, CutkoskyMatchesQuadrature) {
  QuadExt v = vol(Model(cutkosky_golden()), NSClass{1, 0, 0, 0}).value;
  EXPECT_NEAR(v.to_double(), cutkosky_quadrature(), 1e-9);
  EXPECT_NE(v.radical_coefficient(), 0);
  // vol = 5 sigma - 1 with sigma^2 + sigma = 1.
  QuadExt s = golden_sigma();
  EXPECT_EQ(s * s + s, QuadExt(1));
  EXPECT_EQ(v, QuadExt(5) * s - QuadExt(1));
}

TEST(Oracle, Schedules) {
  Model b3 = blowup_pd(3);
  auto r = vol_oracle(b3, NSClass{2, -1}, geometric_schedule(200));
  EXPECT_EQ(r.provenance, Provenance::OracleExtrapolated);
  EXPECT_EQ(r.max_m, 200);
  EXPECT_LT(std::fabs(r.to_double() - 7) / 7, 0.05);
  double prev = 1e9;
  for (const auto& s : r.sequence) {
    double err = std::fabs(s.value.get_d() - 7);
    EXPECT_LE(err, prev);
    prev = err;
  }
  auto c = vol_oracle(Model(cutkosky_golden()), NSClass{1, 0, 0, 0}, geometric_schedule(1000));
  double target = vol(Model(cutkosky_golden()), NSClass{1, 0, 0, 0}).to_double();
  EXPECT_LT(std::fabs(c.to_double() - target) / target, 0.005);
  prev = 1e9;
  for (const auto& s : c.sequence) {
    double err = std::fabs(s.value.get_d() - target);
    EXPECT_LE(err, prev);
    prev = err;
  }
  auto sr = vol_oracle(Model(split_ruled(2)), NSClass{1, 0}, geometric_schedule(500));
  EXPECT_LT(std::fabs(sr.to_double() - 0.5) / 0.5, 0.01);
  EXPECT_THROW(vol_oracle(b3, NSClass{2, -1}, {4, 2}), Error);
}

TEST(Oracle, BudgetIsAnError) {
  try {
    h0_exact(Model(blowup_pd(3).toric), NSClass{2, -1}, 400, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(Zariski, Examples) {
  auto s = blowup_surface();
  auto z = zariski(s, NSClass{1, 1});
  EXPECT_EQ(z.positive, (NSClass{1, 0}));
  EXPECT_EQ(z.negative, (NSClass{0, 1}));
  EXPECT_EQ(vol(Model(s), NSClass{1, 1}).value, QuadExt(1));
  auto n = zariski(s, NSClass{3, -1});
  EXPECT_EQ(n.positive, (NSClass{3, -1}));
  EXPECT_TRUE(n.support.empty());
  auto w = zariski(s, NSClass{2, 3});
  EXPECT_EQ(w.positive, (NSClass{2, 0}));
  EXPECT_EQ(w.negative, (NSClass{0, 3}));
  ASSERT_EQ(w.coefficients.size(), 1u);
  EXPECT_EQ(w.coefficients[0], 3);
  try {
    zariski(s, NSClass{-1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPseudoeffective);
  }
}

TEST(Zariski, TwoExceptionalCurves) {
  RatMatrix g = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(-1), Rat(0)}, {Rat(0), Rat(0), Rat(-1)}};
  auto s = SurfaceModel::create("bl2", g, {NSClass{0, 1, 0}, NSClass{0, 0, 1}}, NSClass{3, -1, -1});
  auto z = zariski(s, NSClass{2, 1, 3});
  EXPECT_EQ(z.positive, (NSClass{2, 0, 0}));
  EXPECT_EQ(z.support.size(), 2u);
  EXPECT_EQ(vol(Model(s), NSClass{2, 1, 3}).value, QuadExt(4));
  auto h = zariski(s, NSClass{3, 1, -1});
  EXPECT_EQ(h.positive, (NSClass{3, 0, -1}));
  EXPECT_EQ(vol(Model(s), NSClass{3, 1, -1}).value, QuadExt(8));
}

TEST(Zariski, AgreesWithToricOnRandomClasses) {
  auto s = blowup_surface();
  auto b = blowup_pd(2);
  std::mt19937_64 rng(4);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    NSClass c(RatVec{make_rat(static_cast<long>(rng() % 41) - 20, 4), make_rat(static_cast<long>(rng() % 41) - 20, 4)});
    if (!psef_test(Model(s), c)) continue;
    auto z = zariski(s, c);
    EXPECT_EQ(z.positive + z.negative, c);
    EXPECT_EQ(bilinear(s.gram, z.positive.coords, z.negative.coords), 0);
    EXPECT_TRUE(nef_test(Model(s), z.positive));
    for (const auto& x : z.coefficients) EXPECT_GT(x, 0);
    EXPECT_EQ(vol(Model(s), c).value, vol(Model(b), c).value) << format_class(c);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Sigma, Golden) {
  auto c = cutkosky_golden();
  EXPECT_EQ(sigma(c, {0, 0, 0}), golden_sigma());
  QuadExt s2 = sigma(c, c.a.coords);
  EXPECT_GT(s2, golden_sigma());
  // The whole segment is nef once the twist is large.
  RatVec big = scale(Rat(10), c.a.coords);
  RatVec end = add(c.b.coords, big);
  EXPECT_GT(bilinear(c.base.gram, end, end), 0);
  EXPECT_EQ(sigma(c, big), QuadExt(1));
  try {
    sigma(c, {0, 0, -5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedClass);
  }
}

TEST(Hhat, Examples) {
  Model ab = abelian_golden();
  auto h = hhat(ab, NSClass{1, -1, 0});
  EXPECT_EQ(h.values, (std::vector<Rat>{0, 2, 0}));
  auto b = hhat(Model(blowup_pd(3)), NSClass{2, 1});
  EXPECT_EQ(b.values, (std::vector<Rat>{8, 0, 1, 0}));
  auto a = hhat(Model(blowup_pd(3)), NSClass{2, -1});
  EXPECT_EQ(a.values, (std::vector<Rat>{7, 0, 0, 0}));
  EXPECT_THROW(hhat(Model(projective_space(2)), NSClass{1}), Error);
}

TEST(Hhat, AbelianEulerCharacteristic) {
  auto ab = abelian_golden();
  std::mt19937_64 rng(8);
  int n = 0;
  while (n < 1000) {
    NSClass c(RatVec{make_rat(static_cast<long>(rng() % 21) - 10, 3), make_rat(static_cast<long>(rng() % 21) - 10, 3),
                     make_rat(static_cast<long>(rng() % 21) - 10, 3)});
    Rat q = bilinear(ab.gram, c.coords, c.coords);
    if (q == 0) continue;
    auto h = hhat(Model(ab), c);
    EXPECT_EQ(h.values[0] - h.values[1] + h.values[2], q);
    int nonzero = 0;
    for (const auto& v : h.values) {
      EXPECT_GE(v, 0);
      nonzero += v != 0;
    }
    EXPECT_EQ(nonzero, 1);
    ++n;
  }
}

TEST(Hhat, BlowupGrid) {
  for (int d : {2, 3, 4}) {
    Model b = blowup_pd(d);
    for (int i = -6; i <= 6; ++i) {
      for (int j = -6; j <= 6; ++j) {
        Rat x = make_rat(i, 3), y = make_rat(j, 3);
        auto h = hhat(b, NSClass(RatVec{x, -y}));
        Rat chi = 0;
        for (std::size_t k = 0; k < h.values.size(); ++k) {
          EXPECT_GE(h.values[k], 0);
          chi += (k % 2 ? -1 : 1) * h.values[k];
        }
        EXPECT_EQ(chi, pow_rat(x, d) - pow_rat(y, d)) << d << " " << i << " " << j;
        if (x > 0 && y < 0) {
          std::vector<Rat> expect(d + 1, Rat(0));
          expect[0] = pow_rat(x, d);
          expect[d - 1] = (d % 2 ? -1 : 1) * pow_rat(y, d);
          EXPECT_EQ(h.values, expect);
        }
      }
    }
  }
}

TEST(Ord, Examples) {
  Model b2 = blowup_pd(2);
  EXPECT_EQ(ord(b2, 3, NSClass{1, 1}), 1);
  EXPECT_EQ(ord(b2, 3, NSClass{2, -1}), 0);
  for (std::size_t r = 0; r < 4; ++r) EXPECT_EQ(ord(b2, r, NSClass{2, -1}), 0);
  EXPECT_EQ(ord(Model(blowup_surface()), 0, NSClass{1, 1}), 1);
  try {
    ord(b2, 3, NSClass{1, -1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotBig);
  }
}

TEST(Ord, ClosedFormOnBlowup) {
  for (int d : {2, 3}) {
    Model b = blowup_pd(d);
    const std::size_t e = static_cast<std::size_t>(d) + 1;
    for (int i = 1; i <= 6; ++i) {
      for (int j = -6; j <= 6; ++j) {
        Rat x = make_rat(i, 2), y = make_rat(j, 3);
        if (y >= x) continue;
        NSClass c(RatVec{x, -y});
        EXPECT_EQ(ord(b, e, c), y < 0 ? Rat(-y) : Rat(0));
        if (y > 0) {
          EXPECT_EQ(restricted_vol(std::get<BlowupPdModel>(b).toric, e, c), pow_rat(y, d - 1));
        }
      }
    }
  }
}

TEST(Ord, ConvexAndHomogeneous) {
  auto t = blowup_pd(3).toric;
  Model m = t;
  std::mt19937_64 rng(6);
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    NSClass a(RatVec{make_rat(static_cast<long>(rng() % 13) - 2, 2), make_rat(static_cast<long>(rng() % 13) - 6, 2)});
    NSClass b(RatVec{make_rat(static_cast<long>(rng() % 13) - 2, 2), make_rat(static_cast<long>(rng() % 13) - 6, 2)});
    if (!big_test(m, a) || !big_test(m, b)) continue;
    for (std::size_t r = 0; r < t.rays.size(); ++r) {
      EXPECT_LE(ord(m, r, a + b), ord(m, r, a) + ord(m, r, b));
      EXPECT_EQ(ord(m, r, Rat(3) * a), 3 * ord(m, r, a));
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(RestrictedVol, MonomialOracle) {
  // On Bl_p P^3, H^0 restricted to E of m(2h - e) is the degree-m piece in
  // 3 variables; (d-1)! C(m+2, 2) / m^2 -> 1.
  auto t = blowup_pd(3).toric;
  EXPECT_EQ(restricted_vol(t, 4, NSClass{2, -1}), 1);
  const long m = 400;
  double oracle = 2.0 * binom(m + 2, 2).get_d() / (double(m) * m);
  EXPECT_NEAR(oracle, 1.0, 0.01);
  // Along x h - eps e the value eps^2 decreases to 0.
  Rat prev = 100;
  for (long k = 2; k <= 64; k *= 2) {
    Rat w = restricted_vol(t, 4, NSClass(RatVec{1, -make_rat(1, k)}));
    EXPECT_EQ(w, pow_rat(make_rat(1, k), 2));
    EXPECT_LT(w, prev);
    prev = w;
  }
  // Ample class, divisor off the base locus: the facet volume.
  EXPECT_EQ(restricted_vol(t, 3, NSClass{2, -1}), 4);
}

TEST(BaseLocus, Probe) {
  auto t = blowup_pd(2).toric;
  auto h = augmented_base_locus_probe(t, NSClass{1, 0});
  EXPECT_EQ(h.rays, (std::vector<std::size_t>{3}));
  EXPECT_TRUE(h.consistent);
  EXPECT_TRUE(h.cross_validated);
  EXPECT_TRUE(augmented_base_locus_probe(t, NSClass{2, -1}).rays.empty());
  EXPECT_TRUE(augmented_base_locus_probe(t, NSClass{3, -1}).rays.empty());
}

TEST(Fujita, Sweeps) {
  Model b2 = blowup_pd(2);
  std::vector<long long> sched = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  for (const auto& s : fujita_sweep(b2, NSClass{1, 1}, sched)) EXPECT_EQ(s.value, 1);
  for (const auto& s : fujita_sweep(Model(blowup_pd(3)), NSClass{2, -1}, {1, 2, 4})) EXPECT_EQ(s.value, 7);
  // A class whose polytope has non-lattice vertices: vol_m <= vol.
  Model h2 = hirzebruch(2);
  NSClass c{1, 1};
  Rat v = vol(h2, c).value.rational_part();
  for (const auto& s : fujita_sweep(h2, c, {1, 2, 3, 4, 6})) EXPECT_LE(s.value, v);
  auto cs = fujita_sweep(Model(cutkosky_golden()), NSClass{1, 0, 0, 0}, {10, 100});
  EXPECT_GT(cs[0].value, cs[1].value);
  EXPECT_THROW(fujita_sweep(Model(blowup_surface()), NSClass{1, 0}, {1}), Error);
}

TEST(Ampleness, Probe) {
  Model b3 = blowup_pd(3);
  EXPECT_TRUE(ampleness_probe(b3, NSClass(RatVec{1, make_rat(-1, 2)}), make_rat(1, 8), 2));
  EXPECT_FALSE(ampleness_probe(b3, NSClass{1, 0}, make_rat(1, 8), 2));
  EXPECT_FALSE(ampleness_probe(Model(abelian_golden()), NSClass{1, -1, 0}, make_rat(1, 8), 1));
}

TEST(Vol, Homogeneity) {
  std::mt19937_64 rng(12);
  std::vector<Model> models = {Model(blowup_pd(2)), Model(blowup_pd(3)), Model(hirzebruch(1)),
                               Model(blowup_surface()), Model(split_ruled(2)), Model(split_ruled(5))};
  for (const auto& m : models) {
    const int d = dimension(m), rho = picard_number(m);
    for (int k = 0; k < 40; ++k) {
      NSClass c;
      for (int i = 0; i < rho; ++i) c.coords.push_back(make_rat(static_cast<long>(rng() % 17) - 8, 3));
      Rat a = make_rat(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 4) + 1);
      EXPECT_EQ(vol(m, a * c).value, QuadExt(pow_rat(a, d)) * vol(m, c).value) << model_name(m);
    }
  }
  Model c = cutkosky_golden();
  EXPECT_EQ(vol(c, NSClass{3, 0, 0, 0}).value, QuadExt(27) * vol(c, NSClass{1, 0, 0, 0}).value);
  EXPECT_EQ(vol(Model(split_ruled(2)), NSClass{2, 0}).value, QuadExt(2));
  EXPECT_EQ(vol(Model(blowup_pd(2)), NSClass{6, -3}).value, QuadExt(27));
}

TEST(Vol, CutkoskyOutsideChamber) {
  try {
    vol(Model(cutkosky_golden()), NSClass{1, 0, 0, -5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedClass);
  }
}
