#include <gtest/gtest.h>

#include <random>

#include "asymvol/error.hpp"
#include "asymvol/models.hpp"
#include "asymvol/polytope.hpp"

using namespace asymvol;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Config;
}

RatVec ray_divisor(std::size_t n, std::size_t i, long c = 1) {
  RatVec d(n, Rat(0));
  d[i] = c;
  return d;
}

}  // namespace

TEST(Presets, BlowupFan) {
  auto b = blowup_pd(2);
  EXPECT_EQ(b.toric.rays, (std::vector<IntVec>{{1, 0}, {0, 1}, {-1, -1}, {1, 1}}));
  EXPECT_EQ(picard_number(Model(b)), 2);
  EXPECT_EQ(dimension(Model(b)), 2);
}

TEST(Presets, CutkoskyGolden) {
  auto c = cutkosky_golden();
  EXPECT_EQ(bilinear(c.base.gram, c.b.coords, c.b.coords), -2);
  EXPECT_EQ(c.a, (NSClass{1, 1, 0}));
  EXPECT_EQ(c.b, (NSClass{1, 2, -1}));
  EXPECT_EQ(picard_number(Model(c)), 4);
  EXPECT_EQ(dimension(Model(c)), 3);
}

TEST(Presets, SplitRuled) {
  auto s = split_ruled(2);
  EXPECT_EQ(s.d1, -1);
  EXPECT_EQ(s.d2, 1);
  EXPECT_EQ(kind_of([] { split_ruled(1); }), ErrorKind::InvalidModel);
}

TEST(Presets, Names) {
  EXPECT_EQ(model_name(preset("blowup3")), "blowup_pd(3)");
  EXPECT_EQ(model_name(preset("p2")), "projective_space(2)");
  EXPECT_EQ(model_name(preset("hirzebruch(2)")), "hirzebruch(2)");
  EXPECT_EQ(model_kind(preset("split_ruled(3)")), "split_ruled");
  EXPECT_EQ(kind_of([] { preset("nosuch"); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { preset("surface(1,0,0,1;0,1)"); }), ErrorKind::InvalidModel);
}

TEST(Validation, SurfaceSignature) {
  RatMatrix bad = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  EXPECT_EQ(kind_of([&] { SurfaceModel::create("bad", bad, {}); }), ErrorKind::InvalidModel);
  RatMatrix good = {{Rat(1), Rat(0)}, {Rat(0), Rat(-1)}};
  EXPECT_EQ(kind_of([&] { SurfaceModel::create("bad", good, {NSClass{1, 0}}); }), ErrorKind::InvalidModel);
}

TEST(Validation, CutkoskyNeedsNonNefB) {
  RatMatrix g = {{Rat(0), Rat(1), Rat(1)}, {Rat(1), Rat(0), Rat(1)}, {Rat(1), Rat(1), Rat(0)}};
  EXPECT_EQ(kind_of([&] { CutkoskyModel::create("x", g, NSClass{1, 1, 0}, NSClass{1, 1, 1}); }),
            ErrorKind::InvalidModel);
}

TEST(Validation, ToricRaysMustSpan) {
  EXPECT_EQ(kind_of([] { ToricModel::create("x", 2, {{1, 0}, {-1, 0}}, {}); }), ErrorKind::InvalidModel);
}

TEST(ToricPolytope, Examples) {
  auto p2 = projective_space(2);
  auto s = toric_polytope(p2, ray_divisor(3, 2));
  EXPECT_EQ(euclidean_volume(s), make_rat(1, 2));
  EXPECT_EQ(s.vertices().size(), 3u);
  auto b = blowup_pd(2).toric;
  RatVec d = {0, 0, 2, -1};
  EXPECT_EQ(euclidean_volume(toric_polytope(b, d)), make_rat(3, 2));
  EXPECT_TRUE(toric_polytope(b, ray_divisor(4, 2, -1)).is_empty());
}

TEST(ClassMap, Examples) {
  auto b = blowup_pd(2).toric;
  EXPECT_EQ(class_of_divisor(b, ray_divisor(4, 2)), (NSClass{1, 0}));
  RatVec d = add(RatVec{0, 0, 1, 1}, principal_divisor(b, {1, 1}));
  EXPECT_EQ(class_of_divisor(b, d), (NSClass{1, 1}));
  // D_0 = h - e.
  EXPECT_EQ(class_of_divisor(b, ray_divisor(4, 0)), (NSClass{1, -1}));
}

TEST(ClassMap, LinearAndPrincipalInvariant) {
  std::mt19937_64 rng(2);
  for (const auto& t : {blowup_pd(3).toric, hirzebruch(2), projective_space(3)}) {
    const std::size_t n = t.rays.size();
    for (int k = 0; k < 50; ++k) {
      RatVec a(n), b(n), u(t.dim);
      for (auto& x : a) x = static_cast<long>(rng() % 11) - 5;
      for (auto& x : b) x = static_cast<long>(rng() % 11) - 5;
      for (auto& x : u) x = static_cast<long>(rng() % 7) - 3;
      EXPECT_EQ(class_of_divisor(t, add(a, b)), class_of_divisor(t, a) + class_of_divisor(t, b));
      EXPECT_EQ(class_of_divisor(t, add(a, principal_divisor(t, u))), class_of_divisor(t, a));
      NSClass c = class_of_divisor(t, a);
      EXPECT_EQ(class_of_divisor(t, divisor_of_class(t, c)), c);
    }
  }
}

TEST(ClassMap, HirzebruchOneIsTheBlowup) {
  auto f1 = hirzebruch(1);
  auto bl = blowup_pd(2).toric;
  // Search GL2(Z) for a map carrying the F1 fan onto the blow-up fan.
  std::vector<std::size_t> perm;
  for (long a = -1; a <= 1 && perm.empty(); ++a)
    for (long b = -1; b <= 1 && perm.empty(); ++b)
      for (long c = -1; c <= 1 && perm.empty(); ++c)
        for (long d = -1; d <= 1 && perm.empty(); ++d) {
          if (a * d - b * c != 1 && a * d - b * c != -1) continue;
          std::vector<std::size_t> p;
          for (const auto& r : f1.rays) {
            IntVec img = {a * r[0] + b * r[1], c * r[0] + d * r[1]};
            auto it = std::find(bl.rays.begin(), bl.rays.end(), img);
            if (it == bl.rays.end()) break;
            p.push_back(static_cast<std::size_t>(it - bl.rays.begin()));
          }
          if (p.size() == 4) perm = p;
        }
  ASSERT_EQ(perm.size(), 4u);
  // The fibre D_2 of F1 lands on a divisor of class h - e.
  NSClass fibre_bl = class_of_divisor(bl, ray_divisor(4, perm[2]));
  EXPECT_EQ(fibre_bl, (NSClass{1, -1}));
  NSClass fibre = class_of_divisor(f1, ray_divisor(4, 2));
  EXPECT_EQ(class_of_divisor(f1, divisor_of_class(f1, fibre)), fibre);
  // The negative section of F1 is E.
  EXPECT_EQ(class_of_divisor(bl, ray_divisor(4, perm[1])), (NSClass{0, 1}));
}

TEST(Positivity, Blowup) {
  Model b = blowup_pd(2);
  EXPECT_TRUE(nef_test(b, NSClass{1, -1}));
  EXPECT_FALSE(nef_test(b, NSClass{1, 1}));
  EXPECT_TRUE(psef_test(b, NSClass{1, 1}));
  EXPECT_TRUE(big_test(b, NSClass{1, 1}));
  EXPECT_FALSE(big_test(b, NSClass{1, -1}));
  EXPECT_TRUE(psef_test(b, NSClass{0, 1}));
  EXPECT_FALSE(psef_test(b, NSClass{-1, 0}));
  EXPECT_TRUE(nef_test(b, NSClass{0, 0}));
}

TEST(Positivity, Cutkosky) {
  auto c = cutkosky_golden();
  Model a = c.base;
  EXPECT_TRUE(nef_test(a, c.a));
  EXPECT_FALSE(nef_test(a, c.b));
  EXPECT_TRUE(nef_test(a, NSClass{0, 0, 0}));
  // Eff = Nef on the abelian surface.
  EXPECT_EQ(psef_test(a, c.b), nef_test(a, c.b));
}

TEST(Positivity, NefImpliesPsefAndConvexity) {
  std::mt19937_64 rng(9);
  std::vector<Model> models = {Model(blowup_pd(3)), Model(hirzebruch(2)), Model(blowup_surface()),
                               Model(abelian_golden())};
  for (const auto& m : models) {
    const int rho = picard_number(m);
    std::vector<NSClass> nef;
    for (int k = 0; k < 300; ++k) {
      NSClass c;
      for (int i = 0; i < rho; ++i) c.coords.push_back(make_rat(static_cast<long>(rng() % 17) - 8, 2));
      if (nef_test(m, c)) {
        EXPECT_TRUE(psef_test(m, c)) << model_name(m) << " " << format_class(c);
        nef.push_back(c);
      }
    }
    ASSERT_GT(nef.size(), 3u) << model_name(m);
    for (std::size_t i = 0; i + 1 < nef.size(); ++i) EXPECT_TRUE(nef_test(m, nef[i] + nef[i + 1]));
  }
}

TEST(ClassParse, Formats) {
  EXPECT_EQ(parse_class("2, -1/2"), (NSClass(RatVec{2, make_rat(-1, 2)})));
  EXPECT_EQ(format_class(NSClass(RatVec{2, make_rat(-1, 2)})), "2,-1/2");
  EXPECT_EQ(kind_of([] { parse_class("1,,2"); }), ErrorKind::Parse);
}
