#include <gtest/gtest.h>

#include <random>

#include "asymvol/error.hpp"
#include "asymvol/polytope.hpp"

using namespace asymvol;

namespace {

LatticePolytope simplex(int d, long scale = 1) {
  std::vector<Inequality> ineq;
  for (int i = 0; i < d; ++i) {
    IntVec n(d, 0);
    n[i] = 1;
    ineq.push_back({n, 0});
  }
  ineq.push_back({IntVec(d, -1), Rat(scale)});
  return build_polytope(d, ineq);
}

LatticePolytope truncated(long lo, long hi) {
  return build_polytope(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, Rat(hi)}, {{1, 1}, Rat(-lo)}});
}

// Independent count: scan a box and test every inequality.
long brute_count(const std::vector<Inequality>& ineq, long long m, long box) {
  long n = 0;
  for (long x = -box; x <= box; ++x) {
    for (long y = -box; y <= box; ++y) {
      bool ok = true;
      for (const auto& h : ineq) {
        long num = h.offset.get_num().get_si(), den = h.offset.get_den().get_si();
        if (den * (h.normal[0] * x + h.normal[1] * y) + num * m < 0) ok = false;
      }
      n += ok;
    }
  }
  return n;
}

}  // namespace

TEST(Polytope, BuildExamples) {
  auto s = simplex(2);
  EXPECT_TRUE(s.is_bounded());
  EXPECT_EQ(s.vertices().size(), 3u);
  EXPECT_TRUE(build_polytope(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, 1}, {{1, 1}, -2}}).is_empty());
  auto t = truncated(1, 2);
  EXPECT_EQ(t.vertices().size(), 4u);
  EXPECT_TRUE(t.is_full_dimensional());
}

TEST(Polytope, LatticeCounts) {
  EXPECT_EQ(lattice_point_count(simplex(2), 3), 10);
  EXPECT_EQ(lattice_point_count(simplex(3), 4), 35);
  EXPECT_EQ(lattice_point_count(truncated(1, 2), 5), 51);
}

TEST(Polytope, CountMatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Inequality> ineq = {{{1, 0}, 0}, {{0, 1}, 0}};
    ineq.push_back({{-static_cast<long long>(rng() % 3) - 1, -static_cast<long long>(rng() % 3) - 1},
                    make_rat(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 3) + 1)});
    ineq.push_back({{1, -1}, make_rat(static_cast<long>(rng() % 7), 2)});
    auto p = build_polytope(2, ineq);
    for (long long m : {1LL, 2LL, 3LL, 7LL}) {
      EXPECT_EQ(lattice_point_count(p, m), brute_count(ineq, m, 70)) << "trial " << trial << " m " << m;
    }
  }
}

TEST(Polytope, BudgetExceeded) {
  try {
    lattice_point_count(simplex(3), 1000, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(Polytope, UnboundedCount) {
  auto q = build_polytope(2, {{{1, 0}, 0}, {{0, 1}, 0}});
  EXPECT_FALSE(q.is_bounded());
  EXPECT_THROW(lattice_point_count(q, 1), Error);
}

TEST(Polytope, Volumes) {
  EXPECT_EQ(euclidean_volume(simplex(2)), make_rat(1, 2));
  auto cube = build_polytope(3, {{{1, 0, 0}, 0}, {{0, 1, 0}, 0}, {{0, 0, 1}, 0},
                                 {{-1, 0, 0}, 1}, {{0, -1, 0}, 1}, {{0, 0, -1}, 1}});
  EXPECT_EQ(euclidean_volume(cube), 1);
  EXPECT_EQ(euclidean_volume(truncated(1, 2)), make_rat(3, 2));
  EXPECT_EQ(normalized_volume(truncated(1, 2)), 3);
  auto flat = build_polytope(2, {{{1, 0}, 0}, {{-1, 0}, 0}, {{0, 1}, 0}, {{0, -1}, 1}});
  EXPECT_EQ(euclidean_volume(flat), 0);
}

TEST(Polytope, EhrhartLeadingTerm) {
  // |2 count(mP)/m^2 - 2 vol(P)| <= K/m with K fixed by the boundary.
  for (const auto& p : {simplex(2), truncated(1, 2), truncated(0, 3)}) {
    Rat nv = normalized_volume(p);
    double k_max = 0;
    for (long long m : {10LL, 20LL, 40LL, 80LL}) {
      Rat r = Rat(2 * lattice_point_count(p, m)) / Rat(static_cast<long>(m * m));
      k_max = std::max(k_max, std::fabs(Rat(r - nv).get_d()) * static_cast<double>(m));
    }
    EXPECT_LT(k_max, 20.0);
  }
}

TEST(Polytope, TranslationInvariance) {
  auto p = truncated(1, 2);
  auto t = p.translated({3, -5});
  EXPECT_EQ(euclidean_volume(t), euclidean_volume(p));
  EXPECT_EQ(lattice_point_count(t, 3), lattice_point_count(p, 3));
}

TEST(Polytope, Faces) {
  auto f = face(simplex(2), {-1, -1}, 1);
  EXPECT_EQ(f.ambient_dimension(), 1);
  EXPECT_EQ(normalized_volume(f), 1);
  auto g = face(truncated(1, 2), {1, 1}, -1);
  EXPECT_EQ(lattice_point_count(g, 1), 2);
  EXPECT_TRUE(face(simplex(2), {1, 1}, 5).is_empty());
  EXPECT_THROW(face(simplex(2), {1, 1}, make_rat(-1, 2)), Error);
  // A face of a face is a face: edge of a triangle, then its endpoint.
  auto tri = simplex(3);
  auto facet = face(tri, {0, 0, 1}, 0);
  EXPECT_EQ(facet.ambient_dimension(), 2);
  auto edge = face(facet, {0, 1}, 0);
  EXPECT_EQ(edge.ambient_dimension(), 1);
  EXPECT_EQ(lattice_point_count(edge, 1), 2);
}

TEST(Polytope, Hulls) {
  auto s = simplex(2);
  for (long long m : {1LL, 3LL, 7LL}) {
    auto h = hull_of_lattice_points(s, m);
    EXPECT_EQ(normalized_volume(h), Rat(static_cast<long>(m * m)));
  }
  auto half = build_polytope(1, {{{1}, 0}, {{-1}, make_rat(1, 2)}});
  auto h = hull_of_lattice_points(half, 1);
  EXPECT_EQ(h.vertices().size(), 1u);
  EXPECT_EQ(h.vertices()[0], (RatVec{0}));
  auto none = build_polytope(1, {{{1}, make_rat(-1, 3)}, {{-1}, make_rat(2, 3)}});
  EXPECT_TRUE(hull_of_lattice_points(none, 1).is_empty());
}

TEST(Polytope, MinkowskiSums) {
  auto s = simplex(2);
  auto ss = minkowski_sum(s, s);
  EXPECT_EQ(euclidean_volume(ss), 2);
  EXPECT_TRUE(ss.contains(simplex(2, 2)) && simplex(2, 2).contains(ss));

  auto n2 = newton_region(2, {{2, 0}, {1, 1}, {0, 2}});
  auto n3 = newton_region(2, {{3, 0}, {2, 1}, {1, 2}, {0, 3}});
  auto n5 = newton_region(2, {{5, 0}, {0, 5}});
  auto sum = minkowski_sum(n2, n3);
  EXPECT_TRUE(sum.contains(n5) && n5.contains(sum));
  EXPECT_THROW(minkowski_sum(s, n2), Error);

  // Oracle: hull of pairwise vertex sums.
  auto a = truncated(1, 2), b = truncated(0, 3);
  std::vector<RatVec> pts;
  for (const auto& u : a.vertices()) {
    for (const auto& v : b.vertices()) pts.push_back({u[0] + v[0], u[1] + v[1]});
  }
  auto oracle = convex_hull(2, pts);
  auto ab = minkowski_sum(a, b);
  EXPECT_TRUE(ab.contains(oracle) && oracle.contains(ab));
  for (const auto& v : b.vertices()) EXPECT_TRUE(ab.contains(a.translated(v)));
}

TEST(Polytope, CountMonotoneWhenContainingOrigin) {
  auto p = truncated(0, 3);
  Int prev = 0;
  for (long long m = 1; m <= 12; ++m) {
    Int c = lattice_point_count(p, m);
    EXPECT_GE(c, prev);
    prev = c;
  }
}
