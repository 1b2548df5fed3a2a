#include "asymvol/cone.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "asymvol/error.hpp"

namespace asymvol {

const char* to_string(ConeMembership m) {
  switch (m) {
    case ConeMembership::Outside: return "outside";
    case ConeMembership::Boundary: return "boundary";
    case ConeMembership::Interior: return "interior";
  }
  return "?";
}

namespace {

template <class Scalar>
Scalar pair(const RatVec& n, const std::vector<Scalar>& v) {
  Scalar s(0);
  for (std::size_t i = 0; i < n.size(); ++i) s += Scalar(n[i]) * v[i];
  return s;
}

int sign_of(const Rat& x) { return sgn(x); }
int sign_of(const QuadExt& x) { return x.sign(); }

template <class Scalar>
ConeMembership classify_impl(int dim, int span_dim, const std::vector<RatVec>& equations,
                             const std::vector<RatVec>& facets, const std::vector<Scalar>& v) {
  if (static_cast<int>(v.size()) != dim) {
    throw Error(ErrorKind::InvalidOperands, "cone membership vector has wrong length");
  }
  for (const auto& e : equations) {
    if (sign_of(pair(e, v)) != 0) return ConeMembership::Outside;
  }
  bool strict = true;
  for (const auto& f : facets) {
    int s = sign_of(pair(f, v));
    if (s < 0) return ConeMembership::Outside;
    if (s == 0) strict = false;
  }
  if (span_dim < dim) return ConeMembership::Boundary;
  return strict ? ConeMembership::Interior : ConeMembership::Boundary;
}

}  // namespace

PolyCone::PolyCone(int ambient_dimension, std::vector<RatVec> generators)
    : dim_(ambient_dimension), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (static_cast<int>(g.size()) != dim_) {
      throw Error(ErrorKind::InvalidOperands, "cone generator has wrong length");
    }
  }
  generators_.erase(std::remove_if(generators_.begin(), generators_.end(),
                                   [](const RatVec& g) {
                                     return std::all_of(g.begin(), g.end(), [](const Rat& x) { return x == 0; });
                                   }),
                    generators_.end());
  span_dim_ = generators_.empty() ? 0 : static_cast<int>(rank(generators_));
  equations_ = nullspace(generators_, dim_);
  if (span_dim_ == 0) return;
  // Facets within the span: hyperplanes through span_dim - 1 independent
  // generators with every generator on one side.
  std::set<IntVec> seen;
  const std::size_t k = static_cast<std::size_t>(span_dim_ - 1);
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      RatMatrix rows = equations_;
      for (auto i : idx) rows.push_back(generators_[i]);
      auto ns = nullspace(rows, dim_);
      if (ns.size() != 1) return;
      bool pos = false, neg = false;
      for (const auto& g : generators_) {
        int s = sgn(dot(ns[0], g));
        pos |= s > 0;
        neg |= s < 0;
      }
      if (pos && neg) return;
      RatVec n = neg ? scale(Rat(-1), ns[0]) : ns[0];
      IntVec key = primitive_integer(n);
      if (!seen.insert(key).second) return;
      RatVec nn(key.size());
      for (std::size_t j = 0; j < key.size(); ++j) nn[j] = Rat(static_cast<long>(key[j]));
      facets_.push_back(std::move(nn));
      return;
    }
    for (std::size_t i = start; i < generators_.size(); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

ConeMembership PolyCone::classify(const RatVec& v) const {
  return classify_impl(dim_, span_dim_, equations_, facets_, v);
}

ConeMembership PolyCone::classify(const std::vector<QuadExt>& v) const {
  return classify_impl(dim_, span_dim_, equations_, facets_, v);
}

QuadraticCone::QuadraticCone(RatMatrix gram, RatVec reference)
    : gram_(std::move(gram)), reference_(std::move(reference)) {}

namespace {

template <class Scalar>
ConeMembership classify_quadratic(const RatMatrix& gram, const RatVec& ref, const std::vector<Scalar>& v) {
  const std::size_t n = gram.size();
  if (v.size() != n) throw Error(ErrorKind::InvalidOperands, "cone membership vector has wrong length");
  Scalar q(0), b(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (gram[i][j] == 0) continue;
      q += Scalar(gram[i][j]) * v[i] * v[j];
      b += Scalar(gram[i][j]) * v[i] * Scalar(ref[j]);
    }
  }
  int sq = sign_of(q), sb = sign_of(b);
  if (sq < 0 || sb < 0) return ConeMembership::Outside;
  if (sq > 0 && sb > 0) return ConeMembership::Interior;
  if (sq > 0 && sb == 0) return ConeMembership::Outside;  // cannot happen for signature (1, n-1)
  return ConeMembership::Boundary;
}

}  // namespace

ConeMembership QuadraticCone::classify(const RatVec& v) const {
  return classify_quadratic(gram_, reference_, v);
}

ConeMembership QuadraticCone::classify(const std::vector<QuadExt>& v) const {
  return classify_quadratic(gram_, reference_, v);
}

}  // namespace asymvol
