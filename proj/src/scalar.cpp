#include "asymvol/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include <mpfr.h>

#include "asymvol/error.hpp"

namespace asymvol {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidScalar: return "invalid-scalar";
    case ErrorKind::InvalidComparison: return "invalid-comparison";
    case ErrorKind::UnboundedPolytope: return "unbounded-polytope";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::NotAFace: return "not-a-face";
    case ErrorKind::InvalidOperands: return "invalid-operands";
    case ErrorKind::InvalidModel: return "invalid-model";
    case ErrorKind::UnsupportedClass: return "unsupported-class";
    case ErrorKind::UnsupportedModel: return "unsupported-model";
    case ErrorKind::UnsupportedChart: return "unsupported-chart";
    case ErrorKind::NotPseudoeffective: return "not-pseudoeffective";
    case ErrorKind::NotBig: return "not-big";
    case ErrorKind::NotEffective: return "not-effective";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Config: return "config-error";
  }
  return "error";
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw Error(ErrorKind::InvalidScalar, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

std::string strip(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

bool valid_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Int parse_int_token(std::string_view s) {
  if (!valid_integer_token(s)) {
    throw Error(ErrorKind::Parse, "malformed integer '" + std::string(s) + "'");
  }
  std::string body(s[0] == '+' ? s.substr(1) : s);
  return Int(body, 10);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string s = strip(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int_token(s));
  Int num = parse_int_token(std::string_view(s).substr(0, slash));
  Int den = parse_int_token(std::string_view(s).substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
  return make_rat(num, den);
}

std::string format_rat(const Rat& value) { return value.get_str(10); }

Int floor_rat(const Rat& value) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Int ceil_rat(const Rat& value) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

bool is_integer(const Rat& value) { return value.get_den() == 1; }

Rat pow_rat(const Rat& base, unsigned exponent) {
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return make_rat(num, den);
}

bool exact_root(const Rat& value, unsigned degree, Rat& root) {
  if (value < 0) return false;
  Int num, den;
  if (mpz_root(num.get_mpz_t(), value.get_num_mpz_t(), degree) == 0) return false;
  if (mpz_root(den.get_mpz_t(), value.get_den_mpz_t(), degree) == 0) return false;
  root = make_rat(num, den);
  return true;
}

void square_free_split(const Int& n, Int& square_root_part, Int& core) {
  if (n <= 0) throw Error(ErrorKind::InvalidScalar, "square-free split of non-positive integer");
  Int rest = n;
  square_root_part = 1;
  core = 1;
  for (Int p = 2; p * p * p <= rest; ++p) {
    if (!mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) continue;
    unsigned count = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      rest /= p;
      ++count;
    }
    for (unsigned k = 0; k < count / 2; ++k) square_root_part *= p;
    if (count % 2 == 1) core *= p;
  }
  // rest has no prime factor below its cube root: it is 1, a prime, p*q or p^2.
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
      Int r;
      mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
      square_root_part *= r;
    } else {
      core *= rest;
    }
  }
}

QuadExt canonicalize(const Rat& rational, const Rat& radical, const Int& discriminant) {
  if (discriminant <= 0) {
    throw Error(ErrorKind::InvalidScalar,
                "discriminant must be positive, got " + discriminant.get_str());
  }
  QuadExt out(rational);
  if (radical == 0) return out;
  Int outer, core;
  square_free_split(discriminant, outer, core);
  Rat coeff = radical * Rat(outer);
  if (core == 1) return QuadExt(rational + coeff);
  return QuadExt(rational, coeff, core);
}

QuadExt::QuadExt(const Rat& rational) : rational_(rational) { rational_.canonicalize(); }

QuadExt::QuadExt(const Rat& rational, const Rat& radical, const Int& discriminant) {
  if (discriminant <= 0) {
    throw Error(ErrorKind::InvalidScalar,
                "discriminant must be positive, got " + discriminant.get_str());
  }
  rational_ = rational;
  rational_.canonicalize();
  if (radical == 0) return;
  Int outer, core;
  square_free_split(discriminant, outer, core);
  Rat coeff = radical * Rat(outer);
  if (core == 1) {
    rational_ += coeff;
  } else {
    radical_ = coeff;
    discriminant_ = core;
  }
}

int QuadExt::sign() const {
  int sa = sgn(rational_);
  int sb = sgn(radical_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 D.
  Rat lhs = rational_ * rational_;
  Rat rhs = radical_ * radical_ * Rat(discriminant_);
  return lhs > rhs ? sa : sb;
}

QuadExt QuadExt::conjugate() const {
  QuadExt out = *this;
  out.radical_ = -radical_;
  return out;
}

Rat QuadExt::norm() const {
  return rational_ * rational_ - radical_ * radical_ * Rat(discriminant_);
}

QuadExt QuadExt::operator-() const {
  QuadExt out = *this;
  out.rational_ = -rational_;
  out.radical_ = -radical_;
  return out;
}

namespace {

Int common_field(const QuadExt& a, const QuadExt& b, const char* op) {
  if (a.is_rational()) return b.discriminant();
  if (b.is_rational()) return a.discriminant();
  if (a.discriminant() != b.discriminant()) {
    throw Error(ErrorKind::InvalidScalar,
                std::string("cannot ") + op + " values over sqrt(" + a.discriminant().get_str() +
                    ") and sqrt(" + b.discriminant().get_str() + ")");
  }
  return a.discriminant();
}

}  // namespace

QuadExt& QuadExt::operator+=(const QuadExt& other) {
  Int d = common_field(*this, other, "add");
  *this = QuadExt(rational_ + other.rational_, radical_ + other.radical_, d);
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& other) { return *this += -other; }

QuadExt& QuadExt::operator*=(const QuadExt& other) {
  Int d = common_field(*this, other, "multiply");
  Rat a = rational_ * other.rational_ + radical_ * other.radical_ * Rat(d);
  Rat b = rational_ * other.radical_ + radical_ * other.rational_;
  *this = QuadExt(a, b, d);
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& other) {
  common_field(*this, other, "divide");
  Rat n = other.norm();
  if (n == 0) throw Error(ErrorKind::InvalidScalar, "division by zero");
  *this *= other.conjugate();
  *this = QuadExt(rational_ / n, radical_ / n, discriminant_);
  return *this;
}

bool operator==(const QuadExt& a, const QuadExt& b) {
  return a.rational_ == b.rational_ && a.radical_ == b.radical_ &&
         a.discriminant_ == b.discriminant_;
}

std::strong_ordering quad_compare(const QuadExt& a, const QuadExt& b) {
  if (!a.is_rational() && !b.is_rational() && a.discriminant() != b.discriminant()) {
    throw Error(ErrorKind::InvalidComparison,
                "cannot compare values over sqrt(" + a.discriminant().get_str() + ") and sqrt(" +
                    b.discriminant().get_str() + ")");
  }
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const QuadExt& a, const QuadExt& b) { return quad_compare(a, b); }

std::string QuadExt::to_string() const {
  if (is_rational()) return format_rat(rational_);
  std::string rad = "*sqrt(" + discriminant_.get_str() + ")";
  if (rational_ == 0) return format_rat(radical_) + rad;
  if (radical_ < 0) return format_rat(rational_) + " - " + format_rat(-radical_) + rad;
  return format_rat(rational_) + " + " + format_rat(radical_) + rad;
}

QuadExt QuadExt::parse(std::string_view text) {
  std::string s = strip(text);
  auto idx = s.find("sqrt(");
  if (idx == std::string::npos) return QuadExt(parse_rat(s));
  auto close = s.find(')', idx);
  if (close == std::string::npos || close + 1 != s.size()) {
    throw Error(ErrorKind::Parse, "malformed quadratic value '" + s + "'");
  }
  Int disc = parse_int_token(std::string_view(s).substr(idx + 5, close - idx - 5));
  std::string head = s.substr(0, idx);
  if (!head.empty() && head.back() == '*') head.pop_back();
  // The radical term starts at the last sign that is not the leading character.
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 0;) {
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  }
  std::string rational_text = "0";
  std::string coeff_text = head;
  if (split != std::string::npos && split > 0) {
    rational_text = head.substr(0, split);
    coeff_text = head.substr(split);
  }
  Rat coeff;
  if (coeff_text.empty() || coeff_text == "+") {
    coeff = 1;
  } else if (coeff_text == "-") {
    coeff = -1;
  } else {
    coeff = parse_rat(coeff_text);
  }
  if (disc <= 0) throw Error(ErrorKind::Parse, "non-positive discriminant in '" + s + "'");
  return canonicalize(parse_rat(rational_text), coeff, disc);
}

double QuadExt::to_double() const {
  mpfr_t a, b, r;
  mpfr_inits2(200, a, b, r, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(a, rational_.get_mpq_t(), MPFR_RNDN);
  mpfr_set_z(r, discriminant_.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(r, r, MPFR_RNDN);
  mpfr_set_q(b, radical_.get_mpq_t(), MPFR_RNDN);
  mpfr_mul(b, b, r, MPFR_RNDN);
  mpfr_add(a, a, b, MPFR_RNDN);
  double out = mpfr_get_d(a, MPFR_RNDN);
  mpfr_clears(a, b, r, static_cast<mpfr_ptr>(nullptr));
  return out;
}

std::string QuadExt::to_decimal(int digits) const {
  mpfr_t a, b, r;
  mpfr_inits2(256, a, b, r, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(a, rational_.get_mpq_t(), MPFR_RNDN);
  mpfr_set_z(r, discriminant_.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(r, r, MPFR_RNDN);
  mpfr_set_q(b, radical_.get_mpq_t(), MPFR_RNDN);
  mpfr_mul(b, b, r, MPFR_RNDN);
  mpfr_add(a, a, b, MPFR_RNDN);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, a);
  std::string out(buf);
  mpfr_free_str(buf);
  mpfr_clears(a, b, r, static_cast<mpfr_ptr>(nullptr));
  return out;
}

std::vector<QuadExt> quadratic_roots(const Rat& alpha, const Rat& beta, const Rat& gamma) {
  if (alpha == 0) {
    if (beta == 0) return {};
    return {QuadExt(-gamma / beta)};
  }
  Rat disc = beta * beta - 4 * alpha * gamma;
  if (disc < 0) return {};
  Rat center = -beta / (2 * alpha);
  if (disc == 0) return {QuadExt(center)};
  // sqrt(p/q) = sqrt(p q) / q
  Int p = disc.get_num();
  Int q = disc.get_den();
  Rat half_width_coeff = Rat(1) / (Rat(2) * alpha * Rat(q));
  QuadExt width = canonicalize(0, half_width_coeff, p * q);
  QuadExt lo = QuadExt(center) - width;
  QuadExt hi = QuadExt(center) + width;
  if (lo > hi) std::swap(lo, hi);
  return {lo, hi};
}

std::ostream& operator<<(std::ostream& os, const QuadExt& value) { return os << value.to_string(); }

}  // namespace asymvol
