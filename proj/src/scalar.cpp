#include "pmfiber/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "pmfiber/error.hpp"

namespace pmfiber {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

[[noreturn]] void bad(std::string_view text, const char* why) {
  throw ParseError("malformed scalar '" + std::string(text) + "': " + why);
}

// [sign] digits [/ digits]; an empty numerator means 1 when allow_unit_numerator
// is set (used for the coefficient in front of i).
Rational parse_rational_body(std::string_view full, std::string_view s, bool allow_unit_numerator) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
  mpz_class p(1);
  if (num.empty()) {
    if (!allow_unit_numerator) bad(full, "missing numerator");
  } else {
    if (!all_digits(num)) bad(full, "numerator is not an integer");
    p = mpz_class(std::string(num), 10);
  }
  mpz_class q(1);
  if (slash != std::string_view::npos) {
    if (!all_digits(den)) bad(full, "denominator is not an integer");
    q = mpz_class(std::string(den), 10);
    if (q == 0) bad(full, "zero denominator");
  }
  mpq_class v(negative ? mpz_class(-p) : p, q);
  v.canonicalize();
  return Rational(v);
}

}  // namespace

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) bad(text, "empty");
  return parse_rational_body(text, s, false);
}

std::string Rational::to_string() const { return v_.get_str(10); }

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Gaussian Gaussian::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) bad(text, "empty");
  const auto ipos = s.find('i');
  if (ipos == std::string_view::npos) return Gaussian(Rational::parse(s));
  if (s.find('i', ipos + 1) != std::string_view::npos) bad(text, "more than one imaginary unit");

  // Split at the last sign that is not the leading one and not part of an exponent-free
  // imaginary coefficient: "a+bi", "a-bi", "bi", "-i/2".
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string_view real_text;
  std::string_view imag_text = s;
  if (split != std::string_view::npos) {
    if (split > ipos) bad(text, "imaginary part must follow the real part");
    real_text = s.substr(0, split);
    imag_text = s.substr(split);
  }
  // imag_text: [sign] [p[/q]] i [/q]
  const auto i_local = imag_text.find('i');
  const std::string_view after = imag_text.substr(i_local + 1);
  std::string coeff(imag_text.substr(0, i_local));
  if (!after.empty()) {
    if (after.front() != '/' || coeff.find('/') != std::string::npos) bad(text, "misplaced imaginary unit");
    coeff += after;
  }
  Rational im = parse_rational_body(text, coeff, true);
  Rational re = real_text.empty() ? Rational(0) : parse_rational_body(text, real_text, false);
  return {re, im};
}

std::string Gaussian::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  std::string out;
  if (!re_.is_zero()) out = re_.to_string();
  const Rational mag = im_.sign() < 0 ? -im_ : im_;
  if (im_.sign() < 0) {
    out += '-';
  } else if (!out.empty()) {
    out += '+';
  }
  if (mag != Rational(1)) out += mag.to_string();
  out += 'i';
  return out;
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}
Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}
Gaussian& Gaussian::operator*=(const Gaussian& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}
Gaussian& Gaussian::operator/=(const Gaussian& o) {
  const Rational n = o.norm();
  if (n.is_zero()) throw std::domain_error("Gaussian: division by zero");
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }
std::ostream& operator<<(std::ostream& os, const Gaussian& x) { return os << x.to_string(); }

std::optional<Rational> is_perfect_square(const Rational& x) {
  if (x.sign() < 0) return std::nullopt;
  const mpz_class p = x.numerator();
  const mpz_class q = x.denominator();
  if (mpz_perfect_square_p(p.get_mpz_t()) == 0 || mpz_perfect_square_p(q.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class rp;
  mpz_class rq;
  mpz_sqrt(rp.get_mpz_t(), p.get_mpz_t());
  mpz_sqrt(rq.get_mpz_t(), q.get_mpz_t());
  return Rational(mpq_class(rp, rq));
}

std::optional<Gaussian> exact_sqrt(const Gaussian& x) {
  if (x.is_real()) {
    if (x.real().sign() >= 0) {
      if (auto r = is_perfect_square(x.real())) return Gaussian(*r);
      return std::nullopt;
    }
    if (auto r = is_perfect_square(-x.real())) return Gaussian(Rational(0), *r);
    return std::nullopt;
  }
  // (u + v i)^2 = a + b i  with  u^2 = (a + |x|)/2,  v = b / (2u).
  const auto modulus = is_perfect_square(x.norm());
  if (!modulus) return std::nullopt;
  const auto u = is_perfect_square((x.real() + *modulus) / Rational(2));
  if (!u || u->is_zero()) return std::nullopt;
  Gaussian root(*u, x.imag() / (Rational(2) * *u));
  if (root * root != x) return std::nullopt;
  return root;
}

AnyScalar parse_scalar(std::string_view text) {
  if (text.find('i') == std::string_view::npos) return Rational::parse(text);
  return Gaussian::parse(text);
}

const char* field_name(FieldTag tag) { return tag == FieldTag::Rational ? "Q" : "Q(i)"; }

FieldTag parse_field(std::string_view name) {
  if (name == "Q") return FieldTag::Rational;
  if (name == "Q(i)") return FieldTag::GaussianRational;
  throw ParseError("unknown field '" + std::string(name) + "' (expected \"Q\" or \"Q(i)\")");
}

}  // namespace pmfiber
