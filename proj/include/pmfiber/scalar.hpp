#pragma once

// Exact field elements: Rational (Q) and Gaussian (Q(i)).
//
// Both are immutable-style value types over GMP rationals. The rest of the
// library is templated on the scalar type and instantiated for exactly these
// two. Eigen::NumTraits specializations at the bottom make them usable as
// Eigen matrix coefficients.

#include <gmpxx.h>

#include <Eigen/Core>
#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

namespace pmfiber {

enum class FieldTag { Rational, GaussianRational };

class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class v);

  static Rational parse(std::string_view text);

  const mpq_class& value() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_{0};
};

class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(int v) : re_(v) {}                  // NOLINT(google-explicit-constructor)
  Gaussian(long v) : re_(v) {}                 // NOLINT(google-explicit-constructor)
  Gaussian(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Gaussian parse(std::string_view text);
  static Gaussian i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  Gaussian conj() const { return {re_, -im_}; }
  // |z|^2, always a nonnegative rational.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  std::string to_string() const;

  Gaussian operator-() const { return {-re_, -im_}; }
  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }

  friend bool operator==(const Gaussian& a, const Gaussian& b) = default;
  friend bool operator==(const Gaussian& a, const Rational& b) { return a.is_real() && a.re_ == b; }

 private:
  Rational re_;
  Rational im_;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);
std::ostream& operator<<(std::ostream& os, const Gaussian& x);

// Uniform free-function surface used by the scalar-generic code.
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const Gaussian& x) { return x.is_zero(); }
inline Rational conj(const Rational& x) { return x; }
inline Gaussian conj(const Gaussian& x) { return x.conj(); }
inline bool is_real(const Rational&) { return true; }
inline bool is_real(const Gaussian& x) { return x.is_real(); }
inline Rational real_part(const Rational& x) { return x; }
inline Rational real_part(const Gaussian& x) { return x.real(); }
inline std::string to_string(const Rational& x) { return x.to_string(); }
inline std::string to_string(const Gaussian& x) { return x.to_string(); }

// r >= 0 with r*r == x, when x is a square in Q.
std::optional<Rational> is_perfect_square(const Rational& x);

// Some r in Q(i) with r*r == x, when one exists. The returned root has a
// positive real part, or zero real part and nonnegative imaginary part.
std::optional<Gaussian> exact_sqrt(const Gaussian& x);
inline std::optional<Rational> exact_sqrt(const Rational& x) { return is_perfect_square(x); }

template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr FieldTag field = FieldTag::Rational;
  static constexpr const char* name = "Q";
  static Rational parse(std::string_view t) { return Rational::parse(t); }
};

template <>
struct ScalarTraits<Gaussian> {
  static constexpr FieldTag field = FieldTag::GaussianRational;
  static constexpr const char* name = "Q(i)";
  static Gaussian parse(std::string_view t) { return Gaussian::parse(t); }
};

using AnyScalar = std::variant<Rational, Gaussian>;

// Parses either grammar: a Rational when the text has no imaginary unit.
AnyScalar parse_scalar(std::string_view text);

const char* field_name(FieldTag tag);
FieldTag parse_field(std::string_view name);

}  // namespace pmfiber

namespace Eigen {

template <>
struct NumTraits<pmfiber::Rational> : GenericNumTraits<pmfiber::Rational> {
  using Real = pmfiber::Rational;
  using NonInteger = pmfiber::Rational;
  using Nested = pmfiber::Rational;
  using Literal = pmfiber::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 128
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<pmfiber::Gaussian> : GenericNumTraits<pmfiber::Gaussian> {
  using Real = pmfiber::Gaussian;
  using NonInteger = pmfiber::Gaussian;
  using Nested = pmfiber::Gaussian;
  using Literal = pmfiber::Gaussian;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 128,
    MulCost = 512
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
