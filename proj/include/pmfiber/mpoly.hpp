#pragma once

// Sparse exact multivariate polynomials in x_1..x_n (n <= 16).
//
// Terms live in a std::map keyed by dense exponent vectors and ordered
// graded-lexicographically (higher total degree first, then larger exponent
// of x_1, x_2, ...). Zero coefficients are never stored, so the zero
// polynomial has no terms and equality is map equality.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "pmfiber/index_set.hpp"
#include "pmfiber/scalar.hpp"

namespace pmfiber {

inline constexpr int kMaxVariables = 16;

using Exponents = std::array<std::uint8_t, kMaxVariables>;

struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

Exponents exponents_of(IndexSet s);

template <typename S>
class MPoly {
 public:
  using Terms = std::map<Exponents, S, GrlexGreater>;

  MPoly() = default;
  explicit MPoly(int nvars);

  static MPoly constant(int nvars, const S& c);
  // x_k, 0-based k.
  static MPoly variable(int nvars, int k);
  // c * prod_{k in s} x_k
  static MPoly monomial(int nvars, IndexSet s, const S& c = S(1));

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  int degree_in(int k) const;
  int total_degree() const;
  bool is_multiaffine() const;
  bool depends_on(int k) const { return degree_in(k) > 0; }
  // Variables that occur with positive degree.
  IndexSet variables() const;

  S coefficient(const Exponents& e) const;
  const S& leading_coefficient() const;

  // Accumulates c * x^e.
  void add_term(const Exponents& e, const S& c);

  MPoly derivative(int k) const;
  // x_k := value.
  MPoly substitute(int k, const S& value) const;
  // x_k := values[k] for every k in vars.
  MPoly substitute(IndexSet vars, std::span<const S> values) const;
  // Variable k becomes variable target[k] of a polynomial in new_nvars variables.
  MPoly rename(int new_nvars, std::span<const int> target) const;

  std::string to_string() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const S& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) { return multiply(a, b); }
  friend MPoly operator*(MPoly a, const S& c) { return a *= c; }
  friend MPoly operator*(const S& c, MPoly a) { return a *= c; }
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  static MPoly multiply(const MPoly& a, const MPoly& b);
  void check_compatible(const MPoly& o, const char* what) const;

  int nvars_ = 0;
  Terms terms_;
};

template <typename S>
std::ostream& operator<<(std::ostream& os, const MPoly<S>& p) {
  return os << p.to_string();
}

// d_i f * d_j f - f * d_i d_j f. Requires i != j and degree <= 1 in x_i, x_j.
template <typename S>
MPoly<S> rayleigh_difference(const MPoly<S>& f, int i, int j);

// (g|_{x_k=0}) * d_k h - (h|_{x_k=0}) * d_k g. Requires degree <= 1 in x_k.
template <typename S>
MPoly<S> affine_resultant(const MPoly<S>& g, const MPoly<S>& h, int k);

// r with p == q * r; throws InexactDivisionError otherwise.
template <typename S>
MPoly<S> exact_divide(const MPoly<S>& p, const MPoly<S>& q);

// Coefficient of prod_{k in s} x_k in a multiaffine polynomial.
template <typename S>
S coefficient_of(const MPoly<S>& p, IndexSet s);

// c with p == c * q, if any. Both must be nonzero.
template <typename S>
std::optional<S> constant_ratio(const MPoly<S>& p, const MPoly<S>& q);

}  // namespace pmfiber
