#include "pmfiber/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pmfiber/error.hpp"

namespace pmfiber {
namespace {

int degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

// Sign and magnitude of a coefficient for the canonical text form. Gaussian
// values with both parts nonzero are parenthesized and never "negative".
struct CoefficientText {
  bool negative = false;
  bool unit = false;
  std::string magnitude;
};

CoefficientText coefficient_text(const Rational& c) {
  const Rational mag = c.sign() < 0 ? -c : c;
  return {c.sign() < 0, mag == Rational(1), mag.to_string()};
}

CoefficientText coefficient_text(const Gaussian& c) {
  if (c.is_real()) return coefficient_text(c.real());
  if (c.real().is_zero()) {
    const bool negative = c.imag().sign() < 0;
    const Gaussian mag = negative ? -c : c;
    return {negative, false, mag.to_string()};
  }
  return {false, false, "(" + c.to_string() + ")"};
}

}  // namespace

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const int da = degree(a);
  const int db = degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Exponents exponents_of(IndexSet s) {
  Exponents e{};
  for (int k : s.elements()) e[static_cast<std::size_t>(k)] = 1;
  return e;
}

template <typename S>
MPoly<S>::MPoly(int nvars) : nvars_(nvars) {
  if (nvars < 0 || nvars > kMaxVariables) {
    throw SizeLimitError("MPoly: variable count " + std::to_string(nvars) + " outside [0, " +
                         std::to_string(kMaxVariables) + "]");
  }
}

template <typename S>
MPoly<S> MPoly<S>::constant(int nvars, const S& c) {
  MPoly p(nvars);
  p.add_term(Exponents{}, c);
  return p;
}

template <typename S>
MPoly<S> MPoly<S>::variable(int nvars, int k) {
  return monomial(nvars, IndexSet::single(k));
}

template <typename S>
MPoly<S> MPoly<S>::monomial(int nvars, IndexSet s, const S& c) {
  MPoly p(nvars);
  if (!s.subset_of(IndexSet::all(nvars))) throw PreconditionError("MPoly::monomial: variable out of range");
  p.add_term(exponents_of(s), c);
  return p;
}

template <typename S>
int MPoly<S>::degree_in(int k) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[static_cast<std::size_t>(k)]));
  return d;
}

template <typename S>
int MPoly<S>::total_degree() const {
  return terms_.empty() ? 0 : degree(terms_.begin()->first);
}

template <typename S>
bool MPoly<S>::is_multiaffine() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return std::all_of(t.first.begin(), t.first.end(), [](std::uint8_t x) { return x <= 1; });
  });
}

template <typename S>
IndexSet MPoly<S>::variables() const {
  IndexSet out;
  for (const auto& [e, c] : terms_) {
    for (int k = 0; k < nvars_; ++k) {
      if (e[static_cast<std::size_t>(k)] > 0) out = out.with(k);
    }
  }
  return out;
}

template <typename S>
S MPoly<S>::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? S(0) : it->second;
}

template <typename S>
const S& MPoly<S>::leading_coefficient() const {
  if (terms_.empty()) throw PreconditionError("leading_coefficient of the zero polynomial");
  return terms_.begin()->second;
}

template <typename S>
void MPoly<S>::add_term(const Exponents& e, const S& c) {
  if (pmfiber::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (pmfiber::is_zero(it->second)) terms_.erase(it);
  }
}

template <typename S>
MPoly<S> MPoly<S>::derivative(int k) const {
  MPoly out(nvars_);
  const auto idx = static_cast<std::size_t>(k);
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exponents d = e;
    const int power = d[idx];
    --d[idx];
    out.add_term(d, c * S(power));
  }
  return out;
}

template <typename S>
MPoly<S> MPoly<S>::substitute(int k, const S& value) const {
  MPoly out(nvars_);
  const auto idx = static_cast<std::size_t>(k);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    S coeff = c;
    for (int p = 0; p < e[idx]; ++p) coeff *= value;
    d[idx] = 0;
    out.add_term(d, coeff);
  }
  return out;
}

template <typename S>
MPoly<S> MPoly<S>::substitute(IndexSet vars, std::span<const S> values) const {
  MPoly out = *this;
  for (int k : vars.elements()) out = out.substitute(k, values[static_cast<std::size_t>(k)]);
  return out;
}

template <typename S>
MPoly<S> MPoly<S>::rename(int new_nvars, std::span<const int> target) const {
  MPoly out(new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponents d{};
    for (int k = 0; k < nvars_; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      if (e[idx] == 0) continue;
      if (target[idx] < 0 || target[idx] >= new_nvars) throw PreconditionError("MPoly::rename: target out of range");
      d[static_cast<std::size_t>(target[idx])] = static_cast<std::uint8_t>(d[static_cast<std::size_t>(target[idx])] + e[idx]);
    }
    out.add_term(d, c);
  }
  return out;
}

template <typename S>
std::string MPoly<S>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const CoefficientText ct = coefficient_text(c);
    if (first) {
      if (ct.negative) out += '-';
    } else {
      out += ct.negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (int k = 0; k < nvars_; ++k) {
      const int p = e[static_cast<std::size_t>(k)];
      if (p == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += 'x' + std::to_string(k + 1);
      if (p > 1) mono += '^' + std::to_string(p);
    }
    if (mono.empty()) {
      out += ct.unit ? "1" : ct.magnitude;
    } else if (ct.unit) {
      out += mono;
    } else {
      out += ct.magnitude + '*' + mono;
    }
  }
  return out;
}

template <typename S>
void MPoly<S>::check_compatible(const MPoly& o, const char* what) const {
  if (nvars_ != o.nvars_) {
    throw PreconditionError(std::string(what) + ": polynomials in " + std::to_string(nvars_) + " and " +
                            std::to_string(o.nvars_) + " variables");
  }
}

template <typename S>
MPoly<S> MPoly<S>::operator-() const {
  MPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

template <typename S>
MPoly<S>& MPoly<S>::operator+=(const MPoly& o) {
  check_compatible(o, "MPoly +");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

template <typename S>
MPoly<S>& MPoly<S>::operator-=(const MPoly& o) {
  check_compatible(o, "MPoly -");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

template <typename S>
MPoly<S>& MPoly<S>::operator*=(const S& c) {
  if (pmfiber::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

template <typename S>
MPoly<S> MPoly<S>::multiply(const MPoly& a, const MPoly& b) {
  a.check_compatible(b, "MPoly *");
  MPoly out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = static_cast<std::uint8_t>(ea[k] + eb[k]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

template <typename S>
MPoly<S> rayleigh_difference(const MPoly<S>& f, int i, int j) {
  if (i == j) throw PreconditionError("rayleigh_difference: indices must differ");
  if (f.degree_in(i) > 1 || f.degree_in(j) > 1) {
    throw PreconditionError("rayleigh_difference: degree > 1 in x" + std::to_string(i + 1) + " or x" +
                            std::to_string(j + 1));
  }
  const MPoly<S> fi = f.derivative(i);
  const MPoly<S> fj = f.derivative(j);
  return fi * fj - f * fi.derivative(j);
}

template <typename S>
MPoly<S> affine_resultant(const MPoly<S>& g, const MPoly<S>& h, int k) {
  if (g.degree_in(k) > 1 || h.degree_in(k) > 1) {
    throw PreconditionError("affine_resultant: degree > 1 in x" + std::to_string(k + 1));
  }
  return g.substitute(k, S(0)) * h.derivative(k) - h.substitute(k, S(0)) * g.derivative(k);
}

template <typename S>
MPoly<S> exact_divide(const MPoly<S>& p, const MPoly<S>& q) {
  if (q.is_zero()) throw PreconditionError("exact_divide: division by the zero polynomial");
  if (p.nvars() != q.nvars()) throw PreconditionError("exact_divide: variable count mismatch");
  const auto& [lead_e, lead_c] = *q.terms().begin();
  MPoly<S> quotient(p.nvars());
  MPoly<S> rest = p;
  while (!rest.is_zero()) {
    const auto& [e, c] = *rest.terms().begin();
    Exponents shift{};
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] < lead_e[k]) throw InexactDivisionError("exact_divide: nonzero remainder");
      shift[k] = static_cast<std::uint8_t>(e[k] - lead_e[k]);
    }
    MPoly<S> step(p.nvars());
    step.add_term(shift, c / lead_c);
    quotient += step;
    rest -= step * q;
  }
  return quotient;
}

template <typename S>
S coefficient_of(const MPoly<S>& p, IndexSet s) {
  if (!p.is_multiaffine()) throw PreconditionError("coefficient_of: polynomial is not multiaffine");
  return p.coefficient(exponents_of(s));
}

template <typename S>
std::optional<S> constant_ratio(const MPoly<S>& p, const MPoly<S>& q) {
  if (p.is_zero() || q.is_zero() || p.nvars() != q.nvars()) return std::nullopt;
  if (p.term_count() != q.term_count()) return std::nullopt;
  const S ratio = p.leading_coefficient() / q.leading_coefficient();
  if (!(q * ratio == p)) return std::nullopt;
  return ratio;
}

#define PMFIBER_INSTANTIATE(S)                                                     \
  template class MPoly<S>;                                                         \
  template MPoly<S> rayleigh_difference<S>(const MPoly<S>&, int, int);             \
  template MPoly<S> affine_resultant<S>(const MPoly<S>&, const MPoly<S>&, int);    \
  template MPoly<S> exact_divide<S>(const MPoly<S>&, const MPoly<S>&);             \
  template S coefficient_of<S>(const MPoly<S>&, IndexSet);                         \
  template std::optional<S> constant_ratio<S>(const MPoly<S>&, const MPoly<S>&);

PMFIBER_INSTANTIATE(Rational)
PMFIBER_INSTANTIATE(Gaussian)

#undef PMFIBER_INSTANTIATE

}  // namespace pmfiber
