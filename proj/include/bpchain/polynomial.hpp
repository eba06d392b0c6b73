#pragma once

#include "bpchain/generators.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>

namespace bpchain {

/// Homogeneous element of Q[v_1, v_2, ...] truncated at a GeneratorTable.
/// Coefficients are full rationals so that logarithm coefficients fit; the
/// BP_* elements proper are the p-integral ones.
class GradedPolynomial {
 public:
  using Terms = std::map<Exponents, PLocalScalar>;

  GradedPolynomial() = default;
  explicit GradedPolynomial(int degree) : degree_(degree) {}

  static GradedPolynomial scalar(const GeneratorTable& t, const PLocalScalar& c) {
    GradedPolynomial out(0);
    out.add_term(t.one(), c);
    return out;
  }
  static GradedPolynomial monomial(const GeneratorTable& t, const Exponents& e,
                                   const PLocalScalar& c = 1) {
    GradedPolynomial out(t.degree(e));
    out.add_term(e, c);
    return out;
  }

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  PLocalScalar coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? PLocalScalar(0) : it->second;
  }

  void add_term(const Exponents& e, const PLocalScalar& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  GradedPolynomial& operator+=(const GradedPolynomial& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) degree_ = o.degree_;
    if (o.degree_ != degree_) throw Error("adding polynomials of different degrees");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  GradedPolynomial& operator-=(const GradedPolynomial& o) { return *this += o * PLocalScalar(-1); }

  friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) {
    return a += b;
  }
  friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) {
    return a -= b;
  }
  friend GradedPolynomial operator*(const GradedPolynomial& a, const PLocalScalar& c) {
    GradedPolynomial out(a.degree_);
    if (sgn(c) == 0) return out;
    for (const auto& [e, x] : a.terms_) out.terms_.emplace(e, x * c);
    return out;
  }

  /// Zero polynomials compare equal regardless of their nominal degree.
  friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Minimum p-valuation among the coefficients (infinite for zero).
  int min_valuation(Prime p) const {
    int v = kInfiniteValuation;
    for (const auto& [e, c] : terms_) v = std::min(v, valuation(c, p));
    return v;
  }

 private:
  int degree_ = 0;
  Terms terms_;
};

/// Product in the truncated ring; exceeding the table's bound is an error.
inline GradedPolynomial multiply(const GeneratorTable& t, const GradedPolynomial& a,
                                 const GradedPolynomial& b) {
  if (a.degree() + b.degree() > t.degree_bound())
    throw Error("multiply: product degree exceeds the bound");
  GradedPolynomial out(a.degree() + b.degree());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

/// Image over F_p of a polynomial modulo the ideal (p, v_1, ..., v_{m-1}):
/// monomials divisible by some v_j with j < m are dropped and coefficients
/// are reduced mod p.
using ReducedPolynomial = std::map<Exponents, unsigned long>;

inline ReducedPolynomial reduce_mod_ideal(const GradedPolynomial& a, std::size_t m, Prime p) {
  ReducedPolynomial out;
  for (const auto& [e, c] : a.terms()) {
    bool killed = false;
    for (std::size_t j = 1; j < m && j <= e.size(); ++j)
      if (e[j - 1] > 0) killed = true;
    if (killed) continue;
    unsigned long r = mod_p(c, p);
    if (r != 0) out[e] = r;
  }
  return out;
}

inline std::string render(const GeneratorTable& t, const GradedPolynomial& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Descending exponent order matches monomial_basis.
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool unit_monomial = t.render(e) == "1";
    std::string coeff = c.get_str();
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    if (!first && sgn(c) < 0) coeff = PLocalScalar(-c).get_str();
    if (unit_monomial)
      os << coeff;
    else if (coeff == "1")
      os << t.render(e);
    else if (coeff == "-1")
      os << '-' << t.render(e);
    else
      os << coeff << '*' << t.render(e);
    first = false;
  }
  return os.str();
}

}  // namespace bpchain
