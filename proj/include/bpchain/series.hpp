#pragma once

#include "bpchain/polynomial.hpp"

#include <vector>

namespace bpchain {

/// Truncated power series in x with GradedPolynomial coefficients. A series
/// of weight w is homogeneous of total degree 2w with deg x = 2, so the
/// coefficient of x^j has internal degree 2(j - w).
class RationalSeries {
 public:
  RationalSeries(const GeneratorTable& table, int weight, std::size_t order)
      : table_(&table), weight_(weight), coeffs_(order + 1) {
    for (std::size_t j = 0; j <= order; ++j) coeffs_[j] = GradedPolynomial(coefficient_degree(j));
  }

  /// The series x itself.
  static RationalSeries variable(const GeneratorTable& table, std::size_t order) {
    RationalSeries s(table, 1, order);
    if (order >= 1) s.coeffs_[1] = GradedPolynomial::scalar(table, 1);
    return s;
  }

  int weight() const { return weight_; }
  std::size_t order() const { return coeffs_.size() - 1; }
  const GeneratorTable& table() const { return *table_; }

  int coefficient_degree(std::size_t j) const { return 2 * (static_cast<int>(j) - weight_); }

  const GradedPolynomial& operator[](std::size_t j) const { return coeffs_.at(j); }

  void set(std::size_t j, GradedPolynomial c) {
    if (!c.is_zero() && c.degree() != coefficient_degree(j))
      throw Error("RationalSeries: coefficient breaks homogeneity");
    if (c.is_zero()) c = GradedPolynomial(coefficient_degree(j));
    coeffs_.at(j) = std::move(c);
  }

  RationalSeries& operator+=(const RationalSeries& o) {
    check_compatible(o);
    if (o.weight_ != weight_) throw Error("RationalSeries: adding series of different weight");
    for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    return *this;
  }
  RationalSeries& operator-=(const RationalSeries& o) { return *this += o * PLocalScalar(-1); }
  friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) { return a += b; }
  friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) { return a -= b; }

  friend RationalSeries operator*(const RationalSeries& a, const PLocalScalar& c) {
    RationalSeries out = a;
    for (std::size_t j = 0; j < out.coeffs_.size(); ++j) out.set(j, a.coeffs_[j] * c);
    return out;
  }

  /// Multiplies every coefficient by a fixed polynomial, raising the weight.
  RationalSeries scaled(const GradedPolynomial& c) const {
    if (c.degree() % 2 != 0) throw Error("RationalSeries: odd scaling degree");
    RationalSeries out(*table_, weight_ - c.degree() / 2, order());
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
      if (!coeffs_[j].is_zero() && !c.is_zero()) out.set(j, multiply(*table_, coeffs_[j], c));
    return out;
  }

  friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
    a.check_compatible(b);
    RationalSeries out(*a.table_, a.weight_ + b.weight_, a.order());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < a.coeffs_.size(); ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        out.coeffs_[i + j] += multiply(*a.table_, a.coeffs_[i], b.coeffs_[j]);
      }
    }
    return out;
  }

  RationalSeries power(unsigned k) const {
    RationalSeries result(*table_, 0, order());
    result.coeffs_[0] = GradedPolynomial::scalar(*table_, 1);
    RationalSeries base = *this;
    while (k > 0) {
      if (k & 1u) result = result * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }

  /// f(g) for a weight-1 series f and a weight-1 series g without constant
  /// term.
  RationalSeries compose(const RationalSeries& g) const {
    check_compatible(g);
    if (weight_ != 1 || g.weight_ != 1) throw Error("compose: both series must have weight 1");
    if (!g.coeffs_[0].is_zero()) throw Error("compose: inner series has a constant term");
    RationalSeries out(*table_, 1, order());
    RationalSeries gj = g.power(0);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (j > 0) gj = gj * g;
      if (!coeffs_[j].is_zero()) out += gj.scaled(coeffs_[j]);
    }
    return out;
  }

  friend bool operator==(const RationalSeries& a, const RationalSeries& b) {
    return a.weight_ == b.weight_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_compatible(const RationalSeries& o) const {
    if (o.order() != order()) throw Error("RationalSeries: truncation orders differ");
  }

  const GeneratorTable* table_;
  int weight_;
  std::vector<GradedPolynomial> coeffs_;
};

/// Logarithm coefficients l_0, l_1, ... from the Hazewinkel recursion
/// p * l_n = sum_{i<n} l_i * v_{n-i}^{p^i}, for all n with 2(p^n - 1) <= D.
inline std::vector<GradedPolynomial> compute_logarithm(const GeneratorTable& t) {
  const Prime p = t.prime();
  std::vector<GradedPolynomial> ell{GradedPolynomial::scalar(t, 1)};
  for (std::size_t n = 1; n <= t.size(); ++n) {
    GradedPolynomial sum(t.generator_degree(n));
    Integer pi = 1;
    for (std::size_t i = 0; i < n; ++i) {
      Exponents e = t.one();
      e[n - i - 1] = static_cast<int>(pi.get_si());
      sum += multiply(t, ell[i], GradedPolynomial::monomial(t, e));
      pi *= p.value();
    }
    ell.push_back(sum * PLocalScalar(1, p.value()));
  }
  return ell;
}

/// log(x) = sum_n l_n x^{p^n}, truncated at x^order.
inline RationalSeries log_series(const GeneratorTable& t, const std::vector<GradedPolynomial>& ell,
                                 std::size_t order) {
  RationalSeries s(t, 1, order);
  Integer pn = 1;
  for (const auto& l : ell) {
    if (pn > order) break;
    s.set(pn.get_ui(), l);
    pn *= t.prime().value();
  }
  return s;
}

/// Compositional inverse of log: the unique g with g + sum_{n>=1} l_n g^{p^n} = y,
/// obtained by fixed-point iteration (each pass fixes one more coefficient).
inline RationalSeries exp_series(const GeneratorTable& t, const std::vector<GradedPolynomial>& ell,
                                 std::size_t order) {
  const RationalSeries y = RationalSeries::variable(t, order);
  RationalSeries g = y;
  for (std::size_t pass = 1; pass < order; ++pass) {
    RationalSeries next = y;
    Integer pn = t.prime().value();
    for (std::size_t n = 1; n < ell.size() && pn <= order; ++n, pn *= t.prime().value())
      next -= g.power(static_cast<unsigned>(pn.get_ui())).scaled(ell[n]);
    if (next == g) break;
    g = std::move(next);
  }
  return g;
}

}  // namespace bpchain
