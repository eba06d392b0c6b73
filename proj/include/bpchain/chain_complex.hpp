#pragma once

#include "bpchain/pseries.hpp"
#include "bpchain/sparse_matrix.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace bpchain {

/// (d_1, ..., d_n): the generator c_{d_1} (x) ... (x) c_{d_n}.
using TensorGenerator = std::vector<int>;

inline int generator_degree(const TensorGenerator& g) {
  int s = 0;
  for (int d : g) s += d;
  return s;
}

inline int odd_count(const TensorGenerator& g) {
  int k = 0;
  for (int d : g) k += d % 2;
  return k;
}

struct ChainBasisElement {
  Exponents monomial;
  TensorGenerator generator;

  friend bool operator==(const ChainBasisElement&, const ChainBasisElement&) = default;
  friend auto operator<=>(const ChainBasisElement&, const ChainBasisElement&) = default;
};

namespace detail {

inline void tuples_with_sum(std::size_t n, int total, TensorGenerator& cur,
                            std::vector<TensorGenerator>& out) {
  if (cur.size() + 1 == n) {
    if (total >= 1) {
      cur.push_back(total);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  const int remaining_slots = static_cast<int>(n - cur.size() - 1);
  for (int d = 1; d <= total - remaining_slots; ++d) {
    cur.push_back(d);
    tuples_with_sum(n, total - d, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// All n-tuples of positive integers with the given sum, lexicographically.
inline std::vector<TensorGenerator> tensor_generators(std::size_t n, int total) {
  std::vector<TensorGenerator> out;
  if (n == 0 || total < static_cast<int>(n)) return out;
  TensorGenerator cur;
  detail::tuples_with_sum(n, total, cur, out);
  return out;
}

/// The n-fold tensor power of the chain model over BP_*, degreewise up to D.
///
/// Basis of degree d: pairs (M, (d_1..d_n)) with deg M + sum d_j = d, ordered
/// by monomial degree, then monomial_basis order, then tuple lexicographic.
/// boundary(d) maps degree d to degree d-1 (columns are the source basis):
///   c_{2m} -> sum_{i<m} a_i c_{2(m-i)-1},  c_{2m+1} -> 0,
/// extended with the sign (-1)^{d_1+...+d_{j-1}} on slot j.
class DegreewiseComplex {
 public:
  DegreewiseComplex(const PSeriesTable& pseries, std::size_t n, int degree_bound)
      : pseries_(checked(pseries, n, degree_bound).restricted(degree_bound)),
        n_(n),
        bound_(degree_bound),
        bases_(static_cast<std::size_t>(degree_bound) + 1),
        index_(bases_.size()),
        boundaries_(bases_.size()) {
    const GeneratorTable& t = pseries_.generators();
    for (int d = 0; d <= bound_; ++d) {
      auto& basis = bases_[static_cast<std::size_t>(d)];
      for (int md = 0; md <= d; md += 2) {
        const auto gens = tensor_generators(n_, d - md);
        if (gens.empty()) continue;
        for (const auto& m : t.monomial_basis(md))
          for (const auto& g : gens) basis.push_back({m, g});
      }
      for (std::size_t i = 0; i < basis.size(); ++i) index_[static_cast<std::size_t>(d)].emplace(basis[i], i);
    }
    for (int d = 1; d <= bound_; ++d) boundaries_[static_cast<std::size_t>(d)] = assemble_boundary(d);
    boundaries_[0] = SparseMatrix(0, bases_[0].size());
    for (int d = 2; d <= bound_; ++d)
      if (!(boundary(d - 1) * boundary(d)).is_zero())
        throw Error("assemble_complex: boundary squares to a nonzero map in degree " +
                    std::to_string(d));
    for (int d = 1; d <= bound_; ++d) check_stratification(d);
  }

  Prime prime() const { return pseries_.prime(); }
  std::size_t tensor_length() const { return n_; }
  int degree_bound() const { return bound_; }
  const PSeriesTable& pseries() const { return pseries_; }
  const GeneratorTable& generators() const { return pseries_.generators(); }

  const std::vector<ChainBasisElement>& basis(int d) const { return bases_.at(checked_degree(d)); }
  std::size_t rank(int d) const {
    return d < 0 || d > bound_ ? 0 : bases_[static_cast<std::size_t>(d)].size();
  }

  std::optional<std::size_t> index(int d, const ChainBasisElement& e) const {
    const auto& idx = index_.at(checked_degree(d));
    auto it = idx.find(e);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }

  /// Degree d -> degree d-1. boundary(0) is the empty map out of degree 0.
  const SparseMatrix& boundary(int d) const { return boundaries_.at(checked_degree(d)); }

  /// Basis positions in degree d with exactly k odd generators.
  std::vector<std::size_t> stratum(int d, int k) const {
    std::vector<std::size_t> out;
    const auto& b = basis(d);
    for (std::size_t i = 0; i < b.size(); ++i)
      if (odd_count(b[i].generator) == k) out.push_back(i);
    return out;
  }

  /// Multiplication by the monomial `factor` from degree d to d + deg(factor).
  SparseMatrix multiplication(int d, const Exponents& factor, const PLocalScalar& scale = 1) const {
    const int target = d + generators().degree(factor);
    if (target > bound_) throw Error("multiplication: target degree exceeds the bound");
    SparseMatrix m(rank(target), rank(d));
    const auto& src = basis(d);
    for (std::size_t c = 0; c < src.size(); ++c) {
      ChainBasisElement e = src[c];
      for (std::size_t i = 0; i < factor.size(); ++i) e.monomial[i] += factor[i];
      m.set(*index(target, e), c, scale);
    }
    return m;
  }

  /// Cap with t in factor i (1-based): c_{d_i} -> c_{d_i - 2}, zero when d_i <= 2.
  SparseMatrix cap_with_t(int d, std::size_t factor) const {
    if (factor < 1 || factor > n_) throw Error("cap_with_t: factor index out of range");
    SparseMatrix m(d >= 2 ? rank(d - 2) : 0, rank(d));
    const auto& src = basis(d);
    for (std::size_t c = 0; c < src.size(); ++c) {
      ChainBasisElement e = src[c];
      if (e.generator[factor - 1] <= 2) continue;
      e.generator[factor - 1] -= 2;
      m.set(*index(d - 2, e), c, 1);
    }
    return m;
  }

  /// c_1 (x) ... (x) c_1 in degree n.
  Vector toral_cycle() const {
    const int d = static_cast<int>(n_);
    if (d > bound_) throw Error("toral_class: degree bound below n");
    Vector v(rank(d));
    v[*index(d, {generators().one(), TensorGenerator(n_, 1)})] = 1;
    return v;
  }

 private:
  static const PSeriesTable& checked(const PSeriesTable& ps, std::size_t n, int bound) {
    if (n < 1) throw Error("assemble_complex: n must be at least 1");
    if (bound < 0) throw Error("assemble_complex: negative degree bound");
    if (ps.degree_bound() < bound)
      throw Error("assemble_complex: p-series bound " + std::to_string(ps.degree_bound()) +
                  " does not cover degree " + std::to_string(bound));
    return ps;
  }

  std::size_t checked_degree(int d) const {
    if (d < 0 || d > bound_)
      throw Error("degree " + std::to_string(d) + " outside the assembled range 0.." +
                  std::to_string(bound_));
    return static_cast<std::size_t>(d);
  }

  SparseMatrix assemble_boundary(int d) const {
    const auto& src = basis(d);
    SparseMatrix m(rank(d - 1), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      const auto& e = src[c];
      int sign_degree = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        const int dj = e.generator[j];
        if (dj % 2 == 0) {
          const int mm = dj / 2;
          const PLocalScalar sign = sign_degree % 2 == 0 ? 1 : -1;
          for (int i = 0; i < mm; ++i) {
            const auto& ai = pseries_.a(static_cast<std::size_t>(i));
            for (const auto& [ae, ac] : ai.terms()) {
              ChainBasisElement target = e;
              for (std::size_t s = 0; s < ae.size(); ++s) target.monomial[s] += ae[s];
              target.generator[j] = 2 * (mm - i) - 1;
              m.add(*index(d - 1, target), c, sign * ac);
            }
          }
        }
        sign_degree += dj;
      }
    }
    return m;
  }

  void check_stratification(int d) const {
    const SparseMatrix& b = boundary(d);
    const auto& src = basis(d);
    const auto& dst = basis(d - 1);
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (const auto& [c, v] : b.row(r))
        if (odd_count(dst[r].generator) != odd_count(src[c].generator) + 1)
          throw Error("assemble_complex: boundary breaks the odd-count stratification");
  }

  PSeriesTable pseries_;
  std::size_t n_;
  int bound_;
  std::vector<std::vector<ChainBasisElement>> bases_;
  std::vector<std::map<ChainBasisElement, std::size_t>> index_;
  std::vector<SparseMatrix> boundaries_;
};

inline DegreewiseComplex assemble_complex(const PSeriesTable& pseries, std::size_t n, int degree_bound) {
  return DegreewiseComplex(pseries, n, degree_bound);
}

}  // namespace bpchain
