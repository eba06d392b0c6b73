#pragma once

#include "bpchain/linear.hpp"
#include "bpchain/options.hpp"
#include "bpchain/parallel.hpp"
#include "bpchain/pseries.hpp"
#include "bpchain/report.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace bpchain {

/// M * z_{i_1} (x) ... (x) z_{i_k}, of degree deg M + sum (2 i_j + 1).
struct NPowerGenerator {
  Exponents monomial;
  std::vector<int> index;

  friend bool operator==(const NPowerGenerator&, const NPowerGenerator&) = default;
  friend auto operator<=>(const NPowerGenerator&, const NPowerGenerator&) = default;
};

namespace detail {

inline void compositions(std::size_t parts, int total, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int i = 0; i <= total; ++i) {
    cur.push_back(i);
    compositions(parts, total - i, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// The k-fold tensor power of N = BP_*{z_0, z_1, ...} / (sum_{i<=m} a_i z_{m-i})
/// presented degreewise as a cokernel over Z_(p). Relations are the slotwise
/// relations times every monomial. Valid in degrees <= D.
class NPowerPresentation {
 public:
  NPowerPresentation(const PSeriesTable& pseries, std::size_t k, int degree_bound,
                     ComputeOptions options = {})
      : pseries_(checked(pseries, k, degree_bound).restricted(degree_bound)),
        k_(k),
        bound_(degree_bound),
        options_(options),
        gens_(static_cast<std::size_t>(degree_bound) + 1),
        index_(gens_.size()),
        relations_(gens_.size()),
        cokernels_(gens_.size()) {
    std::mt19937_64 rng(options_.shuffle_seed.value_or(0));
    for (int d = 0; d <= bound_; ++d) {
      auto& g = gens_[static_cast<std::size_t>(d)];
      g = enumerate(d);
      if (options_.shuffle_seed) std::shuffle(g.begin(), g.end(), rng);
      for (std::size_t i = 0; i < g.size(); ++i) index_[static_cast<std::size_t>(d)].emplace(g[i], i);
    }
    for (int d = 0; d <= bound_; ++d) {
      relations_[static_cast<std::size_t>(d)] = assemble_relations(d);
      if (options_.shuffle_seed) {
        auto& r = relations_[static_cast<std::size_t>(d)];
        std::vector<std::size_t> perm(r.cols());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        r = r.select_columns(perm);
      }
    }
    parallel_for(gens_.size(), [&](std::size_t d) {
      cokernels_[d] = std::make_unique<Cokernel>(relations_[d], prime(), options_.rule);
    }, options_.workers);
  }

  Prime prime() const { return pseries_.prime(); }
  std::size_t tensor_power() const { return k_; }
  int degree_bound() const { return bound_; }
  const PSeriesTable& pseries() const { return pseries_; }
  const GeneratorTable& coefficients() const { return pseries_.generators(); }

  const std::vector<NPowerGenerator>& generators(int d) const { return gens_.at(checked_degree(d)); }
  std::size_t rank(int d) const {
    return d < 0 || d > bound_ ? 0 : gens_[static_cast<std::size_t>(d)].size();
  }
  std::size_t index(int d, const NPowerGenerator& g) const {
    const auto& idx = index_.at(checked_degree(d));
    auto it = idx.find(g);
    if (it == idx.end()) throw Error("NPowerPresentation: generator not in degree " + std::to_string(d));
    return it->second;
  }

  /// Columns are relations in the degree-d generators.
  const SparseMatrix& relations(int d) const { return relations_.at(checked_degree(d)); }
  const Cokernel& cokernel(int d) const { return *cokernels_.at(checked_degree(d)); }
  FinitePGroup group(int d) const {
    if (d < 0) return {};
    return cokernel(d).group();
  }

  StructureTable table() const {
    StructureTable t;
    t.min_degree = 1;
    t.max_degree = bound_;
    for (int d = 1; d <= bound_; ++d) t.add(d, group(d));
    return t;
  }

  /// Multiplication by a homogeneous polynomial from degree d to d + deg f.
  SparseMatrix multiplication(int d, const GradedPolynomial& f) const {
    const int target = d + f.degree();
    if (target > bound_) throw Error("NPowerPresentation: multiplication leaves the window");
    SparseMatrix m(rank(target), rank(d));
    const auto& src = generators(d);
    for (std::size_t c = 0; c < src.size(); ++c)
      for (const auto& [e, x] : f.terms()) {
        NPowerGenerator g = src[c];
        for (std::size_t s = 0; s < e.size(); ++s) g.monomial[s] += e[s];
        m.add(index(target, g), c, x);
      }
    return m;
  }

  SparseMatrix multiplication_by_generator(int d, std::size_t j) const {
    const GeneratorTable& t = coefficients();
    if (j == 0) return multiplication(d, GradedPolynomial::scalar(t, PLocalScalar(prime().value())));
    if (j > t.size()) throw Error("NPowerPresentation: v_" + std::to_string(j) + " beyond the bound");
    return multiplication(d, GradedPolynomial::monomial(t, t.generator(j), 1));
  }

 private:
  static const PSeriesTable& checked(const PSeriesTable& ps, std::size_t k, int bound) {
    if (k < 1) throw Error("n_power_table: k must be at least 1");
    if (bound < 0) throw Error("n_power_table: negative degree bound");
    if (ps.degree_bound() < bound)
      throw Error("n_power_table: p-series bound " + std::to_string(ps.degree_bound()) +
                  " does not cover degree " + std::to_string(bound));
    return ps;
  }

  std::size_t checked_degree(int d) const {
    if (d < 0 || d > bound_)
      throw Error("degree " + std::to_string(d) + " outside the presented range 0.." +
                  std::to_string(bound_));
    return static_cast<std::size_t>(d);
  }

  std::vector<NPowerGenerator> enumerate(int d) const {
    std::vector<NPowerGenerator> out;
    const int k = static_cast<int>(k_);
    for (int md = 0; md <= d - k; md += 2) {
      const int rest = d - md - k;
      if (rest % 2 != 0) continue;
      std::vector<std::vector<int>> idx;
      std::vector<int> cur;
      detail::compositions(k_, rest / 2, cur, idx);
      for (const auto& m : coefficients().monomial_basis(md))
        for (const auto& i : idx) out.push_back({m, i});
    }
    return out;
  }

  // One relation per generator (M, I) and slot j: M * sum_i a_i z_{I_j - i} in slot j.
  SparseMatrix assemble_relations(int d) const {
    const auto& g = gens_[static_cast<std::size_t>(d)];
    std::vector<NPowerGenerator> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    SparseMatrix r(g.size(), g.size() * k_);
    std::size_t col = 0;
    for (const auto& base : sorted)
      for (std::size_t j = 0; j < k_; ++j, ++col) {
        const int m = base.index[j];
        for (int i = 0; i <= m; ++i)
          for (const auto& [e, c] : pseries_.a(static_cast<std::size_t>(i)).terms()) {
            NPowerGenerator t = base;
            for (std::size_t s = 0; s < e.size(); ++s) t.monomial[s] += e[s];
            t.index[j] = m - i;
            r.add(index(d, t), col, c);
          }
      }
    return r;
  }

  PSeriesTable pseries_;
  std::size_t k_;
  int bound_;
  ComputeOptions options_;
  std::vector<std::vector<NPowerGenerator>> gens_;
  std::vector<std::map<NPowerGenerator, std::size_t>> index_;
  std::vector<SparseMatrix> relations_;
  std::vector<std::unique_ptr<Cokernel>> cokernels_;
};

inline StructureTable n_power_table(const PSeriesTable& pseries, std::size_t k, int degree_bound,
                                    ComputeOptions options = {}) {
  return NPowerPresentation(pseries, k, degree_bound, options).table();
}

/// Free BP_*-module on y_m in degree 2m for 0 < m < p^k. The inclusive flag
/// admits m = p^k as well and exists only as a negative control.
struct LModule {
  std::size_t k = 0;
  std::vector<int> generator_degrees;
};

inline LModule l_module_table(Prime p, std::size_t k, bool inclusive = false) {
  LModule l{k, {}};
  if (k == 0) return l;
  Integer top = 1;
  for (std::size_t i = 0; i < k; ++i) top *= p.value();
  const long last = top.get_si() - (inclusive ? 0 : 1);
  for (long m = 1; m <= last; ++m) l.generator_degrees.push_back(static_cast<int>(2 * m));
  return l;
}

/// (A (x) L)_d for free L: the sum of A_{d - deg y} over the generators y.
inline StructureTable tensor_with_free(const StructureTable& a, const std::vector<int>& shifts,
                                       int max_degree) {
  StructureTable out;
  out.min_degree = a.min_degree;
  out.max_degree = max_degree;
  for (int d = out.min_degree; d <= max_degree; ++d)
    for (int s : shifts) {
      const int src = d - s;
      if (a.covers(src)) out.add(d, a.at(src));
      else if (src > a.max_degree) throw Error("tensor_with_free: degree " + std::to_string(src) + " not covered");
    }
  return out;
}

/// ker(id (x) f_1 : N^k (x) F_1 -> N^k (x) F_0), f_1(y'_m) = sum_{i<m} a_i y_{m-i},
/// with F_0 and F_1 free on generators of degree 2m, m >= 1. The kernel in
/// degree d is Tor in degree d - 1.
class TorComputation {
 public:
  TorComputation(const NPowerPresentation& np, int max_degree) : np_(&np), max_degree_(max_degree) {
    if (max_degree > np.degree_bound())
      throw Error("tor_table: kernel degree " + std::to_string(max_degree) + " beyond the presentation");
  }

  /// Blocks of (N^k (x) F)_d: block m holds (N^k)_{d-2m}.
  std::vector<int> blocks(int d) const {
    std::vector<int> m;
    for (int s = 1; d - 2 * s >= 0; ++s)
      if (np_->rank(d - 2 * s) > 0) m.push_back(s);
    return m;
  }

  InducedKernel kernel(int d, PivotRule rule = PivotRule::lex_first) const {
    const auto ms = blocks(d);
    std::vector<std::size_t> offset{0};
    std::vector<std::size_t> rel_offset{0};
    for (int m : ms) {
      offset.push_back(offset.back() + np_->rank(d - 2 * m));
      rel_offset.push_back(rel_offset.back() + np_->relations(d - 2 * m).cols());
    }
    const std::size_t dim = offset.back();
    SparseMatrix rel(dim, rel_offset.back());
    for (std::size_t b = 0; b < ms.size(); ++b) {
      const SparseMatrix& r = np_->relations(d - 2 * ms[b]);
      for (std::size_t row = 0; row < r.rows(); ++row)
        for (const auto& [c, v] : r.row(row)) rel.set(offset[b] + row, rel_offset[b] + c, v);
    }
    std::map<int, std::size_t> block_of;
    for (std::size_t b = 0; b < ms.size(); ++b) block_of[ms[b]] = b;
    SparseMatrix f(dim, dim);
    for (std::size_t b = 0; b < ms.size(); ++b) {
      const int m = ms[b];
      for (int i = 0; i < m; ++i) {
        const int target_m = m - i;
        auto it = block_of.find(target_m);
        if (it == block_of.end()) continue;
        const SparseMatrix mult = np_->multiplication(d - 2 * m, np_->pseries().a(static_cast<std::size_t>(i)));
        for (std::size_t row = 0; row < mult.rows(); ++row)
          for (const auto& [c, v] : mult.row(row)) f.add(offset[it->second] + row, offset[b] + c, v);
      }
    }
    return induced_kernel(f, rel, rel, np_->prime(), rule);
  }

  StructureTable table(PivotRule rule = PivotRule::lex_first, unsigned workers = 0) const {
    StructureTable t;
    t.min_degree = 0;
    t.max_degree = max_degree_ - 1;
    std::vector<FinitePGroup> groups(static_cast<std::size_t>(max_degree_) + 1);
    parallel_for(groups.size(), [&](std::size_t d) {
      groups[d] = kernel(static_cast<int>(d), rule).group;
    }, workers);
    for (int d = 1; d <= max_degree_; ++d) t.add(d - 1, groups[static_cast<std::size_t>(d)]);
    return t;
  }

 private:
  const NPowerPresentation* np_;
  int max_degree_;
};

/// Tor^{BP_*}_1(N^k, N) indexed by Tor degree 0 .. D - 1.
inline StructureTable tor_table(const PSeriesTable& pseries, std::size_t k, int degree_bound,
                                ComputeOptions options = {}) {
  const NPowerPresentation np(pseries, k, degree_bound, options);
  return TorComputation(np, degree_bound).table(options.rule, options.workers);
}

}  // namespace bpchain
