#pragma once

#include "bpchain/chain_complex.hpp"
#include "bpchain/linear.hpp"
#include "bpchain/options.hpp"
#include "bpchain/parallel.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace bpchain {

/// Degreewise homology groups, optionally split by odd count.
struct HomologyTable {
  unsigned long p = 0;
  std::size_t n = 0;
  int degree_bound = 0;
  std::string model = "bp";
  int min_degree = 1;
  int max_degree = 0;
  std::map<int, FinitePGroup> total;
  std::map<std::pair<int, int>, FinitePGroup> bigraded;  // (degree, odd_count)

  FinitePGroup at(int d) const {
    auto it = total.find(d);
    if (it == total.end()) throw Error("HomologyTable: degree " + std::to_string(d) + " not computed");
    return it->second;
  }
  FinitePGroup at(int d, int k) const {
    auto it = bigraded.find({d, k});
    return it == bigraded.end() ? FinitePGroup() : it->second;
  }

  /// One row per nonzero (degree, odd_count) piece; a degree with trivial
  /// homology gets a single row at odd_count 0 with no exponents.
  nlohmann::json to_json() const {
    nlohmann::json j;
    j["p"] = p;
    j["n"] = n;
    j["degree_bound"] = degree_bound;
    j["model"] = model;
    j["valid_degrees"] = {min_degree, max_degree};
    j["rows"] = nlohmann::json::array();
    for (int d = min_degree; d <= max_degree; ++d) {
      bool any = false;
      for (int k = 0; k <= static_cast<int>(n); ++k) {
        const FinitePGroup g = at(d, k);
        if (g.is_trivial()) continue;
        j["rows"].push_back(row(d, k, g));
        any = true;
      }
      if (!any) j["rows"].push_back(row(d, 0, FinitePGroup()));
    }
    return j;
  }

  static HomologyTable from_json(const nlohmann::json& j) {
    try {
      HomologyTable t;
      t.p = j.at("p").get<unsigned long>();
      t.n = j.at("n").get<std::size_t>();
      t.degree_bound = j.at("degree_bound").get<int>();
      t.model = j.at("model").get<std::string>();
      t.min_degree = j.at("valid_degrees").at(0).get<int>();
      t.max_degree = j.at("valid_degrees").at(1).get<int>();
      for (int d = t.min_degree; d <= t.max_degree; ++d) t.total[d] = FinitePGroup();
      for (const auto& r : j.at("rows")) {
        const int d = r.at("degree").get<int>();
        const int k = r.at("odd_count").get<int>();
        if (d < t.min_degree || d > t.max_degree) throw Error("HomologyTable: row outside window");
        FinitePGroup g(r.at("exponents").get<std::vector<int>>(), r.value("free_rank", std::size_t{0}));
        if (!g.is_trivial()) t.bigraded[{d, k}] = g;
        t.total[d] += g;
      }
      return t;
    } catch (const nlohmann::json::exception& ex) {
      throw Error(std::string("HomologyTable: malformed document: ") + ex.what());
    }
  }

  friend bool operator==(const HomologyTable&, const HomologyTable&) = default;

 private:
  static nlohmann::json row(int d, int k, const FinitePGroup& g) {
    nlohmann::json r{{"degree", d}, {"odd_count", k}, {"exponents", g.exponents()}};
    if (g.free_rank() != 0) r["free_rank"] = g.free_rank();
    return r;
  }
};

/// Homology of a DegreewiseComplex with retained cycle data, valid in
/// degrees at most D - 1.
class ChainHomology {
 public:
  ChainHomology(const DegreewiseComplex& cx, int max_degree = -1, ComputeOptions options = {})
      : cx_(&cx), options_(options) {
    max_degree_ = max_degree < 0 ? cx.degree_bound() - 1 : max_degree;
    if (max_degree_ > cx.degree_bound() - 1)
      throw Error("homology requested through degree " + std::to_string(max_degree_) +
                  " but the complex only supports degrees <= " +
                  std::to_string(cx.degree_bound() - 1));
    if (max_degree_ < 0) throw Error("homology: empty degree window");
    build_permutations();
    groups_.resize(static_cast<std::size_t>(max_degree_) + 1);
    parallel_for(groups_.size(), [&](std::size_t d) {
      const int deg = static_cast<int>(d);
      groups_[d] = std::make_unique<Subquotient>(permuted_boundary(deg), permuted_boundary(deg + 1),
                                                 cx.prime(), options_.rule);
    }, options_.workers);
  }

  const DegreewiseComplex& complex() const { return *cx_; }
  int max_degree() const { return max_degree_; }

  const Subquotient& at(int d) const {
    if (d < 0 || d > max_degree_)
      throw Error("homology degree " + std::to_string(d) + " outside the valid window 0.." +
                  std::to_string(max_degree_));
    return *groups_[static_cast<std::size_t>(d)];
  }

  FinitePGroup group(int d) const { return at(d).group(); }

  bool is_cycle(const Vector& z, int d) const { return at(d).is_cycle(permute(z, d)); }

  ClassCoordinates coordinates(const Vector& z, int d) const {
    if (!is_cycle(z, d)) throw Error("homology: vector is not a cycle");
    return at(d).coordinates(permute(z, d));
  }

  bool is_zero_in_homology(const Vector& z, int d) const { return coordinates(z, d).is_zero(); }

  /// Cycles representing the torsion generators of H_d, in the complex's basis.
  std::vector<Vector> torsion_generators(int d) const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < at(d).torsion_summands(); ++i)
      out.push_back(unpermute(at(d).torsion_representative(i), d));
    return out;
  }

  /// Images of the torsion generators of H_d under multiplication by v_j
  /// (j = 0 means the scalar p), in the coordinates of H_{d + deg v_j}.
  std::vector<ClassCoordinates> induced_multiplication(int d, std::size_t j) const {
    const SparseMatrix m = multiplication_matrix(d, j);
    const int target = d + (j == 0 ? 0 : cx_->generators().generator_degree(j));
    if (target > max_degree_)
      throw Error("induced_multiplication: degree " + std::to_string(target) +
                  " lies beyond the homology window");
    std::vector<ClassCoordinates> out;
    for (const auto& z : torsion_generators(d)) out.push_back(coordinates(m.apply(z), target));
    return out;
  }

  SparseMatrix multiplication_matrix(int d, std::size_t j) const {
    if (j == 0) return cx_->multiplication(d, cx_->generators().one(), cx_->prime().value());
    if (j > cx_->generators().size()) throw Error("induced_multiplication: v_j beyond the bound");
    return cx_->multiplication(d, cx_->generators().generator(j));
  }

  HomologyTable table() const {
    HomologyTable t;
    t.p = cx_->prime().value();
    t.n = cx_->tensor_length();
    t.degree_bound = cx_->degree_bound();
    t.model = cx_->pseries().scheme() == "singular" ? "singular" : "bp";
    t.max_degree = max_degree_;
    for (int d = t.min_degree; d <= max_degree_; ++d) t.total[d] = group(d);
    t.bigraded = bigraded_groups();
    return t;
  }

  /// Splits every degree by odd count. Because the boundary raises the odd
  /// count by one, the subquotient of each stratum can be computed from the
  /// corresponding blocks. Fails hard if the pieces do not sum to the total.
  std::map<std::pair<int, int>, FinitePGroup> bigraded_groups() const {
    const int n = static_cast<int>(cx_->tensor_length());
    std::vector<std::pair<int, int>> cells;
    for (int d = 1; d <= max_degree_; ++d)
      for (int k = 0; k <= n; ++k) cells.emplace_back(d, k);
    std::vector<FinitePGroup> pieces(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
      pieces[i] = stratum_group(cells[i].first, cells[i].second);
    }, options_.workers);
    std::map<std::pair<int, int>, FinitePGroup> out;
    std::map<int, FinitePGroup> sums;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      sums[cells[i].first] += pieces[i];
      if (!pieces[i].is_trivial()) out[cells[i]] = pieces[i];
    }
    for (const auto& [d, g] : sums)
      if (g != group(d)) throw Error("bigraded_homology: strata do not sum to degree " + std::to_string(d));
    return out;
  }

  FinitePGroup stratum_group(int d, int k) const {
    const auto cols = cx_->stratum(d, k);
    const auto out_rows = d >= 1 ? cx_->stratum(d - 1, k + 1) : std::vector<std::size_t>{};
    const auto in_cols = cx_->stratum(d + 1, k - 1);
    const SparseMatrix b = cx_->boundary(d).select_rows(out_rows).select_columns(cols);
    const SparseMatrix a = cx_->boundary(d + 1).select_rows(cols).select_columns(in_cols);
    return Subquotient(b, a, cx_->prime(), options_.rule).group();
  }

 private:
  void build_permutations() {
    if (!options_.shuffle_seed) return;
    std::mt19937_64 rng(*options_.shuffle_seed);
    for (int d = 0; d <= max_degree_ + 1; ++d) {
      std::vector<std::size_t> perm(cx_->rank(d));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      perms_.push_back(std::move(perm));
    }
  }

  // Position of original basis element i after shuffling is perms_[d][i].
  SparseMatrix permuted_boundary(int d) const {
    const SparseMatrix& b = cx_->boundary(d);
    if (!options_.shuffle_seed) return b;
    SparseMatrix out(b.rows(), b.cols());
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (const auto& [c, v] : b.row(r))
        out.set(perms_[static_cast<std::size_t>(d - 1)][r], perms_[static_cast<std::size_t>(d)][c], v);
    return out;
  }

  Vector permute(const Vector& z, int d) const {
    if (z.size() != cx_->rank(d)) throw Error("homology: vector length does not match degree");
    if (!options_.shuffle_seed) return z;
    Vector out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[perms_[static_cast<std::size_t>(d)][i]] = z[i];
    return out;
  }

  Vector unpermute(const Vector& z, int d) const {
    if (!options_.shuffle_seed) return z;
    Vector out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[perms_[static_cast<std::size_t>(d)][i]];
    return out;
  }

  const DegreewiseComplex* cx_;
  ComputeOptions options_;
  int max_degree_ = 0;
  std::vector<std::vector<std::size_t>> perms_;
  std::vector<std::unique_ptr<Subquotient>> groups_;
};

inline HomologyTable homology_table(const DegreewiseComplex& cx, ComputeOptions options = {}) {
  return ChainHomology(cx, -1, options).table();
}

inline std::map<std::pair<int, int>, FinitePGroup> bigraded_homology(const DegreewiseComplex& cx,
                                                                      ComputeOptions options = {}) {
  return ChainHomology(cx, -1, options).bigraded_groups();
}

}  // namespace bpchain
