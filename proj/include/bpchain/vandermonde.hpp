#pragma once

#include "bpchain/cohomology.hpp"
#include "bpchain/parallel.hpp"
#include "bpchain/report.hpp"

#include <random>
#include <string>
#include <vector>

namespace bpchain {

using ModPMatrix = std::vector<std::vector<unsigned long>>;

inline unsigned long inverse_mod(unsigned long a, unsigned long p) {
  unsigned long r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline std::size_t rank_mod_p(ModPMatrix m, unsigned long p) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const unsigned long inv = inverse_mod(m[rank][c], p);
    for (auto& x : m[rank]) x = x * inv % p;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const unsigned long f = m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] = (m[r][j] + (p - f) * m[rank][j]) % p;
    }
    ++rank;
  }
  return rank;
}

inline ModPMatrix transpose(const ModPMatrix& m, std::size_t cols) {
  ModPMatrix t(cols, std::vector<unsigned long>(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) t[c][r] = m[r][c];
  return t;
}

/// All vectors in {0..p-1}^k in lexicographic order.
inline std::vector<std::vector<unsigned long>> coefficient_vectors(unsigned long p, std::size_t k) {
  std::vector<std::vector<unsigned long>> out{{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<unsigned long>> next;
    for (const auto& v : out)
      for (unsigned long x = 0; x < p; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

namespace detail {

inline void exponent_vectors(std::size_t k, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == k) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int i = total; i >= 0; --i) {
    cur.push_back(i);
    exponent_vectors(k, total - i, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> exponent_vectors(std::size_t k, int total) {
  std::vector<std::vector<int>> out;
  if (total < 0) return out;
  std::vector<int> cur;
  exponent_vectors(k, total, cur, out);
  return out;
}

inline CohomologyElement linear_form(const CohomologyRing& r, const std::vector<unsigned long>& lambda) {
  CohomologyElement y(r, 2);
  for (std::size_t i = 0; i < lambda.size(); ++i)
    y += CohomologyElement::t(r, i + 1).scaled(static_cast<long>(lambda[i]));
  return y;
}

}  // namespace detail

struct RankCell {
  int degree = 0;
  std::size_t target = 0;  // dim (H^k (x) M_k) in this degree
  std::size_t rank = 0;
  std::size_t rank_transpose = 0;
};

struct VandermondeReport {
  unsigned long p = 0;
  std::size_t k = 0;
  int window = 0;
  bool include_top_power = false;
  std::vector<RankCell> cells;
  std::optional<bool> determinant_matches;  // unset when the matrix is too large to expand
  bool determinant_nonzero = false;

  bool pass() const {
    bool tested = false;
    for (const auto& c : cells) {
      if (c.rank != c.target || c.rank_transpose != c.target) return false;
      tested = tested || c.target > 0;
    }
    if (determinant_matches && !*determinant_matches) return false;
    return tested;
  }

  VerificationReport to_report() const {
    VerificationReport r;
    r.name = "vandermonde";
    r.parameters = {{"p", p}, {"k", k}, {"window", window}};
    if (include_top_power) r.parameters["negative_control"] = "nu ranges up to p^k";
    r.min_degree = 0;
    r.max_degree = window;
    for (const auto& c : cells) {
      const FinitePGroup lhs(std::vector<int>(c.rank, 1)), rhs(std::vector<int>(c.target, 1));
      const bool ok = c.rank == c.target && c.rank_transpose == c.target;
      r.cells.push_back({c.degree, std::nullopt, "rank", lhs, rhs,
                         c.target == 0 ? Verdict::vacuous : (ok ? Verdict::pass : Verdict::fail),
                         "rank " + std::to_string(c.rank) + " / transpose " + std::to_string(c.rank_transpose) +
                             " of target " + std::to_string(c.target)});
    }
    if (determinant_matches)
      r.cells.push_back({0, std::nullopt, "determinant", {}, {}, *determinant_matches ? Verdict::pass : Verdict::fail,
                         *determinant_matches ? "Laplace expansion equals the product formula up to sign"
                                              : "Laplace expansion differs from the product formula"});
    else
      r.notes.push_back("determinant not expanded: matrix too large");
    r.notes.push_back("ranks are over F_p; a cell passes when the dual map is injective and its transpose surjective");
    return r;
  }
};

/// Determinant of the Vandermonde matrix X with rows (1, x, ..., x^{p^k - 1}),
/// x = lambda . t, by Laplace expansion along rows over column subsets.
inline CohomologyElement vandermonde_determinant(Prime p, std::size_t k) {
  const CohomologyRing r(p, k);
  const auto rows = coefficient_vectors(p.value(), k);
  const std::size_t n = rows.size();
  if (n > 20) throw Error("vandermonde_determinant: matrix too large to expand");
  std::vector<std::vector<CohomologyElement>> x;
  for (const auto& l : rows) {
    std::vector<CohomologyElement> row;
    const CohomologyElement y = detail::linear_form(r, l);
    for (std::size_t j = 0; j < n; ++j) row.push_back(y.power(static_cast<unsigned>(j)));
    x.push_back(std::move(row));
  }
  // minors[S] = det of rows 0..|S|-1 against the columns in S.
  std::vector<std::optional<CohomologyElement>> minors(std::size_t{1} << n);
  minors[0] = CohomologyElement::one(r);
  for (std::size_t s = 1; s < minors.size(); ++s) {
    const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(s)) - 1;
    int deg = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (s >> j & 1) deg += 2 * static_cast<int>(j);
    CohomologyElement acc(r, deg);
    int position = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(s >> j & 1)) continue;
      const CohomologyElement term = x[row][j] * *minors[s & ~(std::size_t{1} << j)];
      acc += (row - static_cast<std::size_t>(position)) % 2 ? -term : term;
      ++position;
    }
    minors[s] = acc;
  }
  return *minors.back();
}

/// The closed form: product over lambda < mu (lexicographic) of (lambda - mu) . t.
inline CohomologyElement vandermonde_product_formula(Prime p, std::size_t k) {
  const CohomologyRing r(p, k);
  const auto rows = coefficient_vectors(p.value(), k);
  CohomologyElement out = CohomologyElement::one(r);
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      std::vector<unsigned long> diff(k);
      for (std::size_t i = 0; i < k; ++i) diff[i] = (rows[a][i] + p.value() - rows[b][i]) % p.value();
      out = out * detail::linear_form(r, diff);
    }
  return out;
}

/// The dual form of the surjectivity statement: in each total degree D the map
///   (t^M s_1...s_k) t^nu  |->  ((t^M s_1...s_k) (lambda . t)^nu)_{lambda != 0},
/// for 0 < nu < p^k, is injective over F_p. Each image is computed with the
/// pullback along phi_lambda. Must have odd p.
inline VandermondeReport vandermonde_surjectivity(Prime p, std::size_t k, int window = -1,
                                                  bool include_top_power = false, unsigned workers = 0) {
  if (p.value() == 2) throw Error("vandermonde_surjectivity: requires odd p");
  if (k < 1) throw Error("vandermonde_surjectivity: k must be at least 1");
  unsigned long pk = 1;
  for (std::size_t i = 0; i < k; ++i) pk *= p.value();
  VandermondeReport rep;
  rep.p = p.value();
  rep.k = k;
  rep.window = window >= 0 ? window : static_cast<int>(2 * pk) + (include_top_power ? 2 : 0);
  rep.include_top_power = include_top_power;

  const unsigned long top = include_top_power ? pk : pk - 1;
  std::vector<AlgebraMapSpec> specs;
  for (const auto& l : coefficient_vectors(p.value(), k)) {
    if (std::all_of(l.begin(), l.end(), [](unsigned long x) { return x == 0; })) continue;
    specs.push_back({k, {k}, {l}});
  }
  std::vector<RingMap> maps;
  for (const auto& s : specs) maps.push_back(pullback_map(p, s));
  const CohomologyRing big(p, k + 1), small(p, k);
  CohomologyElement all_s = CohomologyElement::one(big);
  for (std::size_t i = 1; i <= k; ++i) all_s = all_s * CohomologyElement::s(big, i);

  rep.cells.resize(static_cast<std::size_t>(rep.window) + 1);
  parallel_for(rep.cells.size(), [&](std::size_t di) {
    const int d = static_cast<int>(di);
    RankCell cell;
    cell.degree = d;
    // rows: (lambda, M') with 2|M'| + k = d; columns: (M, nu) with 2|M| + k + 2 nu = d.
    std::vector<std::vector<int>> targets;
    if ((d - static_cast<int>(k)) % 2 == 0) targets = detail::exponent_vectors(k, (d - static_cast<int>(k)) / 2);
    std::map<std::vector<int>, std::size_t> row_of;
    for (std::size_t i = 0; i < targets.size(); ++i) row_of[targets[i]] = i;
    std::vector<std::vector<unsigned long>> columns;
    for (unsigned long nu = 1; nu <= top; ++nu) {
      const int rest = d - static_cast<int>(k) - 2 * static_cast<int>(nu);
      if (rest < 0 || rest % 2 != 0) continue;
      for (const auto& m : detail::exponent_vectors(k, rest / 2)) {
        CohomologyMonomial mono{std::vector<int>(k + 1, 0), std::vector<int>(k + 1, 0)};
        for (std::size_t i = 0; i < k; ++i) mono.t[i] = m[i];
        CohomologyElement x(big, rest);
        x.add_term(mono, 1);
        x = x * all_s * CohomologyElement::t(big, k + 1).power(static_cast<unsigned>(nu));
        std::vector<unsigned long> col(maps.size() * targets.size(), 0);
        for (std::size_t l = 0; l < maps.size(); ++l) {
          const CohomologyElement y = maps[l](x);
          for (const auto& [ym, c] : y.terms()) col[l * targets.size() + row_of.at(ym.t)] = c;
        }
        columns.push_back(std::move(col));
      }
    }
    cell.target = columns.size();
    if (!columns.empty()) {
      cell.rank = rank_mod_p(columns, p.value());  // rows of this matrix are the columns
      cell.rank_transpose = rank_mod_p(transpose(columns, columns[0].size()), p.value());
    }
    rep.cells[di] = cell;
  }, workers);

  if (pk <= 16) {
    const CohomologyElement det = vandermonde_determinant(p, k);
    const CohomologyElement formula = vandermonde_product_formula(p, k);
    rep.determinant_nonzero = !det.is_zero();
    rep.determinant_matches = rep.determinant_nonzero && (det == formula || det == -formula);
  }
  return rep;
}

/// Products of n degree-one classes in F_p[t] (x) Lambda(s_1..s_k). Degree one
/// is spanned by the s_i, so every n-fold product should vanish when n > k.
struct StretchReport {
  unsigned long p = 0;
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t basis_products = 0;
  std::size_t random_products = 0;
  std::optional<std::string> witness;  // a nonvanishing product, if any

  bool vanishes() const { return !witness.has_value(); }

  VerificationReport to_report() const {
    VerificationReport r;
    r.name = "stretch";
    r.parameters = {{"p", p}, {"k", k}, {"n", n}};
    r.min_degree = static_cast<int>(n);
    r.max_degree = static_cast<int>(n);
    r.cells.push_back({static_cast<int>(n), std::nullopt, "vanishing", {}, {},
                       vanishes() ? Verdict::pass : Verdict::fail,
                       vanishes() ? std::to_string(basis_products) + " basis and " + std::to_string(random_products) +
                                        " random products vanish"
                                  : "nonzero product: " + *witness});
    return r;
  }
};

inline StretchReport stretch_check(Prime p, std::size_t k, std::size_t n, std::size_t random_trials = 64,
                                   std::uint64_t seed = 1) {
  if (p.value() == 2) throw Error("stretch_check: requires odd p");
  if (k < 1 || n < 1) throw Error("stretch_check: k and n must be positive");
  const CohomologyRing r(p, k);
  StretchReport rep{p.value(), k, n, 0, 0, std::nullopt};
  std::vector<std::size_t> idx(n, 1);
  for (;;) {
    CohomologyElement prod = CohomologyElement::one(r);
    std::string name;
    for (std::size_t i : idx) {
      prod = prod * CohomologyElement::s(r, i);
      name += (name.empty() ? "s" : "*s") + std::to_string(i);
    }
    ++rep.basis_products;
    if (!prod.is_zero() && !rep.witness) rep.witness = name + " = " + prod.render();
    std::size_t pos = n;
    while (pos > 0 && idx[pos - 1] == k) idx[--pos] = 1;
    if (pos == 0) break;
    ++idx[pos - 1];
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned long> coeff(0, p.value() - 1);
  for (std::size_t trial = 0; trial < random_trials; ++trial) {
    CohomologyElement prod = CohomologyElement::one(r);
    for (std::size_t f = 0; f < n; ++f) {
      CohomologyElement x(r, 1);
      for (std::size_t i = 1; i <= k; ++i) x += CohomologyElement::s(r, i).scaled(static_cast<long>(coeff(rng)));
      prod = prod * x;
    }
    ++rep.random_products;
    if (!prod.is_zero() && !rep.witness) rep.witness = "random product = " + prod.render();
  }
  return rep;
}

/// The p = 2 example: the diagonal L^3 -> (Z/2)^3 and the toral map from
/// (RP^1)^3 both detect s_1 s_2 s_3 in mod-2 cohomology.
struct P2Report {
  std::string diagonal;        // Delta^*(s_1 s_2 s_3) in F_2[s]/(s^4)
  std::string diagonal_pair;   // Delta^*(s_1 s_2)
  std::string toral;           // beta^*(s_1 s_2 s_3) in (F_2[s]/(s^2))^{(x)3}
  bool diagonal_is_s_cubed = false;
  bool toral_nonzero = false;

  bool pass() const { return diagonal_is_s_cubed && toral_nonzero; }

  VerificationReport to_report() const {
    VerificationReport r;
    r.name = "p2-example";
    r.parameters = {{"p", 2}};
    r.min_degree = 2;
    r.max_degree = 3;
    r.cells.push_back({3, std::nullopt, "diagonal", {}, {}, diagonal_is_s_cubed ? Verdict::pass : Verdict::fail,
                       "Delta^*(s1*s2*s3) = " + diagonal});
    r.cells.push_back({3, std::nullopt, "toral", {}, {}, toral_nonzero ? Verdict::pass : Verdict::fail,
                       "beta^*(s1*s2*s3) = " + toral});
    r.cells.push_back({2, std::nullopt, "diagonal", {}, {}, diagonal_pair == "s^2" ? Verdict::pass : Verdict::fail,
                       "Delta^*(s1*s2) = " + diagonal_pair});
    r.notes.push_back("both maps induce the canonical map in degree 3, so the inessential class equals the toral class");
    return r;
  }
};

inline P2Report p2_counterexample() {
  const Prime two(2);
  const CohomologyRing source(two, 3);
  const CohomologyRing lens = CohomologyRing(two, 1).truncated_s({4});
  const CohomologyRing torus = CohomologyRing(two, 3).truncated_s({2, 2, 2});

  RingMap diagonal(source, lens), toral(source, torus);
  for (std::size_t i = 1; i <= 3; ++i) {
    diagonal.set_s(i, CohomologyElement::s(lens, 1));
    toral.set_s(i, CohomologyElement::s(torus, i));
  }
  const auto s1 = CohomologyElement::s(source, 1), s2 = CohomologyElement::s(source, 2),
             s3 = CohomologyElement::s(source, 3);
  const auto d3 = diagonal(s1 * s2 * s3), d2 = diagonal(s1 * s2), b3 = toral(s1 * s2 * s3);
  const auto s = CohomologyElement::s(lens, 1);

  P2Report rep;
  rep.diagonal = d3.render();
  rep.diagonal_pair = d2.render();
  rep.toral = b3.render();
  rep.diagonal_is_s_cubed = !d3.is_zero() && d3 == s.power(3);
  rep.toral_nonzero = !b3.is_zero();
  return rep;
}

}  // namespace bpchain
