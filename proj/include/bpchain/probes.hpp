#pragma once

#include "bpchain/homology.hpp"
#include "bpchain/kunneth.hpp"

#include <string>
#include <vector>

namespace bpchain {

namespace detail {

inline Vector unit_vector(std::size_t n, std::size_t i, const PLocalScalar& x = 1) {
  Vector v(n);
  v[i] = x;
  return v;
}

}  // namespace detail

/// ker(u^k) against R N^k with R = (v_k, v_{k+1}, ...), as subgroups of
/// (N^k)_d for 1 <= d <= D. u^k kills every generator with a nontrivial
/// monomial and reduces the rest mod p, so its kernel is spanned by those
/// generators, p times the others, and the relations. R N^k is spanned by the
/// generators whose monomial is divisible by some v_j with j >= k.
inline VerificationReport verify_kernel_lemma(const PSeriesTable& pseries, std::size_t k, int degree_bound,
                                              ComputeOptions options = {}) {
  VerificationReport r;
  r.name = "kernel";
  r.parameters = detail::config_json(pseries.prime(), k, degree_bound, options);
  r.parameters.erase("n");
  r.parameters["k"] = k;
  r.min_degree = 1;
  r.max_degree = degree_bound;
  detail::label_prime(r, pseries.prime());

  const NPowerPresentation np(pseries, k, degree_bound, options);
  const Prime p = np.prime();
  const bool any_r = np.coefficients().size() >= k;
  if (!any_r)
    r.notes.push_back("no v_j with j >= " + std::to_string(k) + " fits below degree " +
                      std::to_string(degree_bound) + "; every cell is vacuous");

  std::vector<ReportCell> cells(static_cast<std::size_t>(degree_bound));
  parallel_for(cells.size(), [&](std::size_t i) {
    const int d = static_cast<int>(i) + 1;
    const auto& gens = np.generators(d);
    const auto rel = np.relations(d).columns();
    std::vector<Vector> ker = rel, ideal = rel;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const auto& m = gens[g].monomial;
      const bool constant = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
      ker.push_back(detail::unit_vector(gens.size(), g, constant ? PLocalScalar(p.value()) : PLocalScalar(1)));
      bool in_r = false;
      for (std::size_t j = k; j <= m.size(); ++j) in_r = in_r || m[j - 1] > 0;
      if (in_r) ideal.push_back(detail::unit_vector(gens.size(), g));
    }
    const Span ks(gens.size(), ker, p, options.rule), is(gens.size(), ideal, p, options.rule);
    const FinitePGroup lhs = lattice_quotient(ks, rel, p, options.rule);
    const FinitePGroup rhs = lattice_quotient(is, rel, p, options.rule);
    const bool equal = ks.contains_all(ideal) && is.contains_all(ker) && lhs == rhs;
    Verdict v = equal ? Verdict::pass : Verdict::fail;
    if (!any_r && equal) v = Verdict::vacuous;
    cells[i] = {d, std::nullopt, "kernel", lhs, rhs, v, equal ? "" : "subgroups differ"};
  }, options.workers);
  r.cells = std::move(cells);
  return r;
}

/// Evidence for the two ingredients of the vanishing argument:
/// (a) every torsion generator of (N^k)_d is killed by a power of v_l inside the window;
/// (b) v_l : (N^l)_d -> (N^l)_{d + deg v_l} is injective.
/// A generator whose powers all stay nonzero up to D is INCONCLUSIVE, never PASS.
inline VerificationReport squeeze_evidence(const PSeriesTable& pseries, std::size_t k, std::size_t ell,
                                           int degree_bound, ComputeOptions options = {}) {
  if (ell < 1 || ell >= k) throw Error("squeeze_evidence: requires 1 <= l < k");
  VerificationReport r;
  r.name = "squeeze";
  r.parameters = detail::config_json(pseries.prime(), k, degree_bound, options);
  r.parameters.erase("n");
  r.parameters["k"] = k;
  r.parameters["l"] = ell;
  r.min_degree = 1;
  r.max_degree = degree_bound;
  detail::label_prime(r, pseries.prime());

  const NPowerPresentation nk(pseries, k, degree_bound, options);
  if (ell > nk.coefficients().size())
    throw Error("squeeze_evidence: v_" + std::to_string(ell) + " does not fit below degree " +
                std::to_string(degree_bound));
  const int step = nk.coefficients().generator_degree(ell);
  const std::string vl = "v_" + std::to_string(ell);

  for (int d = 1; d <= degree_bound; ++d) {
    const Cokernel& c = nk.cokernel(d);
    const auto exps = c.torsion_exponents();
    for (std::size_t i = 0; i < exps.size(); ++i) {
      Vector x = c.torsion_generator(i);
      int deg = d, power = 0;
      Verdict v = Verdict::inconclusive;
      std::string note;
      while (deg + step <= degree_bound) {
        x = nk.multiplication_by_generator(deg, ell).apply(x);
        deg += step;
        ++power;
        if (nk.cokernel(deg).is_zero(x)) {
          v = Verdict::pass;
          note = vl + "^" + std::to_string(power) + " kills generator " + std::to_string(i);
          break;
        }
      }
      if (v == Verdict::inconclusive)
        note = "generator " + std::to_string(i) + " survives " + vl + "^" + std::to_string(power) +
               "; the window ends before nilpotence can be decided";
      r.cells.push_back({d, static_cast<int>(i), "nilpotence", FinitePGroup::cyclic(exps[i]), FinitePGroup(), v, note});
    }
  }

  const NPowerPresentation nl(pseries, ell, degree_bound, options);
  for (int d = 1; d + step <= degree_bound; ++d) {
    const auto ker = induced_kernel(nl.multiplication_by_generator(d, ell), nl.relations(d),
                                    nl.relations(d + step), nl.prime(), options.rule);
    r.cells.push_back({d, std::nullopt, "injective", ker.group, FinitePGroup(),
                       equality_verdict(ker.group, FinitePGroup()),
                       "kernel of " + vl + " on N^" + std::to_string(ell) + " in degree " + std::to_string(d)});
  }
  return r;
}

/// Multiplies the toral class c_1 (x) ... (x) c_1 by p = v_0 and by each v_j
/// that fits; the product should vanish exactly for j < n.
inline VerificationReport annihilator_probe(const PSeriesTable& pseries, std::size_t n, int degree_bound,
                                            ComputeOptions options = {}) {
  VerificationReport r;
  r.name = "annihilator";
  r.parameters = detail::config_json(pseries.prime(), n, degree_bound, options);
  r.min_degree = 1;
  r.max_degree = degree_bound - 1;
  detail::label_prime(r, pseries.prime());

  const auto cx = assemble_complex(pseries, n, degree_bound);
  const ChainHomology h(cx, -1, options);
  const int d = static_cast<int>(n);
  const Vector toral = cx.toral_cycle();
  const bool toral_nonzero = !h.is_zero_in_homology(toral, d);
  r.cells.push_back({d, std::nullopt, "toral", h.group(d), FinitePGroup(),
                     toral_nonzero ? Verdict::pass : Verdict::fail,
                     toral_nonzero ? "toral class is nonzero" : "toral class vanishes"});
  for (std::size_t j = 0; j <= cx.generators().size(); ++j) {
    const int target = d + (j == 0 ? 0 : cx.generators().generator_degree(j));
    if (target > r.max_degree) {
      r.notes.push_back("v_" + std::to_string(j) + " * toral lands in degree " + std::to_string(target) +
                        ", outside the window");
      continue;
    }
    const bool zero = h.is_zero_in_homology(h.multiplication_matrix(d, j).apply(toral), target);
    const bool expect_zero = j < n;
    r.cells.push_back({target, static_cast<int>(j), "annihilator", h.group(target), FinitePGroup(),
                       zero == expect_zero ? Verdict::pass : Verdict::fail,
                       "v_" + std::to_string(j) + " * toral " + (zero ? "= 0" : "!= 0")});
  }
  return r;
}

}  // namespace bpchain
