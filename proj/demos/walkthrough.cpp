// Small tour of the library at p = 3: the p-series, the homology of the
// two-factor complex, its comparison with the word decomposition and the
// cohomological side.

#include "bpchain/bpchain.hpp"

#include <iostream>

using namespace bpchain;

int main() {
  const Prime p(3);
  const int bound = 16;

  const auto ps = compute_p_series(p, bound);
  std::cout << render(ps, check_p_series_properties(ps), Format::table) << '\n';

  // H_*(B(Z/3)^2) in BP-homology, split by the number of odd factors.
  const DegreewiseComplex cx(ps, 2, bound);
  std::cout << render(homology_table(cx), Format::table, true) << '\n';

  // The same groups assembled from N^k (x) L words.
  const auto rhs = rhs_main_table(ps, 2, bound);
  std::cout << "degree | all words | last letter N | last letter L\n";
  for (int d = 1; d < bound; ++d)
    std::cout << d << " | " << rhs.total.at(d).render(p) << " | " << rhs.by_last.at(d, 0).render(p) << " | "
              << rhs.by_last.at(d, 1).render(p) << '\n';
  std::cout << '\n' << render(verify_theorem_main(ps, 2, bound), Format::table) << '\n';

  // p * toral and v_1 * toral vanish; v_2 would need degree 18.
  std::cout << render(annihilator_probe(ps, 2, bound), Format::table) << '\n';

  const auto van = vandermonde_surjectivity(p, 1);
  std::cout << "vandermonde p=3 k=1: " << (van.pass() ? "injective" : "not injective") << " through degree "
            << van.window << ", det " << vandermonde_determinant(p, 1).render() << '\n';
  const auto ex = p2_counterexample();
  std::cout << "p=2: Delta^*(s1*s2*s3) = " << ex.diagonal << ", beta^*(s1*s2*s3) = " << ex.toral << '\n';
}
