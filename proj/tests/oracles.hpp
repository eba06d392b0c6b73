#pragma once

#include "bpchain/finite_group.hpp"
#include "test_support.hpp"

#include <map>

namespace bpchain::testing {

/// p-primary homology of the integral complex C (x) C with dc_{2m} = p c_{2m-1},
/// built and reduced with plain int64 arithmetic.
inline std::map<int, FinitePGroup> integral_square_homology(unsigned long p, int top) {
  auto basis = [](int d) {
    std::vector<std::pair<int, int>> b;
    for (int i = 1; i < d; ++i) b.emplace_back(i, d - i);
    return b;
  };
  auto boundary = [&](int d) {
    auto src = basis(d), dst = basis(d - 1);
    std::vector<std::vector<long long>> m(dst.size(), std::vector<long long>(src.size(), 0));
    auto pos = [&](int i, int j) {
      for (std::size_t k = 0; k < dst.size(); ++k)
        if (dst[k] == std::pair{i, j}) return k;
      throw bpchain::Error("missing");
    };
    for (std::size_t c = 0; c < src.size(); ++c) {
      auto [i, j] = src[c];
      if (i % 2 == 0) m[pos(i - 1, j)][c] += static_cast<long long>(p);
      if (j % 2 == 0) m[pos(i, j - 1)][c] += (i % 2 ? -1 : 1) * static_cast<long long>(p);
    }
    return m;
  };
  std::map<int, FinitePGroup> out;
  for (int d = 1; d <= top; ++d) {
    std::vector<int> exps;
    const auto diag_in = integer_diagonal(boundary(d + 1));
    const auto diag_out = d >= 3 ? integer_diagonal(boundary(d))
                                 : std::vector<long long>{};
    for (long long x : diag_in) {
      int e = 0;
      while (x % static_cast<long long>(p) == 0) {
        x /= static_cast<long long>(p);
        ++e;
      }
      if (e > 0) exps.push_back(e);
    }
    const std::size_t free = basis(d).size() - diag_out.size() - diag_in.size();
    out[d] = FinitePGroup(exps, free);
  }
  return out;
}

}  // namespace bpchain::testing
