#pragma once

#include "bpchain/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace bpchain {

/// Exponent vector over the generators v_1, v_2, ... of a GeneratorTable.
using Exponents = std::vector<int>;

/// The polynomial generators v_m of BP_* that fit below a degree bound.
/// deg v_m = 2p^m - 2; v_0 = p is a scalar and is not stored. A scalars-only
/// table has no generators at all and describes the ring Z_(p).
class GeneratorTable {
 public:
  GeneratorTable(Prime p, int degree_bound, bool scalars_only = false)
      : p_(p), bound_(degree_bound), scalars_only_(scalars_only) {
    if (degree_bound < 0) throw Error("GeneratorTable: negative degree bound");
    if (scalars_only) return;
    Integer pm = p.value();
    for (;;) {
      Integer deg = 2 * pm - 2;
      if (deg > degree_bound) break;
      degrees_.push_back(static_cast<int>(deg.get_si()));
      pm *= p.value();
    }
  }

  Prime prime() const { return p_; }
  int degree_bound() const { return bound_; }
  std::size_t size() const { return degrees_.size(); }
  bool scalars_only() const { return scalars_only_; }

  /// Degree of v_m for 1 <= m <= size().
  int generator_degree(std::size_t m) const { return degrees_.at(m - 1); }
  const std::vector<int>& degrees() const { return degrees_; }

  int degree(const Exponents& e) const {
    if (e.size() != degrees_.size()) throw Error("monomial length does not match the table");
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * degrees_[i];
    return d;
  }

  Exponents one() const { return Exponents(degrees_.size(), 0); }

  Exponents generator(std::size_t m) const {
    Exponents e = one();
    e.at(m - 1) = 1;
    return e;
  }

  /// All monomials of exactly the given degree, lexicographically descending
  /// in the exponent vector (so p=3, degree 16 gives v_1^4 before v_2).
  std::vector<Exponents> monomial_basis(int degree) const {
    if (degree > bound_) throw Error("monomial_basis: degree exceeds the bound");
    std::vector<Exponents> out;
    if (degree < 0 || degree % 2 != 0) return out;
    Exponents e = one();
    enumerate(0, degree, e, out);
    return out;
  }

  /// Position of each basis monomial in monomial_basis(degree).
  std::map<Exponents, std::size_t> monomial_index(int degree) const {
    std::map<Exponents, std::size_t> idx;
    auto basis = monomial_basis(degree);
    for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
    return idx;
  }

  std::string render(const Exponents& e) const {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += "v" + std::to_string(i + 1);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
  }

 private:
  void enumerate(std::size_t slot, int remaining, Exponents& e,
                 std::vector<Exponents>& out) const {
    if (slot == degrees_.size()) {
      if (remaining == 0) out.push_back(e);
      return;
    }
    for (int k = remaining / degrees_[slot]; k >= 0; --k) {
      e[slot] = k;
      enumerate(slot + 1, remaining - k * degrees_[slot], e, out);
    }
    e[slot] = 0;
  }

  Prime p_;
  int bound_;
  bool scalars_only_;
  std::vector<int> degrees_;
};

}  // namespace bpchain
