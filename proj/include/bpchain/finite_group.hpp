#pragma once

#include "bpchain/scalar.hpp"

#include <algorithm>
#include <compare>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace bpchain {

/// Isomorphism type of a finitely generated Z_(p)-module:
/// (+)_i Z/p^{e_i} (+) Z_(p)^{free_rank}. Exponents are kept sorted.
class FinitePGroup {
 public:
  FinitePGroup() = default;
  explicit FinitePGroup(std::vector<int> exponents, std::size_t free_rank = 0)
      : exponents_(std::move(exponents)), free_rank_(free_rank) {
    for (int e : exponents_)
      if (e <= 0) throw Error("FinitePGroup: exponents must be positive");
    std::sort(exponents_.begin(), exponents_.end());
  }

  static FinitePGroup cyclic(int e) { return FinitePGroup({e}); }

  const std::vector<int>& exponents() const { return exponents_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_trivial() const { return exponents_.empty() && free_rank_ == 0; }
  bool is_torsion() const { return free_rank_ == 0; }

  /// log_p of the order of the torsion part.
  int log_order() const { return std::accumulate(exponents_.begin(), exponents_.end(), 0); }

  /// Number of cyclic summands (torsion and free).
  std::size_t summands() const { return exponents_.size() + free_rank_; }

  FinitePGroup& operator+=(const FinitePGroup& other) {
    exponents_.insert(exponents_.end(), other.exponents_.begin(), other.exponents_.end());
    std::sort(exponents_.begin(), exponents_.end());
    free_rank_ += other.free_rank_;
    return *this;
  }
  friend FinitePGroup operator+(FinitePGroup a, const FinitePGroup& b) { return a += b; }

  friend bool operator==(const FinitePGroup&, const FinitePGroup&) = default;
  friend auto operator<=>(const FinitePGroup&, const FinitePGroup&) = default;

  /// Prime-free form for diagnostics: exponents and free rank.
  friend std::ostream& operator<<(std::ostream& os, const FinitePGroup& g) {
    os << '[';
    for (std::size_t i = 0; i < g.exponents_.size(); ++i) os << (i ? "," : "") << g.exponents_[i];
    os << ']';
    if (g.free_rank_) os << "+Z^" << g.free_rank_;
    return os;
  }

  /// "3,9" style list of torsion orders; "0" for the trivial group; free
  /// summands appear as "Z".
  std::string render(Prime p) const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int e : exponents_) {
      if (!first) os << ',';
      os << prime_power(p, e).get_str();
      first = false;
    }
    for (std::size_t i = 0; i < free_rank_; ++i) {
      if (!first) os << ',';
      os << 'Z';
      first = false;
    }
    return os.str();
  }

 private:
  std::vector<int> exponents_;
  std::size_t free_rank_ = 0;
};

}  // namespace bpchain
