#pragma once

#include "bpchain/scalar.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bpchain {

/// H^*((Z/p)^k; F_p). For odd p this is F_p[t_1..t_k] (x) Lambda(s_1..s_k)
/// with |t_i| = 2, |s_i| = 1. For p = 2 it is the polynomial ring
/// F_2[s_1..s_k] and there are no t classes. Optional heights truncate a
/// generator (x^h = 0), which models skeleta such as RP^3 or L^3.
struct CohomologyRing {
  unsigned long p = 3;
  std::size_t rank = 0;
  std::vector<int> t_height;  // 0 means no truncation
  std::vector<int> s_height;

  CohomologyRing() = default;
  CohomologyRing(Prime prime, std::size_t k)
      : p(prime.value()), rank(k), t_height(k, 0), s_height(k, 0) {}

  bool exterior() const { return p != 2; }

  CohomologyRing truncated_s(std::vector<int> heights) const {
    if (heights.size() != rank) throw Error("CohomologyRing: height count mismatch");
    CohomologyRing r = *this;
    r.s_height = std::move(heights);
    return r;
  }
  CohomologyRing truncated_t(std::vector<int> heights) const {
    if (heights.size() != rank) throw Error("CohomologyRing: height count mismatch");
    CohomologyRing r = *this;
    r.t_height = std::move(heights);
    return r;
  }

  friend bool operator==(const CohomologyRing&, const CohomologyRing&) = default;
};

struct CohomologyMonomial {
  std::vector<int> t;
  std::vector<int> s;  // 0/1 for odd p, polynomial exponents for p = 2

  int degree() const {
    int d = 0;
    for (int e : t) d += 2 * e;
    for (int e : s) d += e;
    return d;
  }
  friend bool operator==(const CohomologyMonomial&, const CohomologyMonomial&) = default;
  friend auto operator<=>(const CohomologyMonomial&, const CohomologyMonomial&) = default;
};

/// Homogeneous element with F_p coefficients in normal form: exterior
/// indices strictly increasing, no zero coefficients, no truncated monomials.
class CohomologyElement {
 public:
  CohomologyElement(CohomologyRing ring, int degree) : ring_(std::move(ring)), degree_(degree) {}

  static CohomologyElement one(const CohomologyRing& r) {
    CohomologyElement e(r, 0);
    e.add_term({std::vector<int>(r.rank, 0), std::vector<int>(r.rank, 0)}, 1);
    return e;
  }
  static CohomologyElement t(const CohomologyRing& r, std::size_t i) {
    if (!r.exterior()) throw Error("cohomology: no t classes at p=2");
    CohomologyElement e(r, 2);
    CohomologyMonomial m{std::vector<int>(r.rank, 0), std::vector<int>(r.rank, 0)};
    m.t.at(i - 1) = 1;
    e.add_term(m, 1);
    return e;
  }
  static CohomologyElement s(const CohomologyRing& r, std::size_t i) {
    CohomologyElement e(r, 1);
    CohomologyMonomial m{std::vector<int>(r.rank, 0), std::vector<int>(r.rank, 0)};
    m.s.at(i - 1) = 1;
    e.add_term(m, 1);
    return e;
  }

  const CohomologyRing& ring() const { return ring_; }
  int degree() const { return degree_; }
  const std::map<CohomologyMonomial, unsigned long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  unsigned long coefficient(const CohomologyMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(const CohomologyMonomial& m, long c) {
    if (m.t.size() != ring_.rank || m.s.size() != ring_.rank) throw Error("cohomology: monomial rank mismatch");
    if (m.degree() != degree_) throw Error("cohomology: inhomogeneous term");
    if (truncated(m)) return;
    const long p = static_cast<long>(ring_.p);
    const unsigned long x = static_cast<unsigned long>(((c % p) + p) % p);
    if (x == 0) return;
    auto [it, inserted] = terms_.emplace(m, x);
    if (!inserted) {
      it->second = (it->second + x) % ring_.p;
      if (it->second == 0) terms_.erase(it);
    }
  }

  CohomologyElement& operator+=(const CohomologyElement& o) {
    check_compatible(o);
    if (o.is_zero()) return *this;
    if (is_zero()) degree_ = o.degree_;
    if (o.degree_ != degree_) throw Error("cohomology: adding elements of different degrees");
    for (const auto& [m, c] : o.terms_) add_term(m, static_cast<long>(c));
    return *this;
  }
  friend CohomologyElement operator+(CohomologyElement a, const CohomologyElement& b) { return a += b; }
  CohomologyElement operator-() const {
    CohomologyElement out(ring_, degree_);
    for (const auto& [m, c] : terms_) out.add_term(m, -static_cast<long>(c));
    return out;
  }
  friend CohomologyElement operator-(CohomologyElement a, const CohomologyElement& b) { return a += -b; }

  CohomologyElement scaled(long c) const {
    CohomologyElement out(ring_, degree_);
    for (const auto& [m, x] : terms_) out.add_term(m, static_cast<long>(x) * c);
    return out;
  }

  /// Cup product. For odd p, moving s_j of the right factor past s_i of the
  /// left factor with i > j costs a sign, and s_i s_i = 0.
  friend CohomologyElement operator*(const CohomologyElement& a, const CohomologyElement& b) {
    a.check_compatible(b);
    CohomologyElement out(a.ring_, a.degree_ + b.degree_);
    const std::size_t r = a.ring_.rank;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        CohomologyMonomial m{std::vector<int>(r), std::vector<int>(r)};
        bool zero = false;
        int inversions = 0;
        for (std::size_t i = 0; i < r; ++i) {
          m.t[i] = ma.t[i] + mb.t[i];
          m.s[i] = ma.s[i] + mb.s[i];
          if (a.ring_.exterior()) {
            if (m.s[i] > 1) zero = true;
            if (mb.s[i])
              for (std::size_t j = i + 1; j < r; ++j) inversions += ma.s[j];
          }
        }
        if (zero) continue;
        const long c = static_cast<long>(ca * cb % a.ring_.p);
        out.add_term(m, inversions % 2 ? -c : c);
      }
    return out;
  }

  CohomologyElement power(unsigned k) const {
    CohomologyElement out = one(ring_);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  friend bool operator==(const CohomologyElement& a, const CohomologyElement& b) {
    if (a.is_zero() && b.is_zero()) return a.ring_ == b.ring_;
    return a.ring_ == b.ring_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  std::string render() const {
    if (is_zero()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      std::string mono;
      const auto& m = it->first;
      auto factor = [&](const char* name, std::size_t i, int e) {
        if (e == 0) return;
        if (!mono.empty()) mono += '*';
        mono += name;
        if (ring_.rank > 1) mono += std::to_string(i + 1);
        if (e > 1) mono += "^" + std::to_string(e);
      };
      for (std::size_t i = 0; i < m.t.size(); ++i) factor("t", i, m.t[i]);
      for (std::size_t i = 0; i < m.s.size(); ++i) factor("s", i, m.s[i]);
      if (mono.empty()) out += std::to_string(it->second);
      else if (it->second == 1) out += mono;
      else out += std::to_string(it->second) + "*" + mono;
    }
    return out;
  }

 private:
  bool truncated(const CohomologyMonomial& m) const {
    for (std::size_t i = 0; i < ring_.rank; ++i) {
      if (ring_.t_height[i] > 0 && m.t[i] >= ring_.t_height[i]) return true;
      if (ring_.s_height[i] > 0 && m.s[i] >= ring_.s_height[i]) return true;
    }
    return false;
  }
  void check_compatible(const CohomologyElement& o) const {
    if (!(ring_ == o.ring_)) throw Error("cohomology: elements live in different rings");
  }

  CohomologyRing ring_;
  int degree_;
  std::map<CohomologyMonomial, unsigned long> terms_;
};

inline CohomologyElement cup_product(const CohomologyElement& a, const CohomologyElement& b) { return a * b; }

/// A ring map H^*(target space) -> H^*(source space) given by the images of
/// the generators. A missing image marks a class that is not defined on that
/// slot; pulling back an element that uses it is an error.
class RingMap {
 public:
  RingMap(CohomologyRing from, CohomologyRing to) : from_(std::move(from)), to_(std::move(to)) {
    t_.resize(from_.rank);
    s_.resize(from_.rank);
  }

  const CohomologyRing& domain() const { return from_; }
  const CohomologyRing& codomain() const { return to_; }

  void set_t(std::size_t i, CohomologyElement image) { t_.at(i - 1) = checked(std::move(image), 2); }
  void set_s(std::size_t i, CohomologyElement image) { s_.at(i - 1) = checked(std::move(image), 1); }

  CohomologyElement operator()(const CohomologyElement& x) const {
    if (!(x.ring() == from_)) throw Error("pullback: element is not in the domain ring");
    CohomologyElement out(to_, x.degree());
    for (const auto& [m, c] : x.terms()) {
      CohomologyElement term = CohomologyElement::one(to_).scaled(static_cast<long>(c));
      for (std::size_t i = 0; i < from_.rank; ++i)
        if (m.t[i]) term = term * image(t_, i, "t").power(static_cast<unsigned>(m.t[i]));
      for (std::size_t i = 0; i < from_.rank; ++i)
        if (m.s[i]) term = term * image(s_, i, "s").power(static_cast<unsigned>(m.s[i]));
      out += term;
    }
    return out;
  }

 private:
  CohomologyElement checked(CohomologyElement e, int degree) const {
    if (!(e.ring() == to_)) throw Error("RingMap: image in the wrong ring");
    if (!e.is_zero() && e.degree() != degree) throw Error("RingMap: image of the wrong degree");
    if (e.is_zero()) e = CohomologyElement(to_, degree);
    return e;
  }
  static const CohomologyElement& image(const std::vector<std::optional<CohomologyElement>>& v, std::size_t i,
                                        const char* name) {
    if (!v[i]) throw Error(std::string("pullback: no image for ") + name + std::to_string(i + 1));
    return *v[i];
  }

  CohomologyRing from_, to_;
  std::vector<std::optional<CohomologyElement>> t_, s_;
};

/// phi_Lambda : (Z/p)^k -> (Z/p)^{k+l}, inserting y_j = sum_{i <= delta_j}
/// lambda_{j,i} x_i at position omega_j = delta_j + j (1-based).
struct AlgebraMapSpec {
  std::size_t k = 0;
  std::vector<std::size_t> delta;
  std::vector<std::vector<unsigned long>> lambda;

  std::size_t target_rank() const { return k + delta.size(); }
  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < delta.size(); ++j) out.push_back(delta[j] + j + 1);
    return out;
  }

  void validate(unsigned long p) const {
    if (lambda.size() != delta.size()) throw Error("AlgebraMapSpec: one coefficient row per inserted slot");
    for (std::size_t j = 0; j < delta.size(); ++j) {
      if (delta[j] < 1 || delta[j] > k) throw Error("AlgebraMapSpec: delta out of range");
      if (j > 0 && delta[j] < delta[j - 1]) throw Error("AlgebraMapSpec: delta must be nondecreasing");
      if (lambda[j].size() != delta[j]) throw Error("AlgebraMapSpec: coefficient row of the wrong length");
      for (unsigned long x : lambda[j])
        if (x >= p) throw Error("AlgebraMapSpec: coefficient not reduced mod p");
    }
  }
};

/// The map induced in cohomology by phi_Lambda followed by the projection
/// B Z/p -> CP^inf on each inserted slot, which carries only its class t.
inline RingMap pullback_map(Prime p, const AlgebraMapSpec& spec) {
  if (p.value() == 2) throw Error("pullback: the CP^inf slots need odd p");
  spec.validate(p.value());
  const CohomologyRing target(p, spec.target_rank()), source(p, spec.k);
  RingMap map(target, source);
  const auto pos = spec.positions();
  std::size_t next_source = 1;
  for (std::size_t q = 1; q <= spec.target_rank(); ++q) {
    auto it = std::find(pos.begin(), pos.end(), q);
    if (it == pos.end()) {
      map.set_t(q, CohomologyElement::t(source, next_source));
      map.set_s(q, CohomologyElement::s(source, next_source));
      ++next_source;
      continue;
    }
    const auto& row = spec.lambda[static_cast<std::size_t>(it - pos.begin())];
    CohomologyElement y(source, 2);
    for (std::size_t i = 0; i < row.size(); ++i)
      y += CohomologyElement::t(source, i + 1).scaled(static_cast<long>(row[i]));
    map.set_t(q, y);
  }
  return map;
}

inline CohomologyElement pullback(Prime p, const AlgebraMapSpec& spec, const CohomologyElement& x) {
  return pullback_map(p, spec)(x);
}

}  // namespace bpchain
