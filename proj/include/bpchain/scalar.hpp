#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bpchain {

/// Base error for contract violations inside the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Integer = mpz_class;

/// Exact element of Z_(p): a reduced rational whose denominator is prime to
/// the ambient prime. The prime itself is carried by the operation, not the
/// value, so containers of scalars stay compact.
using PLocalScalar = mpq_class;

inline bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// A validated prime.
class Prime {
 public:
  explicit Prime(unsigned long value) : value_(value) {
    if (!is_prime(value)) throw Error("not a prime: " + std::to_string(value));
  }
  unsigned long value() const { return value_; }
  bool odd() const { return value_ != 2; }
  friend bool operator==(Prime a, Prime b) { return a.value_ == b.value_; }

 private:
  unsigned long value_;
};

inline constexpr int kInfiniteValuation = INT_MAX;

/// p-adic valuation of an integer; kInfiniteValuation for zero.
inline int valuation(const Integer& n, Prime p) {
  if (sgn(n) == 0) return kInfiniteValuation;
  Integer rest = n;
  int v = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), p.value())) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p.value());
    ++v;
  }
  return v;
}

/// Valuation of a rational. Negative when p divides the denominator.
inline int valuation(const PLocalScalar& q, Prime p) {
  if (sgn(q) == 0) return kInfiniteValuation;
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

inline bool is_p_local(const PLocalScalar& q, Prime p) {
  return !mpz_divisible_ui_p(q.get_den_mpz_t(), p.value());
}

inline bool is_unit(const PLocalScalar& q, Prime p) { return valuation(q, p) == 0; }

inline Integer prime_power(Prime p, int e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p.value(), static_cast<unsigned long>(e));
  return r;
}

/// Residue of a p-local rational modulo p^e, as an integer in [0, p^e).
inline Integer residue(const PLocalScalar& q, Prime p, int e) {
  if (!is_p_local(q, p)) throw Error("residue of a non-p-local scalar");
  Integer modulus = prime_power(p, e);
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), q.get_den_mpz_t(), modulus.get_mpz_t()) == 0) {
    if (e == 0) return 0;
    throw Error("denominator not invertible modulo p^e");
  }
  Integer r = q.get_num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

/// Reduces a p-local rational modulo p into [0, p).
inline unsigned long mod_p(const PLocalScalar& q, Prime p) {
  return residue(q, p, 1).get_ui();
}

}  // namespace bpchain
