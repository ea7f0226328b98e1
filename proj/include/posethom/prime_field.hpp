#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "errors.hpp"

namespace posethom {

/// Arithmetic in F_p for a prime p < 2^31; elements are canonical
/// representatives in [0, p).
struct PrimeField {
  std::uint32_t p;

  explicit PrimeField(std::uint32_t prime) : p(prime) {}

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1 % p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw ContractError("inverse of zero in F_p");
    return pow(a, p - 2);
  }
  std::uint32_t from_long(long v) const {
    long r = v % static_cast<long>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
  }
  std::uint32_t reduce(const mpz_class& v) const {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
    return static_cast<std::uint32_t>(r.get_ui());
  }
};

}  // namespace posethom
