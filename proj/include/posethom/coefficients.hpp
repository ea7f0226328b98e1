#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace posethom {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Coefficient ring for (co)homology: Z, Q, or F_p with p prime, p < 2^31.
struct Coefficients {
  enum class Kind { Integers, Rationals, Prime };
  Kind kind = Kind::Integers;
  std::uint32_t p = 0;

  static Coefficients integers() { return {Kind::Integers, 0}; }
  static Coefficients rationals() { return {Kind::Rationals, 0}; }
  static Coefficients prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
      throw InputError("F_p requires a prime p < 2^31, got " + std::to_string(p));
    return {Kind::Prime, static_cast<std::uint32_t>(p)};
  }

  bool is_field() const { return kind != Kind::Integers; }
  bool is_integers() const { return kind == Kind::Integers; }
  bool is_rationals() const { return kind == Kind::Rationals; }
  bool is_prime_field() const { return kind == Kind::Prime; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Integers: return "Z";
      case Kind::Rationals: return "Q";
      case Kind::Prime: return "Fp:" + std::to_string(p);
    }
    return "?";
  }

  /// Accepts Z, Q, Fp:<p> (also F<p>, e.g. F2).
  static Coefficients parse(const std::string& s) {
    if (s == "Z") return integers();
    if (s == "Q") return rationals();
    std::string digits;
    if (s.rfind("Fp:", 0) == 0) digits = s.substr(3);
    else if (s.size() > 1 && s[0] == 'F') digits = s.substr(1);
    else throw InputError("unknown coefficients '" + s + "' (expected Z, Q or Fp:<p>)");
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos ||
        digits.size() > 12)
      throw InputError("bad prime in '" + s + "'");
    return prime(std::stoull(digits));
  }

  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

}  // namespace posethom
