#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace cyclodyne {

// Exact arbitrary-precision integer. Values the library keeps exact
// (S(2), 2^N - 1, determinants) routinely exceed machine words; GMP
// carries them, word-size modular arithmetic stays in ntcore.
using BigInt = mpz_class;

// Number of bits in |n|; bit_length(0) == 0.
inline std::size_t bit_length(const BigInt& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline BigInt pow2m1(uint64_t n) {
    BigInt r = 1;
    r <<= static_cast<mp_bitcnt_t>(n);
    return r - 1;
}

inline BigInt big_pow(const BigInt& base, uint64_t exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
    return r;
}

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// n mod m as a uint64_t, m > 0 fitting a word; result in [0, m).
inline uint64_t mod_to_u64(const BigInt& n, uint64_t m) {
    BigInt r, mm;
    mm = static_cast<unsigned long>(m);
    mpz_mod(r.get_mpz_t(), n.get_mpz_t(), mm.get_mpz_t());
    return static_cast<uint64_t>(mpz_get_ui(r.get_mpz_t()));
}

inline std::string to_decimal(const BigInt& n) { return n.get_str(10); }

} // namespace cyclodyne
