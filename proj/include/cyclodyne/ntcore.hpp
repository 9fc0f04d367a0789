#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "cyclodyne/errors.hpp"

namespace cyclodyne {

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 1) return 0;
    uint64_t r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin; the 12-witness set decides primality for
// every n < 2^64.
inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Distinct prime factors by trial division; adequate for the word-size
// totients this library ever orders elements against.
inline std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> fs;
    for (uint64_t d = 2; d * d <= n; d += (d == 2) ? 1 : 2) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// Multiplicative order of a modulo prime p, a not divisible by p.
inline uint64_t multiplicative_order(uint64_t a, uint64_t p) {
    uint64_t order = p - 1;
    for (uint64_t f : prime_factors(p - 1)) {
        while (order % f == 0 && pow_mod(a, order / f, p) == 1) order /= f;
    }
    return order;
}

inline bool is_primitive_root(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) return false;
    for (uint64_t f : prime_factors(p - 1)) {
        if (pow_mod(a, (p - 1) / f, p) == 1) return false;
    }
    return true;
}

// Smallest g >= 2 that is a primitive root modulo both p and q.
// Existence is classical for gcd(p-1, q-1) = 2; the search bound is a
// hard stop against misuse.
inline uint64_t common_primitive_root(uint64_t p, uint64_t q) {
    for (uint64_t g = 2; g < p * q; ++g) {
        if (g % p == 0 || g % q == 0) continue;
        if (is_primitive_root(g, p) && is_primitive_root(g, q)) return g;
    }
    throw invalid_params("no common primitive root below pq (inputs not distinct odd primes?)");
}

// Unique y in [0, pq) with y = a (mod p), y = b (mod q).
inline uint64_t crt_lift(uint64_t p, uint64_t q, uint64_t a, uint64_t b) {
    // y = a + p * t with t = (b - a) / p (mod q)
    uint64_t p_inv = pow_mod(p % q, q - 2, q);
    uint64_t diff = (b + q - a % q) % q;
    uint64_t t = mul_mod(diff, p_inv, q);
    return a + p * t;
}

// The arithmetic frame every construction consumes: the primes, their
// product N, half-totient e, a common primitive root g (mod N) and the
// CRT witness x = (g mod p, 1 mod q).
struct PeriodParams {
    uint64_t p = 0;
    uint64_t q = 0;
    uint64_t N = 0;
    uint64_t e = 0;
    uint64_t g = 0;
    uint64_t x = 0;
};

inline PeriodParams make_params(uint64_t p, uint64_t q,
                                std::optional<uint64_t> g_override = std::nullopt) {
    if (!is_prime(p) || !is_prime(q)) throw invalid_params("p and q must be prime");
    if (p == 2 || q == 2) throw invalid_params("p and q must be odd");
    if (p >= q) throw invalid_params("require p < q");
    if (q >= (1ULL << 32)) throw invalid_params("q exceeds the 32-bit construction cap");
    if (std::gcd(p - 1, q - 1) != 2) throw invalid_params("require gcd(p-1, q-1) = 2");

    PeriodParams pp;
    pp.p = p;
    pp.q = q;
    pp.N = p * q;
    pp.e = (p - 1) * (q - 1) / 2;
    if (g_override) {
        uint64_t g = *g_override % pp.N;
        if (!is_primitive_root(g % p, p) || !is_primitive_root(g % q, q))
            throw invalid_params("g override is not a common primitive root of p and q");
        pp.g = g;
    } else {
        pp.g = common_primitive_root(p, q) % pp.N;
    }
    pp.x = crt_lift(p, q, pp.g % p, 1);
    return pp;
}

} // namespace cyclodyne
