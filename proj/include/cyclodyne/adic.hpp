#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cyclodyne/bigint.hpp"
#include "cyclodyne/sequences.hpp"

namespace cyclodyne {

// Exact 2-adic complexity data for one period: S(2), 2^N - 1, their gcd,
// the reduced fraction m/n = S(2)/(2^N - 1), and phi2 = floor(log2 n).
// For the all-zero sequence S(2) = 0, gcd = 2^N - 1, n = 1, phi2 = 0.
struct ComplexityReport {
    BigInt s2;
    BigInt modulus;
    BigInt g_common;
    BigInt m;
    BigInt n;
    uint64_t phi2 = 0;
};

inline ComplexityReport two_adic_complexity(const BinarySequence& seq) {
    ComplexityReport rep;
    rep.s2 = s_eval_two(seq);
    rep.modulus = pow2m1(seq.period);
    rep.g_common = big_gcd(rep.s2, rep.modulus);
    rep.n = rep.modulus / rep.g_common;
    rep.m = rep.s2 / rep.g_common;
    rep.phi2 = (rep.n == 1) ? 0 : static_cast<uint64_t>(bit_length(rep.n) - 1);
    return rep;
}

// A rational f/g with g odd: the value an FCSR generates. Reduced,
// g >= 1; the sign lives on the numerator.
struct DyadicRational {
    BigInt f;
    BigInt g;
};

inline bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.f == b.f && a.g == b.g;
}

// First `count` coefficients of the 2-adic expansion of f/g (g odd):
// b_i in {0,1} with sum b_i 2^i = f * g^{-1} in Z_2.
inline std::vector<uint8_t> fcsr_expand(const DyadicRational& r, std::size_t count) {
    if (mpz_even_p(r.g.get_mpz_t())) throw std::invalid_argument("fcsr_expand: denominator must be odd");
    std::vector<uint8_t> bits(count);
    BigInt state = r.f;
    for (std::size_t i = 0; i < count; ++i) {
        const bool one = mpz_odd_p(state.get_mpz_t()) != 0;
        bits[i] = one ? 1 : 0;
        if (one) state -= r.g;
        state >>= 1;
    }
    return bits;
}

namespace detail {

// Weyl-type norm the approximation minimizes.
inline BigInt phi_norm(const BigInt& a, const BigInt& b) {
    BigInt x = abs(a), y = abs(b);
    return x > y ? x : y;
}

struct LatticePair {
    BigInt v1, v2; // candidate numerator / denominator
    BigInt d;      // v1 - v2 * alpha, tracked incrementally
};

// Nearest-integer quotient.
inline BigInt round_div(const BigInt& num, const BigInt& den) {
    BigInt q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (2 * r >= den) q += 1;
    return q;
}

} // namespace detail

// Rational approximation: the smallest (in the max-norm sense) pair
// (f, g) with g odd whose 2-adic expansion matches all `count` given
// bits, i.e. f = g * alpha (mod 2^count). The pair lattice
//   L_k = { (u, v) : u = v*alpha (mod 2^k) }
// is refined one bit at a time, keeping a norm-balanced basis, and the
// final basis is Lagrange-reduced so the returned vector is a shortest
// one. For an eventually periodic stream observed over at least
// 2*phi2 + 4 bits the returned denominator is the true one.
inline DyadicRational raa_synthesize(const std::vector<uint8_t>& bits) {
    if (bits.size() < 2) throw std::invalid_argument("raa_synthesize: need at least 2 bits");

    BigInt alpha = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) mpz_setbit(alpha.get_mpz_t(), static_cast<mp_bitcnt_t>(i));
    if (alpha == 0) return {BigInt(0), BigInt(1)};

    // Factor out low zero bits so alpha is odd; restore 2^shift at the end.
    const std::size_t shift = mpz_scan1(alpha.get_mpz_t(), 0);
    alpha >>= static_cast<mp_bitcnt_t>(shift);
    const std::size_t T = bits.size() - shift;

    detail::LatticePair f{BigInt(0), BigInt(2), BigInt(-2) * alpha};
    detail::LatticePair g{BigInt(1), BigInt(1), BigInt(1) - alpha};

    for (std::size_t k = 1; k < T; ++k) {
        const bool g_lifts = mpz_divisible_2exp_p(g.d.get_mpz_t(), k + 1) != 0;
        const bool f_lifts = mpz_divisible_2exp_p(f.d.get_mpz_t(), k + 1) != 0;
        if (g_lifts && f_lifts) throw std::logic_error("raa_synthesize: degenerate basis");
        if (g_lifts) {
            f.v1 *= 2; f.v2 *= 2; f.d *= 2;
        } else if (f_lifts) {
            std::swap(f, g);
            f.v1 *= 2; f.v2 *= 2; f.d *= 2;
        } else {
            // Both off by 2^k: f+g and f-g lift; keep the shorter sum and
            // double the shorter original.
            detail::LatticePair plus{g.v1 + f.v1, g.v2 + f.v2, g.d + f.d};
            detail::LatticePair minus{g.v1 - f.v1, g.v2 - f.v2, g.d - f.d};
            detail::LatticePair& h =
                detail::phi_norm(plus.v1, plus.v2) <= detail::phi_norm(minus.v1, minus.v2) ? plus
                                                                                           : minus;
            detail::LatticePair& keep =
                detail::phi_norm(f.v1, f.v2) <= detail::phi_norm(g.v1, g.v2) ? f : g;
            detail::LatticePair doubled{keep.v1 * 2, keep.v2 * 2, keep.d * 2};
            g = h;
            f = std::move(doubled);
        }
    }

    // Lagrange-Gauss reduction of the final basis.
    auto norm2 = [](const detail::LatticePair& v) -> BigInt { return v.v1 * v.v1 + v.v2 * v.v2; };
    while (true) {
        if (norm2(f) < norm2(g)) std::swap(f, g);
        const BigInt mu = detail::round_div(f.v1 * g.v1 + f.v2 * g.v2, norm2(g));
        if (mu == 0) break;
        f.v1 -= mu * g.v1;
        f.v2 -= mu * g.v2;
        f.d -= mu * g.d;
    }

    // Shortest odd-denominator combination. Some lattice vector has odd
    // second coordinate because (alpha, 1) is in the lattice.
    const detail::LatticePair* best = nullptr;
    BigInt best_norm;
    detail::LatticePair sum{f.v1 + g.v1, f.v2 + g.v2, f.d + g.d};
    detail::LatticePair dif{f.v1 - g.v1, f.v2 - g.v2, f.d - g.d};
    for (const detail::LatticePair* cand : {&g, &f, &sum, &dif}) {
        if (mpz_even_p(cand->v2.get_mpz_t())) continue;
        BigInt n = detail::phi_norm(cand->v1, cand->v2);
        if (best == nullptr || n < best_norm) {
            best = cand;
            best_norm = n;
        }
    }
    if (best == nullptr) throw std::logic_error("raa_synthesize: no odd-denominator vector");

    BigInt num = best->v1, den = best->v2;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    BigInt c = big_gcd(num, den);
    if (c > 1) {
        num /= c;
        den /= c;
    }
    num <<= static_cast<mp_bitcnt_t>(shift);
    return {num, den};
}

} // namespace cyclodyne
