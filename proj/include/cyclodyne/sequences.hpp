#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cyclodyne/bigint.hpp"
#include "cyclodyne/cyclotomy.hpp"
#include "cyclodyne/errors.hpp"

namespace cyclodyne {

enum class SequenceClass { DH1, DH2, External };

inline const char* to_string(SequenceClass c) {
    switch (c) {
        case SequenceClass::DH1: return "1";
        case SequenceClass::DH2: return "2";
        case SequenceClass::External: return "external";
    }
    return "?";
}

// One period of a binary sequence; bit i is the coefficient of 2^i.
struct BinarySequence {
    uint64_t period = 0;
    std::vector<uint8_t> bits;
    SequenceClass tag = SequenceClass::External;
};

inline uint64_t weight(const BinarySequence& seq) {
    uint64_t w = 0;
    for (uint8_t b : seq.bits) w += b;
    return w;
}

inline std::vector<uint64_t> support(const BinarySequence& seq) {
    std::vector<uint64_t> s;
    for (uint64_t i = 0; i < seq.period; ++i)
        if (seq.bits[i]) s.push_back(i);
    return s;
}

namespace detail {

inline BinarySequence from_support(const Partition& part, const std::vector<uint64_t>& a,
                                   const std::vector<uint64_t>& b, SequenceClass tag) {
    BinarySequence seq;
    seq.period = part.params.N;
    seq.tag = tag;
    seq.bits.assign(seq.period, 0);
    for (uint64_t i : a) seq.bits[i] = 1;
    for (uint64_t i : b) seq.bits[i] = 1;
    return seq;
}

} // namespace detail

// First class: support D1 u P, weight (p+1)(q-1)/2.
inline BinarySequence generate_dh1(const Partition& part) {
    return detail::from_support(part, part.d1, part.pset, SequenceClass::DH1);
}

// Second class: support D1 u Q, weight (p-1)(q+1)/2.
inline BinarySequence generate_dh2(const Partition& part) {
    return detail::from_support(part, part.d1, part.qset, SequenceClass::DH2);
}

// S(2) = sum s_i 2^i, exact.
inline BigInt s_eval_two(const BinarySequence& seq) {
    BigInt v = 0;
    for (uint64_t i = 0; i < seq.period; ++i)
        if (seq.bits[i]) mpz_setbit(v.get_mpz_t(), static_cast<mp_bitcnt_t>(i));
    return v;
}

// Length of the shortest LFSR over GF(2) generating the periodic stream,
// synthesized from 2N bits (enough for any period-N sequence).
inline uint64_t linear_complexity(const BinarySequence& seq) {
    const uint64_t n2 = 2 * seq.period;
    std::vector<uint8_t> s(n2);
    for (uint64_t i = 0; i < n2; ++i) s[i] = seq.bits[i % seq.period];

    std::vector<uint8_t> c{1}, b{1};
    uint64_t L = 0, m = 1;
    for (uint64_t n = 0; n < n2; ++n) {
        uint8_t d = s[n];
        for (uint64_t i = 1; i <= L && i < c.size(); ++i) d ^= c[i] & s[n - i];
        if (d == 0) {
            ++m;
            continue;
        }
        std::vector<uint8_t> t = c;
        if (c.size() < b.size() + m) c.resize(b.size() + m, 0);
        for (uint64_t i = 0; i < b.size(); ++i) c[i + m] ^= b[i];
        if (2 * L <= n) {
            L = n + 1 - L;
            b = std::move(t);
            m = 1;
        } else {
            ++m;
        }
    }
    return L;
}

// ASCII line of '0'/'1', index 0 first.
inline std::string to_bit_string(const BinarySequence& seq) {
    std::string s;
    s.reserve(seq.period);
    for (uint8_t b : seq.bits) s.push_back(b ? '1' : '0');
    return s;
}

// Bits packed LSB-first into nibbles, zero-padded at the top: the
// hexadecimal rendering of S(2) in ceil(N/4) digits.
inline std::string to_hex_string(const BinarySequence& seq) {
    const std::size_t digits = (seq.period + 3) / 4;
    std::string s = s_eval_two(seq).get_str(16);
    if (s.size() < digits) s.insert(0, digits - s.size(), '0');
    return s;
}

inline BinarySequence sequence_from_bits(std::string_view text) {
    BinarySequence seq;
    seq.tag = SequenceClass::External;
    for (char ch : text) {
        if (ch == '0' || ch == '1')
            seq.bits.push_back(static_cast<uint8_t>(ch - '0'));
        else if (ch == '\n' || ch == '\r' || ch == ' ' || ch == '\t')
            continue;
        else
            throw invalid_params(std::string("unexpected character '") + ch + "' in bit stream");
    }
    if (seq.bits.empty()) throw invalid_params("empty bit stream");
    seq.period = seq.bits.size();
    return seq;
}

} // namespace cyclodyne
