#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "cyclodyne/sequences.hpp"

using namespace cyclodyne;

namespace {

Partition part_of(uint64_t p, uint64_t q) { return build_partition(make_params(p, q)); }

BinarySequence seq_from(std::vector<uint8_t> bits) {
    BinarySequence s;
    s.period = bits.size();
    s.bits = std::move(bits);
    return s;
}

// Independent linear-complexity oracle: for a period-N sequence,
// LC = N - deg gcd(S(x), x^N - 1) over GF(2). Polynomials as bit vectors,
// index = degree.
std::vector<uint8_t> gf2_mod(std::vector<uint8_t> a, const std::vector<uint8_t>& b) {
    const auto deg = [](const std::vector<uint8_t>& v) -> int {
        for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
            if (v[i]) return i;
        return -1;
    };
    const int db = deg(b);
    while (deg(a) >= db && db >= 0) {
        const int shift = deg(a) - db;
        for (int i = 0; i <= db; ++i) a[i + shift] ^= b[i];
    }
    return a;
}

std::vector<uint8_t> gf2_gcd(std::vector<uint8_t> a, std::vector<uint8_t> b) {
    const auto is_zero = [](const std::vector<uint8_t>& v) {
        return std::all_of(v.begin(), v.end(), [](uint8_t x) { return x == 0; });
    };
    while (!is_zero(b)) {
        a = gf2_mod(std::move(a), b);
        std::swap(a, b);
    }
    return a;
}

uint64_t lc_oracle(const BinarySequence& seq) {
    const uint64_t n = seq.period;
    std::vector<uint8_t> sx(seq.bits);
    if (std::all_of(sx.begin(), sx.end(), [](uint8_t b) { return b == 0; })) return 0;
    std::vector<uint8_t> xn1(n + 1, 0);
    xn1[0] = 1;
    xn1[n] = 1;
    const std::vector<uint8_t> g = gf2_gcd(xn1, sx);
    int dg = 0;
    for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i)
        if (g[i]) {
            dg = i;
            break;
        }
    return n - static_cast<uint64_t>(dg);
}

} // namespace

TEST_CASE("first class support and weight") {
    const BinarySequence seq = generate_dh1(part_of(3, 5));
    CHECK(support(seq) == std::vector<uint64_t>{2, 3, 6, 7, 8, 9, 12, 13});
    CHECK(weight(seq) == 8); // (p+1)(q-1)/2
    CHECK(seq.period == 15);
    CHECK(seq.tag == SequenceClass::DH1);

    CHECK(weight(generate_dh1(part_of(5, 7))) == 18);
}

TEST_CASE("second class support and weight") {
    const BinarySequence seq = generate_dh2(part_of(3, 5));
    CHECK(support(seq) == std::vector<uint64_t>{2, 5, 7, 8, 10, 13});
    CHECK(weight(seq) == 6); // (p-1)(q+1)/2

    CHECK(weight(generate_dh2(part_of(11, 13))) == 70);
}

TEST_CASE("weights follow the class-size identities on every pair") {
    for (auto [p, q] : {std::pair<uint64_t, uint64_t>{3, 5}, {5, 7}, {11, 13}, {3, 7}, {7, 11}}) {
        const Partition part = part_of(p, q);
        CHECK(weight(generate_dh1(part)) == (p + 1) * (q - 1) / 2);
        CHECK(weight(generate_dh2(part)) == (p - 1) * (q + 1) / 2);
    }
}

TEST_CASE("the two classes differ exactly on P u Q") {
    for (auto [p, q] : {std::pair<uint64_t, uint64_t>{3, 5}, {5, 7}, {11, 13}}) {
        const Partition part = part_of(p, q);
        const BinarySequence a = generate_dh1(part);
        const BinarySequence b = generate_dh2(part);
        std::vector<uint64_t> diff;
        for (uint64_t i = 0; i < part.params.N; ++i)
            if (a.bits[i] != b.bits[i]) diff.push_back(i);
        std::vector<uint64_t> pq(part.pset);
        pq.insert(pq.end(), part.qset.begin(), part.qset.end());
        std::sort(pq.begin(), pq.end());
        CHECK(diff == pq);
    }
}

TEST_CASE("S(2) pinned values") {
    CHECK(s_eval_two(seq_from(std::vector<uint8_t>(15, 0))) == 0);
    CHECK(s_eval_two(generate_dh1(part_of(3, 5))) == 13260);
    std::vector<uint8_t> one(15, 0);
    one[0] = 1;
    CHECK(s_eval_two(seq_from(one)) == 1);
}

TEST_CASE("S(2) mod 2^k depends only on the first k bits") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const uint64_t n = 3 + rng() % 60;
        std::vector<uint8_t> bits(n);
        for (auto& b : bits) b = rng() & 1;
        const BigInt full = s_eval_two(seq_from(bits));
        const uint64_t k = 1 + rng() % n;
        std::vector<uint8_t> prefix(bits.begin(), bits.begin() + k);
        prefix.resize(n, 0);
        BigInt mod = full;
        mpz_fdiv_r_2exp(mod.get_mpz_t(), mod.get_mpz_t(), k);
        CHECK(mod == s_eval_two(seq_from(std::move(prefix))));
    }
}

TEST_CASE("regeneration is deterministic") {
    const BinarySequence a = generate_dh1(part_of(5, 7));
    const BinarySequence b = generate_dh1(part_of(5, 7));
    CHECK(a.bits == b.bits);
}

TEST_CASE("linear complexity pinned examples") {
    CHECK(linear_complexity(seq_from(std::vector<uint8_t>(15, 0))) == 0);
    std::vector<uint8_t> one(15, 0);
    one[0] = 1;
    CHECK(linear_complexity(seq_from(one)) == 15); // minimal polynomial x^15 - 1
}

TEST_CASE("linear complexity agrees with the gcd oracle") {
    for (auto [p, q] : {std::pair<uint64_t, uint64_t>{3, 5}, {5, 7}, {11, 13}}) {
        const Partition part = part_of(p, q);
        for (const BinarySequence& seq : {generate_dh1(part), generate_dh2(part)})
            CHECK(linear_complexity(seq) == lc_oracle(seq));
    }
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<uint8_t> bits(2 + rng() % 64);
        for (auto& b : bits) b = rng() & 1;
        const BinarySequence seq = seq_from(std::move(bits));
        CHECK(linear_complexity(seq) == lc_oracle(seq));
    }
}

TEST_CASE("bit-string rendering, index 0 first") {
    CHECK(to_bit_string(generate_dh1(part_of(3, 5))) == "001100111100110");
    CHECK(to_bit_string(generate_dh2(part_of(3, 5))) == "001001011010010");
}

TEST_CASE("hex rendering packs LSB-first nibbles, zero-padded at the top") {
    CHECK(to_hex_string(generate_dh1(part_of(3, 5))) == "33cc"); // S(2) = 13260
    std::vector<uint8_t> one(16, 0);
    one[0] = 1;
    CHECK(to_hex_string(seq_from(one)) == "0001");
}

TEST_CASE("sequence file parsing") {
    const BinarySequence seq = sequence_from_bits("001100111100110\n");
    CHECK(seq.period == 15);
    CHECK(seq.bits == generate_dh1(part_of(3, 5)).bits);
    CHECK(seq.tag == SequenceClass::External);

    CHECK_THROWS_AS(sequence_from_bits("0012"), invalid_params);
    CHECK_THROWS_AS(sequence_from_bits("\n"), invalid_params);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<uint8_t> bits(1 + rng() % 50);
        for (auto& b : bits) b = rng() & 1;
        const BinarySequence s = seq_from(bits);
        CHECK(sequence_from_bits(to_bit_string(s)).bits == s.bits);
    }
}
