#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <set>
#include <vector>

#include "cyclodyne/ntcore.hpp"

using namespace cyclodyne;

namespace {

// Independent oracle: order of a mod p by repeated multiplication.
uint64_t order_by_iteration(uint64_t a, uint64_t p) {
    uint64_t v = a % p, k = 1;
    while (v != 1) {
        v = (v * a) % p;
        ++k;
    }
    return k;
}

} // namespace

TEST_CASE("is_prime on pinned examples") {
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(899)); // 29 * 31
    CHECK(is_prime(3));
    CHECK(is_prime((1ULL << 61) - 1)); // Mersenne prime
    CHECK_FALSE(is_prime((1ULL << 62) - 1));
}

TEST_CASE("is_prime agrees with a sieve up to 10^6") {
    const uint64_t limit = 1000000;
    std::vector<uint8_t> composite(limit + 1, 0);
    composite[0] = composite[1] = 1;
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    for (uint64_t n = 0; n <= limit; ++n) {
        if (is_prime(n) == static_cast<bool>(composite[n])) {
            FAIL("is_prime disagrees with sieve at n = " << n);
        }
    }
    SUCCEED();
}

TEST_CASE("common primitive root is the smallest one") {
    // Frozen from the iteration oracle below.
    CHECK(common_primitive_root(3, 5) == 2);
    CHECK(common_primitive_root(5, 7) == 3);
    CHECK(common_primitive_root(3, 7) == 5);

    for (auto [p, q] : {std::pair<uint64_t, uint64_t>{3, 5}, {5, 7}, {3, 7}, {11, 13}, {17, 19}}) {
        const uint64_t g = common_primitive_root(p, q);
        CHECK(order_by_iteration(g % p, p) == p - 1);
        CHECK(order_by_iteration(g % q, q) == q - 1);
        // Nothing smaller qualifies.
        for (uint64_t c = 2; c < g; ++c) {
            if (c % p == 0 || c % q == 0) continue;
            const bool both = order_by_iteration(c % p, p) == p - 1 &&
                              order_by_iteration(c % q, q) == q - 1;
            CHECK_FALSE(both);
        }
    }
}

TEST_CASE("crt_lift pinned examples") {
    CHECK(crt_lift(3, 5, 2, 1) == 11);
    CHECK(crt_lift(3, 5, 0, 0) == 0);
    CHECK(crt_lift(5, 7, 3, 1) == 8);
}

TEST_CASE("crt_lift is a bijection Z_p x Z_q -> Z_pq") {
    for (auto [p, q] : {std::pair<uint64_t, uint64_t>{3, 5}, {5, 7}, {11, 13}, {29, 31}}) {
        std::set<uint64_t> seen;
        for (uint64_t a = 0; a < p; ++a) {
            for (uint64_t b = 0; b < q; ++b) {
                const uint64_t y = crt_lift(p, q, a, b);
                REQUIRE(y < p * q);
                REQUIRE(y % p == a);
                REQUIRE(y % q == b);
                seen.insert(y);
            }
        }
        CHECK(seen.size() == p * q);
    }
}

TEST_CASE("make_params pinned examples") {
    const PeriodParams pp = make_params(3, 5);
    CHECK(pp.p == 3);
    CHECK(pp.q == 5);
    CHECK(pp.N == 15);
    CHECK(pp.e == 4);
    CHECK(pp.g == 2);
    CHECK(pp.x == 11);

    const PeriodParams pp2 = make_params(5, 7);
    CHECK(pp2.N == 35);
    CHECK(pp2.e == 12);
    CHECK(pp2.g == 3);
    CHECK(pp2.x == 8);
}

TEST_CASE("make_params rejects invalid input") {
    CHECK_THROWS_AS(make_params(5, 13), invalid_params); // gcd(4,12) = 4
    CHECK_THROWS_AS(make_params(4, 5), invalid_params);  // 4 not prime
    CHECK_THROWS_AS(make_params(5, 3), invalid_params);  // p >= q
    CHECK_THROWS_AS(make_params(5, 5), invalid_params);
    CHECK_THROWS_AS(make_params(2, 5), invalid_params);  // even prime
    CHECK_THROWS_AS(make_params(3, 5, 7), invalid_params); // 7 = 1 mod 3, not a primitive root
}

TEST_CASE("make_params accepts a valid g override") {
    // 8 = 2 (mod 3) and 3 (mod 5): primitive root of both.
    const PeriodParams pp = make_params(3, 5, 8);
    CHECK(pp.g == 8);
    CHECK(pp.x == crt_lift(3, 5, 8 % 3, 1));
    CHECK(order_by_iteration(pp.g % 3, 3) == 2);
    CHECK(order_by_iteration(pp.g % 5, 5) == 4);
}

TEST_CASE("params invariants across accepted pairs") {
    for (auto [p, q] : {std::pair<uint64_t, uint64_t>{3, 5}, {5, 7}, {11, 13}, {17, 19},
                        {29, 31}, {3, 7}, {3, 11}, {7, 11}}) {
        const PeriodParams pp = make_params(p, q);
        CHECK(pp.N == p * q);
        CHECK(pp.e == (p - 1) * (q - 1) / 2);
        CHECK(pp.e % 2 == 0);
        CHECK(std::gcd(p - 1, q - 1) == 2);
        CHECK(pp.x % p == pp.g % p);
        CHECK(pp.x % q == 1);
        CHECK(order_by_iteration(pp.g % p, p) == p - 1);
        CHECK(order_by_iteration(pp.g % q, q) == q - 1);
    }
}
