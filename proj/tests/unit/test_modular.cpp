#include <doctest.h>

#include <stdexcept>

#include <random>

#include "ecaliquot/modular.hpp"

using namespace ecaliquot;

namespace {

std::vector<bool> sieve(u64 n) {
    std::vector<bool> is(n + 1, true);
    is[0] = is[1] = false;
    for (u64 i = 2; i * i <= n; ++i)
        if (is[i])
            for (u64 j = i * i; j <= n; j += i) is[j] = false;
    return is;
}

}  // namespace

TEST_CASE("mulmod and powmod agree with 128-bit arithmetic") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        u64 m = rng() | 1, a = rng() % m, b = rng() % m;
        CHECK(mulmod(a, b, m) == static_cast<u64>(static_cast<u128>(a) * b % m));
        u64 small = (rng() % 1000) + 2, e = rng() % 40;
        u64 expect = 1;
        for (u64 j = 0; j < e; ++j) expect = expect * (a % small) % small;
        CHECK(powmod(a, e, small) == expect);
    }
}

TEST_CASE("invmod") {
    CHECK(invmod(3, 7) == 5);
    CHECK_THROWS_AS(invmod(6, 9), std::domain_error);
    std::mt19937_64 rng(11);
    const u64 p = (1ULL << 61) - 1;
    for (int i = 0; i < 200; ++i) {
        u64 a = rng() % (p - 1) + 1;
        CHECK(mulmod(a, invmod(a, p), p) == 1);
    }
}

TEST_CASE("is_prime matches a sieve and known hard composites") {
    const auto table = sieve(200000);
    for (u64 n = 0; n <= 200000; ++n) REQUIRE(is_prime(n) == table[n]);
    CHECK(is_prime((1ULL << 61) - 1));
    CHECK_FALSE(is_prime(3215031751ULL));
    CHECK_FALSE(is_prime(3825123056546413051ULL));
    CHECK(is_prime(18446744073709551557ULL));
}

TEST_CASE("legendre follows Euler's criterion, sqrt_mod squares back") {
    for (u64 p : {3ULL, 5ULL, 13ULL, 101ULL, 1000003ULL}) {
        for (u64 a = 0; a < std::min<u64>(p, 300); ++a) {
            u64 e = powmod(a, (p - 1) / 2, p);
            int expect = a == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(legendre(a, p) == expect);
            auto r = sqrt_mod(a, p);
            CHECK(r.has_value() == (expect >= 0));
            if (r) CHECK(mulmod(*r, *r, p) == a);
        }
    }
}

TEST_CASE("isqrt is the floor square root") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5000; ++i) {
        u64 n = rng() >> (rng() % 64);
        u64 r = isqrt(n);
        CHECK(static_cast<u128>(r) * r <= n);
        CHECK(static_cast<u128>(r + 1) * (r + 1) > n);
    }
    CHECK(isqrt(UINT64_MAX) == 4294967295ULL);
}

TEST_CASE("segmented sieve agrees with the simple one") {
    const auto all = primes_up_to(1000000);
    CHECK(all.size() == 78498);
    auto part = primes_in_range(123456, 987654);
    std::vector<u64> expect;
    for (u64 p : all)
        if (p >= 123456 && p <= 987654) expect.push_back(p);
    CHECK(part == expect);
    CHECK(primes_in_range(10, 9).empty());
    CHECK(next_prime(24) == 29);
    CHECK(next_prime(29) == 29);
}

TEST_CASE("factorize reconstructs n with prime factors") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        u64 n = (rng() >> (rng() % 50)) + 1;
        u64 prod = 1;
        u64 last = 0;
        for (auto [p, e] : factorize(n)) {
            CHECK(is_prime(p));
            CHECK(p > last);
            last = p;
            for (int j = 0; j < e; ++j) prod *= p;
        }
        CHECK(prod == n);
    }
    CHECK(factorize(1).empty());
    CHECK(hasse_width(79) == 17);
}
