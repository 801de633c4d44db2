#include <doctest.h>

#include <stdexcept>

#include "ecaliquot/curve.hpp"
#include "ecaliquot/eisenstein.hpp"
#include "ecaliquot/point_count.hpp"

using namespace ecaliquot;

namespace {

// Every (x, y) pair plus the point at infinity.
u64 brute_count(const CurveFp& R) {
    const u64 p = R.p;
    u64 n = 1;
    for (u64 x = 0; x < p; ++x)
        for (u64 y = 0; y < p; ++y) {
            u64 lhs = (y * y + R.a[0] * x % p * y + R.a[2] * y) % p;
            u64 rhs = (x * x % p * x + R.a[1] * x % p * x + R.a[3] * x + R.a[4]) % p;
            n += lhs == rhs;
        }
    return n;
}

}  // namespace

TEST_CASE("hand-checked counts") {
    CHECK(count_points_naive(reduce(CurveQ::short_form(0, 2), 13)) == 19);
    CHECK(count_points_naive(reduce(CurveQ::short_form(0, 2), 5)) == 6);
    CHECK(count_points_naive(reduce(CurveQ(0, 0, 1, -1, 0), 5)) == 8);
    CHECK(count_points_naive(reduce(CurveQ(0, 1, 1, 0, 0), 853)) == 883);
    CHECK(count_points_naive(reduce(CurveQ(0, 1, 1, 0, 0), 883)) == 853);
    CHECK_THROWS_AS(count_points_naive(reduce(CurveQ(0, 1, 1, 0, 0), 43)), std::domain_error);
}

TEST_CASE("naive count agrees with enumeration of all pairs, including p = 2, 3") {
    for (const CurveQ& E : {CurveQ(0, 0, 1, -1, 0), CurveQ(0, 1, 1, 0, 0), CurveQ(1, -1, 1, -3, 5),
                            CurveQ::short_form(-25, -8)}) {
        for (u64 p : primes_up_to(200)) {
            auto R = reduce(E, p);
            if (!R.good) continue;
            CHECK(count_points_naive(R) == brute_count(R));
        }
    }
}

TEST_CASE("baby-step giant-step matches the naive count") {
    for (const CurveQ& E : {CurveQ(0, 0, 1, -1, 0), CurveQ(0, 1, 1, 0, 0), CurveQ::short_form(-25, -8),
                            CurveQ::short_form(0, 7)}) {
        for (u64 p : primes_in_range(1000, 4000)) {
            auto R = reduce(E, p);
            if (!R.good) continue;
            REQUIRE(count_points_bsgs(R) == count_points_naive(R));
        }
    }
    // A few larger primes, cross-checked by the CM formula.
    for (u64 p : {1000003ULL, 10000019ULL, 1000000007ULL}) {
        auto R = reduce(CurveQ::short_form(0, 2), p);
        CHECK(count_points_bsgs(R) == count_points_cm_j0(2, p));
    }
}

TEST_CASE("Hasse bound") {
    const CurveQ E(1, -1, 1, -3, 5);
    for (u64 p : primes_in_range(5, 50000)) {
        PointCounter c(E);
        auto n = c.count(p);
        if (!n) continue;
        i64 t = static_cast<i64>(p) + 1 - static_cast<i64>(*n);
        CHECK(static_cast<u64>(t * t) <= 4 * p);
    }
}

TEST_CASE("CM formula for y^2 = x^3 + k") {
    CHECK(count_points_cm_j0(2, 13) == 19);
    CHECK(grossencharacter_j0(2, 13) == EisensteinInt(-4, 3));
    for (i64 k : {1, 2, 3, 5, 7, 11, -2, 16, 35}) {
        for (u64 p : primes_in_range(5, 3000)) {
            auto R = reduce(CurveQ::short_form(0, k), p);
            if (!R.good) continue;
            REQUIRE(count_points_cm_j0(k, p) == count_points_naive(R));
        }
    }
    // Supersingular primes
    CHECK(count_points_cm_j0(7, 101) == 102);
    // Grossencharacter is primary and has norm p
    for (u64 p : primes_in_range(7, 2000)) {
        if (p % 3 != 1) continue;
        auto psi = grossencharacter_j0(2, p);
        CHECK(norm(psi) == static_cast<i128>(p));
        CHECK(static_cast<u64>(static_cast<i64>(p) + 1 - trace(psi)) == count_points_cm_j0(2, p));
    }
}

TEST_CASE("PointCounter backends agree") {
    const CurveQ E = CurveQ::short_form(0, 5);
    PointCounter cm(E, Backend::cm), naive(E, Backend::naive), bsgs(E, Backend::bsgs);
    for (u64 p : primes_in_range(2, 20000)) {
        auto a = naive.count(p);
        CHECK(cm.count(p) == a);
        if (p > 3) CHECK(bsgs.count(p) == a);
    }
    CHECK_FALSE(naive.count(5).has_value());
    CHECK(parse_backend("bsgs") == Backend::bsgs);
    CHECK(to_string(Backend::cm) == "cm");
    CHECK_THROWS(parse_backend("schoof"));
}

TEST_CASE("torsion obstruction") {
    CHECK(torsion_obstruction(CurveQ::short_form(0, 1)));
    CHECK(torsion_obstruction(CurveQ::short_form(0, 16)) == true);
    CHECK_FALSE(torsion_obstruction(CurveQ::short_form(0, 2)));
    CHECK_FALSE(torsion_obstruction(CurveQ(0, 1, 1, 0, 0)));
}
