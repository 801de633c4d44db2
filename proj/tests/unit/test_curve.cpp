#include <doctest.h>

#include <stdexcept>

#include <random>

#include "ecaliquot/curve.hpp"
#include "ecaliquot/point_count.hpp"

using namespace ecaliquot;

TEST_CASE("invariants of small curves") {
    CurveQ e37(0, 0, 1, -1, 0);
    CHECK(e37.discriminant() == 37);
    CHECK(e37.c4() == 48);
    CurveQ e43(0, 1, 1, 0, 0);
    CHECK(e43.discriminant() == -43);
    CurveQ j0 = CurveQ::short_form(0, 2);
    CHECK(j0.discriminant() == -16 * 27 * 4);
    CHECK(j0.j0_parameter() == 2);
    CHECK_FALSE(e43.j0_parameter());
    CHECK_THROWS_AS(CurveQ::short_form(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(CurveQ::short_form(-3, 2), std::invalid_argument);
}

TEST_CASE("parse accepts the documented spellings") {
    CHECK(CurveQ::parse("[0,1,1,0,0]") == CurveQ(0, 1, 1, 0, 0));
    CHECK(CurveQ::parse("x^3+2") == CurveQ::short_form(0, 2));
    CHECK(CurveQ::parse("y^2=x^3-25x-8") == CurveQ::short_form(-25, -8));
    CHECK(CurveQ::parse("x^3-25*x-8") == CurveQ::short_form(-25, -8));
    CHECK(CurveQ::parse(" [ 0 , -1 , 1 , -7 , 10 ] ").to_string() == "[0,-1,1,-7,10]");
    CHECK(CurveQ::parse("[0,0,0,176209333661915432764478,60625229794681596832262]").a4() ==
          BigInt("176209333661915432764478"));
    CHECK_THROWS(CurveQ::parse("banana"));
    CHECK_THROWS(CurveQ::parse("[1,2,3]"));
}

TEST_CASE("mod_big handles negatives and huge values") {
    CHECK(mod_big(BigInt(-1), 7) == 6);
    CHECK(mod_big(BigInt("100000000000000000000000000007"), 10) == 7);
}

TEST_CASE("reduction keeps the point count") {
    // Short model against a direct count of the long Weierstrass equation.
    CurveQ E(1, -1, 1, -3, 5);
    for (u64 p : primes_up_to(300)) {
        if (p < 5) continue;
        auto R = reduce(E, p);
        if (!R.good) continue;
        u64 direct = 1;
        for (u64 x = 0; x < p; ++x)
            for (u64 y = 0; y < p; ++y) {
                u64 lhs = (y * y + R.a[0] * x % p * y + R.a[2] * y) % p;
                u64 rhs = (x * x % p * x + R.a[1] * x % p * x + R.a[3] * x + R.a[4]) % p;
                direct += lhs == rhs;
            }
        ShortCurve S(R);
        u64 shortcount = 1;
        for (u64 x = 0; x < p; ++x) {
            u64 r = S.rhs(x);
            shortcount += r == 0 ? 1 : (legendre(r, p) == 1 ? 2 : 0);
        }
        CHECK(direct == shortcount);
    }
}

TEST_CASE("group law") {
    std::mt19937_64 rng(9);
    for (u64 p : {101ULL, 1009ULL, 65537ULL}) {
        ShortCurve S(p, 3, 7);
        auto random_point = [&] {
            for (;;) {
                u64 x = rng() % p;
                if (auto y = sqrt_mod(S.rhs(x), p)) return PointFp::affine(x, *y);
            }
        };
        const u64 n = count_points(short_curve_fp(p, 3, 7));
        for (int i = 0; i < 30; ++i) {
            auto P = random_point(), Q = random_point(), R = random_point();
            CHECK(S.on_curve(S.add(P, Q)));
            CHECK(S.add(S.add(P, Q), R) == S.add(P, S.add(Q, R)));
            CHECK(S.add(P, Q) == S.add(Q, P));
            CHECK(S.add(P, S.neg(P)).infinity);
            CHECK(S.dbl(P) == S.add(P, P));
            CHECK(S.mul(P, 5) == S.add(S.dbl(S.dbl(P)), P));
            CHECK(S.mul(P, n).infinity);
        }
    }
}
