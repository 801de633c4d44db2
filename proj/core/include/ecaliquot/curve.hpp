#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ecaliquot/modular.hpp"

namespace ecaliquot {

using BigInt = boost::multiprecision::cpp_int;

// Least nonnegative residue of an arbitrary-precision integer.
u64 mod_big(const BigInt& v, u64 m);

// y^2 + a1*xy + a3*y = x^3 + a2*x^2 + a4*x + a6 over Q.
class CurveQ {
public:
    // Throws std::invalid_argument for a singular model.
    CurveQ(BigInt a1, BigInt a2, BigInt a3, BigInt a4, BigInt a6);

    static CurveQ short_form(BigInt a4, BigInt a6) { return {0, 0, 0, std::move(a4), std::move(a6)}; }

    // Accepts "[a1,a2,a3,a4,a6]", "x^3+k" / "x^3-k", and "x^3+a*x+b" style short forms.
    static CurveQ parse(std::string_view text);

    const std::array<BigInt, 5>& coefficients() const { return a_; }
    const BigInt& a1() const { return a_[0]; }
    const BigInt& a2() const { return a_[1]; }
    const BigInt& a3() const { return a_[2]; }
    const BigInt& a4() const { return a_[3]; }
    const BigInt& a6() const { return a_[4]; }

    const BigInt& b2() const { return b2_; }
    const BigInt& b4() const { return b4_; }
    const BigInt& b6() const { return b6_; }
    const BigInt& b8() const { return b8_; }
    const BigInt& c4() const { return c4_; }
    const BigInt& c6() const { return c6_; }
    const BigInt& discriminant() const { return disc_; }

    // k when the model is exactly y^2 = x^3 + k and k fits in 62 bits.
    std::optional<i64> j0_parameter() const;

    // "[a1,a2,a3,a4,a6]"
    std::string to_string() const;

    friend bool operator==(const CurveQ& x, const CurveQ& y) { return x.a_ == y.a_; }

private:
    std::array<BigInt, 5> a_;
    BigInt b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

// Reduction of a CurveQ at a prime. The short model y^2 = x^3 + A x + B is
// isomorphic to the reduction when p >= 5 and the reduction is good.
struct CurveFp {
    u64 p = 0;
    std::array<u64, 5> a{};  // a1, a2, a3, a4, a6 mod p
    u64 b2 = 0, b4 = 0, b6 = 0;
    u64 A = 0, B = 0;
    bool good = false;
};

CurveFp reduce(const CurveQ& E, u64 p);

// y^2 = x^3 + a*x + b over F_p, p >= 5.
CurveFp short_curve_fp(u64 p, u64 a, u64 b);

// Affine point on a short model, or the point at infinity.
struct PointFp {
    u64 x = 0;
    u64 y = 0;
    bool infinity = true;

    static PointFp at_infinity() { return {}; }
    static PointFp affine(u64 x, u64 y) { return {x, y, false}; }
    friend bool operator==(const PointFp&, const PointFp&) = default;
};

// Group law on y^2 = x^3 + A x + B over F_p (p >= 5).
class ShortCurve {
public:
    ShortCurve(u64 p, u64 A, u64 B) : p_(p), A_(A % p), B_(B % p) {}
    explicit ShortCurve(const CurveFp& E) : ShortCurve(E.p, E.A, E.B) {}

    u64 p() const { return p_; }
    u64 A() const { return A_; }
    u64 B() const { return B_; }

    u64 rhs(u64 x) const;
    bool on_curve(const PointFp& P) const;
    PointFp neg(const PointFp& P) const;
    PointFp add(const PointFp& P, const PointFp& Q) const;
    PointFp dbl(const PointFp& P) const;
    PointFp mul(PointFp P, u64 n) const;

private:
    u64 p_, A_, B_;
};

}  // namespace ecaliquot
