#include "ecaliquot/curve.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace ecaliquot {

u64 mod_big(const BigInt& v, u64 m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r.convert_to<u64>();
}

CurveQ::CurveQ(BigInt a1, BigInt a2, BigInt a3, BigInt a4, BigInt a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
    const auto& [c1, c2, c3, c4c, c6c] = a_;
    b2_ = c1 * c1 + 4 * c2;
    b4_ = 2 * c4c + c1 * c3;
    b6_ = c3 * c3 + 4 * c6c;
    b8_ = c1 * c1 * c6c + 4 * c2 * c6c - c1 * c3 * c4c + c2 * c3 * c3 - c4c * c4c;
    c4_ = b2_ * b2_ - 24 * b4_;
    c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
    disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
    if (disc_ == 0) throw std::invalid_argument("CurveQ: singular Weierstrass model");
}

std::optional<i64> CurveQ::j0_parameter() const {
    for (int i = 0; i < 4; ++i)
        if (a_[i] != 0) return std::nullopt;
    const BigInt limit = BigInt(1) << 62;
    if (a_[4] >= limit || a_[4] <= -limit) return std::nullopt;
    return a_[4].convert_to<i64>();
}

std::string CurveQ::to_string() const {
    std::string out = "[";
    for (int i = 0; i < 5; ++i) {
        if (i) out += ",";
        out += a_[i].str();
    }
    return out + "]";
}

namespace {

std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

BigInt parse_integer(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("curve literal: empty integer");
    std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("curve literal: bad integer '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("curve literal: bad integer '" + s + "'");
    BigInt v(s.substr(start));
    return s[0] == '-' ? BigInt(-v) : v;
}

// Short polynomial in x: x^3 plus optional x and constant terms.
CurveQ parse_short(const std::string& poly) {
    std::vector<std::string> terms;
    std::string cur;
    for (char c : poly) {
        if ((c == '+' || c == '-') && !cur.empty() && cur.back() != '^') {
            terms.push_back(cur);
            cur.clear();
        }
        cur += c;
    }
    if (!cur.empty()) terms.push_back(cur);

    bool cubic = false;
    BigInt a4 = 0, a6 = 0;
    for (std::string t : terms) {
        std::string sign;
        if (t[0] == '+' || t[0] == '-') {
            sign = t.substr(0, 1);
            t = t.substr(1);
        }
        if (t == "x^3") {
            if (sign == "-" || cubic) throw std::invalid_argument("curve literal: bad cubic term");
            cubic = true;
        } else if (!t.empty() && t.back() == 'x') {
            std::string coef = t.substr(0, t.size() - 1);
            if (!coef.empty() && coef.back() == '*') coef.pop_back();
            a4 += parse_integer(sign + (coef.empty() ? "1" : coef));
        } else {
            a6 += parse_integer(sign + t);
        }
    }
    if (!cubic) throw std::invalid_argument("curve literal: missing x^3");
    return CurveQ::short_form(a4, a6);
}

}  // namespace

CurveQ CurveQ::parse(std::string_view text) {
    std::string s = strip_spaces(text);
    if (s.empty()) throw std::invalid_argument("curve literal: empty");
    if (s.front() == '[') {
        if (s.back() != ']') throw std::invalid_argument("curve literal: missing ']'");
        std::vector<BigInt> coeffs;
        std::string cur;
        for (std::size_t i = 1; i + 1 < s.size(); ++i) {
            if (s[i] == ',') {
                coeffs.push_back(parse_integer(cur));
                cur.clear();
            } else {
                cur += s[i];
            }
        }
        coeffs.push_back(parse_integer(cur));
        if (coeffs.size() != 5) throw std::invalid_argument("curve literal: expected five coefficients");
        return {coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]};
    }
    if (s.rfind("y^2=", 0) == 0) s = s.substr(4);
    return parse_short(s);
}

CurveFp reduce(const CurveQ& E, u64 p) {
    CurveFp out;
    out.p = p;
    for (int i = 0; i < 5; ++i) out.a[i] = mod_big(E.coefficients()[i], p);
    out.b2 = mod_big(E.b2(), p);
    out.b4 = mod_big(E.b4(), p);
    out.b6 = mod_big(E.b6(), p);
    out.good = mod_big(E.discriminant(), p) != 0;
    if (p >= 5) {
        out.A = mod_big(-27 * E.c4(), p);
        out.B = mod_big(-54 * E.c6(), p);
    }
    return out;
}

CurveFp short_curve_fp(u64 p, u64 a, u64 b) {
    if (p < 5) throw std::domain_error("short_curve_fp: p must be >= 5");
    CurveFp out;
    out.p = p;
    a %= p;
    b %= p;
    out.a = {0, 0, 0, a, b};
    out.b2 = 0;
    out.b4 = mulmod(2, a, p);
    out.b6 = mulmod(4, b, p);
    out.A = a;
    out.B = b;
    // 4a^3 + 27b^2 != 0
    u64 d = addmod(mulmod(4, mulmod(a, mulmod(a, a, p), p), p), mulmod(27, mulmod(b, b, p), p), p);
    out.good = d != 0;
    return out;
}

u64 ShortCurve::rhs(u64 x) const {
    return addmod(mulmod(addmod(mulmod(x, x, p_), A_, p_), x, p_), B_, p_);
}

bool ShortCurve::on_curve(const PointFp& P) const {
    return P.infinity || mulmod(P.y, P.y, p_) == rhs(P.x);
}

PointFp ShortCurve::neg(const PointFp& P) const {
    if (P.infinity) return P;
    return PointFp::affine(P.x, submod(0, P.y, p_));
}

PointFp ShortCurve::dbl(const PointFp& P) const {
    if (P.infinity || P.y == 0) return PointFp::at_infinity();
    u64 num = addmod(mulmod(3, mulmod(P.x, P.x, p_), p_), A_, p_);
    u64 lam = mulmod(num, invmod(addmod(P.y, P.y, p_), p_), p_);
    u64 x3 = submod(mulmod(lam, lam, p_), addmod(P.x, P.x, p_), p_);
    u64 y3 = submod(mulmod(lam, submod(P.x, x3, p_), p_), P.y, p_);
    return PointFp::affine(x3, y3);
}

PointFp ShortCurve::add(const PointFp& P, const PointFp& Q) const {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    if (P.x == Q.x) {
        if (addmod(P.y, Q.y, p_) == 0) return PointFp::at_infinity();
        return dbl(P);
    }
    u64 lam = mulmod(submod(Q.y, P.y, p_), invmod(submod(Q.x, P.x, p_), p_), p_);
    u64 x3 = submod(submod(mulmod(lam, lam, p_), P.x, p_), Q.x, p_);
    u64 y3 = submod(mulmod(lam, submod(P.x, x3, p_), p_), P.y, p_);
    return PointFp::affine(x3, y3);
}

PointFp ShortCurve::mul(PointFp P, u64 n) const {
    PointFp R = PointFp::at_infinity();
    while (n) {
        if (n & 1) R = add(R, P);
        n >>= 1;
        if (n) P = dbl(P);
    }
    return R;
}

}  // namespace ecaliquot
