#include "ecaliquot/eisenstein.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ecaliquot {

namespace {

i64 narrow(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw std::overflow_error("EisensteinInt: coefficient overflow");
    return static_cast<i64>(v);
}

i128 mul_checked(i128 x, i128 y) {
    i128 r;
    if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("EisensteinInt: product overflow");
    return r;
}

i128 add_checked(i128 x, i128 y) {
    i128 r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("EisensteinInt: sum overflow");
    return r;
}

// Round u/n to nearest (n > 0), halves toward zero.
i128 round_div(i128 u, i128 n) {
    bool negative = u < 0;
    i128 mag = negative ? -u : u;
    i128 q = mag / n;
    i128 rem = mag % n;
    if (2 * rem > n) ++q;
    return negative ? -q : q;
}

i64 mod3(i64 v) { return ((v % 3) + 3) % 3; }

}  // namespace

EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) {
    return {narrow(static_cast<i128>(x.a) + y.a), narrow(static_cast<i128>(x.b) + y.b)};
}

EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) {
    return {narrow(static_cast<i128>(x.a) - y.a), narrow(static_cast<i128>(x.b) - y.b)};
}

EisensteinInt operator-(const EisensteinInt& x) { return EisensteinInt{} - x; }

EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
    i128 ac = static_cast<i128>(x.a) * y.a;
    i128 bd = static_cast<i128>(x.b) * y.b;
    i128 ad = static_cast<i128>(x.a) * y.b;
    i128 bc = static_cast<i128>(x.b) * y.a;
    return {narrow(ac - bd), narrow(add_checked(add_checked(ad, bc), bd))};
}

i128 norm(const EisensteinInt& x) {
    i128 a = x.a, b = x.b;
    return add_checked(add_checked(mul_checked(a, a), mul_checked(a, b)), mul_checked(b, b));
}

i64 trace(const EisensteinInt& x) { return narrow(2 * static_cast<i128>(x.a) + x.b); }

EisensteinInt conj(const EisensteinInt& x) {
    return {narrow(static_cast<i128>(x.a) + x.b), narrow(-static_cast<i128>(x.b))};
}

DivResult euclidean_div(const EisensteinInt& x, const EisensteinInt& m) {
    if (m.is_zero()) throw std::domain_error("euclidean_div: zero modulus");
    // x * conj(m) = u + v*w, computed in 128 bits.
    i128 c = static_cast<i128>(m.a) + m.b, d = -static_cast<i128>(m.b);
    i128 u = mul_checked(x.a, c) - mul_checked(x.b, d);
    i128 v = add_checked(add_checked(mul_checked(x.a, d), mul_checked(x.b, c)), mul_checked(x.b, d));
    i128 n = norm(m);
    EisensteinInt q{narrow(round_div(u, n)), narrow(round_div(v, n))};
    return {q, x - q * m};
}

bool divides(const EisensteinInt& m, const EisensteinInt& x, EisensteinInt* q) {
    if (m.is_zero()) return x.is_zero();
    auto [quot, rem] = euclidean_div(x, m);
    if (!rem.is_zero()) return false;
    if (q) *q = quot;
    return true;
}

bool congruent_mod3(const EisensteinInt& x, const EisensteinInt& y) {
    return mod3(x.a) == mod3(y.a) && mod3(x.b) == mod3(y.b);
}

bool is_primary(const EisensteinInt& x) { return mod3(x.a) == 2 && mod3(x.b) == 0; }

EisensteinInt primary_associate(const EisensteinInt& x) {
    for (int e = 0; e < 6; ++e) {
        EisensteinInt y = Unit6(e).value() * x;
        if (is_primary(y)) return y;
    }
    throw std::domain_error("primary_associate: element not coprime to 3");
}

std::string to_string(const EisensteinInt& x) {
    std::ostringstream os;
    os << x.a;
    if (x.b < 0)
        os << "-" << static_cast<u64>(-(x.b + 1)) + 1;
    else
        os << "+" << x.b;
    os << "*w";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const EisensteinInt& x) { return os << to_string(x); }

EisensteinInt Unit6::value() const {
    static constexpr EisensteinInt table[6] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
    return table[exp_];
}

Unit6 Unit6::from_value(const EisensteinInt& x) {
    for (int e = 0; e < 6; ++e)
        if (Unit6(e).value() == x) return Unit6(e);
    throw std::domain_error("Unit6: element is not a unit");
}

std::string to_string(Unit6 u) { return "w^" + std::to_string(u.exp()); }

std::ostream& operator<<(std::ostream& os, Unit6 u) { return os << to_string(u); }

PrimeIdealK PrimeIdealK::split(const EisensteinInt& generator) {
    i128 n = norm(generator);
    if (n > static_cast<i128>(std::numeric_limits<u64>::max() / 4))
        throw std::domain_error("PrimeIdealK: norm too large");
    u64 p = static_cast<u64>(n);
    if (p % 3 != 1 || !is_prime(p)) throw std::domain_error("PrimeIdealK: generator is not a split prime");
    return {Kind::split, primary_associate(generator), p, p};
}

PrimeIdealK PrimeIdealK::above(u64 p) { return split(primary_split(p)); }

PrimeIdealK PrimeIdealK::inert(u64 k) {
    if (k % 3 != 2 || !is_prime(k)) throw std::domain_error("PrimeIdealK: not an inert prime");
    if (k > 0xFFFFFFFFull) throw std::domain_error("PrimeIdealK: inert prime too large");
    return {Kind::inert, EisensteinInt(static_cast<i64>(k)), k * k, k};
}

PrimeIdealK PrimeIdealK::conj() const {
    if (kind_ == Kind::inert) return *this;
    return split(ecaliquot::conj(generator_));
}

bool PrimeIdealK::contains(const EisensteinInt& x) const {
    return ResidueField(*this).reduce(x) == 0;
}

std::string to_string(const PrimeIdealK& m) { return "(" + to_string(m.generator()) + ")"; }

namespace {

// Cornacchia for x^2 + 3y^2 = p.
std::pair<u64, u64> cornacchia3(u64 p) {
    auto root = sqrt_mod(p - 3, p);
    if (!root) throw std::domain_error("primary_split: -3 is not a square");
    for (u64 r0 : {*root, p - *root}) {
        u64 a = p, b = r0;
        u64 bound = isqrt(p);
        while (b > bound) {
            u64 t = a % b;
            a = b;
            b = t;
        }
        u64 rest = p - b * b;
        if (rest % 3 != 0) continue;
        u64 y = isqrt(rest / 3);
        if (3 * y * y == rest) return {b, y};
    }
    throw std::logic_error("primary_split: Cornacchia failed");
}

}  // namespace

EisensteinInt primary_split(u64 p) {
    if (!is_prime(p) || p % 3 != 1) throw std::domain_error("primary_split: p must be a prime = 1 mod 3");
    if (p > (1ull << 62)) throw std::domain_error("primary_split: p too large");
    auto [x, y] = cornacchia3(p);
    // x + y*sqrt(-3) with sqrt(-3) = 2w - 1.
    EisensteinInt pi{static_cast<i64>(x) - static_cast<i64>(y), 2 * static_cast<i64>(y)};
    return primary_associate(pi);
}

ResidueField::ResidueField(const PrimeIdealK& ideal) {
    ch_ = ideal.characteristic();
    size_ = ideal.residue_norm();
    inert_ = ideal.kind() == PrimeIdealK::Kind::inert;
    if (!inert_) {
        const auto& g = ideal.generator();
        u64 ga = reduce_signed(g.a, ch_), gb = reduce_signed(g.b, ch_);
        omega_image_ = submod(0, mulmod(ga, invmod(gb, ch_), ch_), ch_);
    }
    for (int e = 0; e < 6; ++e) unit_images_[e] = reduce(Unit6(e).value());
}

ResidueField::Elem ResidueField::reduce(const EisensteinInt& x) const {
    u64 a = reduce_signed(x.a, ch_), b = reduce_signed(x.b, ch_);
    if (inert_) return a + b * ch_;
    return addmod(a, mulmod(b, omega_image_, ch_), ch_);
}

ResidueField::Elem ResidueField::from_integer(i64 n) const { return reduce_signed(n, ch_); }

ResidueField::Elem ResidueField::add(Elem x, Elem y) const {
    if (!inert_) return addmod(x, y, ch_);
    return addmod(x % ch_, y % ch_, ch_) + addmod(x / ch_, y / ch_, ch_) * ch_;
}

ResidueField::Elem ResidueField::sub(Elem x, Elem y) const {
    if (!inert_) return submod(x, y, ch_);
    return submod(x % ch_, y % ch_, ch_) + submod(x / ch_, y / ch_, ch_) * ch_;
}

ResidueField::Elem ResidueField::mul(Elem x, Elem y) const {
    if (!inert_) return mulmod(x, y, ch_);
    u64 a = x % ch_, b = x / ch_, c = y % ch_, d = y / ch_;
    u64 bd = mulmod(b, d, ch_);
    u64 re = submod(mulmod(a, c, ch_), bd, ch_);
    u64 im = addmod(addmod(mulmod(a, d, ch_), mulmod(b, c, ch_), ch_), bd, ch_);
    return re + im * ch_;
}

ResidueField::Elem ResidueField::inv(Elem x) const {
    if (x == 0) throw std::domain_error("ResidueField: zero has no inverse");
    if (!inert_) return invmod(x, ch_);
    // 1/x = conj(x)/N(x).
    u64 a = x % ch_, b = x / ch_;
    u64 n = addmod(addmod(mulmod(a, a, ch_), mulmod(a, b, ch_), ch_), mulmod(b, b, ch_), ch_);
    u64 ninv = invmod(n, ch_);
    u64 ca = addmod(a, b, ch_), cb = submod(0, b, ch_);
    return mulmod(ca, ninv, ch_) + mulmod(cb, ninv, ch_) * ch_;
}

ResidueField::Elem ResidueField::pow(Elem x, u64 e) const {
    Elem result = one();
    while (e) {
        if (e & 1) result = mul(result, x);
        x = mul(x, x);
        e >>= 1;
    }
    return result;
}

Unit6 ResidueField::symbol(Elem x) const {
    if (x == 0) throw std::domain_error("residue symbol: element not coprime to modulus");
    if ((size_ - 1) % 6 != 0) throw std::domain_error("residue symbol: norm must be 1 mod 6");
    Elem t = pow(x, (size_ - 1) / 6);
    for (int e = 0; e < 6; ++e)
        if (unit_images_[e] == t) return Unit6(e);
    throw std::logic_error("residue symbol: power is not a sixth root of unity");
}

Unit6 sextic_symbol(const EisensteinInt& alpha, const PrimeIdealK& m) {
    ResidueField field(m);
    return field.symbol(field.reduce(alpha));
}

Unit6 cubic_symbol(const EisensteinInt& alpha, const PrimeIdealK& m) { return sextic_symbol(alpha, m).pow(2); }

Unit6 quadratic_symbol(const EisensteinInt& alpha, const PrimeIdealK& m) { return sextic_symbol(alpha, m).pow(3); }

std::vector<std::pair<PrimeIdealK, int>> factor_rational(i64 k) {
    if (k == 0) throw std::domain_error("factor_rational: zero");
    u64 mag = k < 0 ? static_cast<u64>(-(k + 1)) + 1 : static_cast<u64>(k);
    std::vector<std::pair<PrimeIdealK, int>> out;
    if (mag == 1) return out;
    for (auto [ell, e] : factorize(mag)) {
        if (ell == 3) throw std::domain_error("factor_rational: 3 ramifies");
        if (ell % 3 == 2) {
            out.emplace_back(PrimeIdealK::inert(ell), e);
        } else {
            auto P = PrimeIdealK::above(ell);
            out.emplace_back(P, e);
            out.emplace_back(P.conj(), e);
        }
    }
    return out;
}

std::vector<std::pair<PrimeIdealK, int>> factor_ideal(const EisensteinInt& x) {
    if (x.is_zero()) throw std::domain_error("factor_ideal: zero");
    i128 n = norm(x);
    if (n > static_cast<i128>(std::numeric_limits<u64>::max()))
        throw std::domain_error("factor_ideal: norm too large");
    std::vector<std::pair<PrimeIdealK, int>> out;
    if (n == 1) return out;
    for (auto [ell, f] : factorize(static_cast<u64>(n))) {
        if (ell == 3) throw std::domain_error("factor_ideal: 3 ramifies");
        if (ell % 3 == 2) {
            out.emplace_back(PrimeIdealK::inert(ell), f / 2);
            continue;
        }
        auto P = PrimeIdealK::above(ell);
        int e = 0;
        EisensteinInt rest = x;
        EisensteinInt q;
        while (e < f && divides(P.generator(), rest, &q)) {
            rest = q;
            ++e;
        }
        if (e > 0) out.emplace_back(P, e);
        if (f - e > 0) out.emplace_back(P.conj(), f - e);
    }
    return out;
}

namespace {

Unit6 to_degree(Unit6 sextic, int degree) {
    switch (degree) {
        case 6: return sextic;
        case 3: return sextic.pow(2);
        case 2: return sextic.pow(3);
        default: throw std::domain_error("symbol degree must be 2, 3 or 6");
    }
}

Unit6 product_symbol(const EisensteinInt& alpha, const std::vector<std::pair<PrimeIdealK, int>>& factors) {
    Unit6 acc = Unit6::one();
    for (const auto& [P, e] : factors) acc = acc * sextic_symbol(alpha, P).pow(e);
    return acc;
}

}  // namespace

Unit6 symbol_composite(const EisensteinInt& alpha, i64 k, int degree) {
    if (k % 2 == 0 || k % 3 == 0) throw std::domain_error("symbol_composite: gcd(6, k) must be 1");
    return to_degree(product_symbol(alpha, factor_rational(k)), degree);
}

Unit6 symbol_mod_element(const EisensteinInt& alpha, const EisensteinInt& lambda, int degree) {
    return to_degree(product_symbol(alpha, factor_ideal(lambda)), degree);
}

ReciprocityCheck reciprocity_pair(i64 k, const EisensteinInt& lambda) {
    if (k % 2 == 0 || k % 3 == 0) throw std::domain_error("reciprocity_pair: gcd(6, k) must be 1");
    i128 n = norm(lambda);
    if (n % 2 == 0 || n % 3 == 0) throw std::domain_error("reciprocity_pair: lambda not coprime to 6");
    u64 kmag = k < 0 ? static_cast<u64>(-k) : static_cast<u64>(k);
    if (std::gcd(static_cast<u64>(n % kmag), kmag) != 1 && kmag != 1)
        throw std::domain_error("reciprocity_pair: lambda not coprime to k");

    ReciprocityCheck out;
    out.quadratic_lhs = symbol_mod_element(EisensteinInt(k), lambda, 2);
    bool flip = (((n - 1) / 2) % 2 != 0) && ((((k - 1) / 2) % 2) != 0);
    out.quadratic_rhs = symbol_composite(lambda, k, 2) * (flip ? Unit6::minus_one() : Unit6::one());

    Unit6 zeta = Unit6::one();
    for (int e : {0, 2, 4}) {
        EisensteinInt u = Unit6(e).value() * lambda;
        if (congruent_mod3(u, 1) || congruent_mod3(u, -1)) {
            zeta = Unit6(e);
            break;
        }
    }
    out.cubic_lhs = symbol_mod_element(EisensteinInt(k), lambda, 3);
    out.cubic_rhs = symbol_composite(zeta.value(), k, 3) * symbol_composite(lambda, k, 3);
    return out;
}

}  // namespace ecaliquot
