#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ecaliquot/modular.hpp"

namespace ecaliquot {

// a + b*w with w = (1 + sqrt(-3))/2, so w^2 = w - 1.
// Arithmetic throws std::overflow_error instead of wrapping.
struct EisensteinInt {
    i64 a = 0;
    i64 b = 0;

    constexpr EisensteinInt() = default;
    constexpr EisensteinInt(i64 re, i64 w = 0) : a(re), b(w) {}

    static constexpr EisensteinInt omega() { return {0, 1}; }
    constexpr bool is_zero() const { return a == 0 && b == 0; }

    friend constexpr bool operator==(const EisensteinInt&, const EisensteinInt&) = default;
};

EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt operator-(const EisensteinInt& x);
EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y);

i128 norm(const EisensteinInt& x);
i64 trace(const EisensteinInt& x);
EisensteinInt conj(const EisensteinInt& x);

struct DivResult {
    EisensteinInt quotient;
    EisensteinInt remainder;
};

// Nearest-lattice-point quotient, ties rounded toward zero per coordinate.
DivResult euclidean_div(const EisensteinInt& x, const EisensteinInt& m);

// True iff m divides x; sets *q to x/m when it does.
bool divides(const EisensteinInt& m, const EisensteinInt& x, EisensteinInt* q = nullptr);

bool congruent_mod3(const EisensteinInt& x, const EisensteinInt& y);

// x = 2 mod 3O_K.
bool is_primary(const EisensteinInt& x);

// The unique unit multiple of x that is 2 mod 3O_K. Throws if 3 | N(x).
EisensteinInt primary_associate(const EisensteinInt& x);

std::string to_string(const EisensteinInt& x);
std::ostream& operator<<(std::ostream& os, const EisensteinInt& x);

// Sixth root of unity w^e.
class Unit6 {
public:
    constexpr Unit6() = default;
    constexpr explicit Unit6(int e) : exp_(((e % 6) + 6) % 6) {}

    static constexpr Unit6 one() { return Unit6(0); }
    static constexpr Unit6 minus_one() { return Unit6(3); }

    constexpr int exp() const { return exp_; }
    constexpr Unit6 inverse() const { return Unit6(-exp_); }
    constexpr Unit6 conj() const { return inverse(); }
    constexpr Unit6 pow(int n) const { return Unit6(exp_ * (((n % 6) + 6) % 6)); }
    constexpr bool in_mu3() const { return exp_ % 2 == 0; }
    constexpr bool in_mu2() const { return exp_ % 3 == 0; }

    EisensteinInt value() const;

    // Inverse of value(); throws if x is not a unit.
    static Unit6 from_value(const EisensteinInt& x);

    friend constexpr Unit6 operator*(Unit6 x, Unit6 y) { return Unit6(x.exp_ + y.exp_); }
    friend constexpr bool operator==(Unit6, Unit6) = default;

private:
    int exp_ = 0;
};

std::string to_string(Unit6 u);
std::ostream& operator<<(std::ostream& os, Unit6 u);

class PrimeIdealK {
public:
    enum class Kind { split, inert };

    // Ideal generated by a prime element of prime norm p = 1 mod 3.
    static PrimeIdealK split(const EisensteinInt& generator);
    // Ideal generated by primary_split(p).
    static PrimeIdealK above(u64 p);
    // Rational prime k = 2 mod 3, which stays prime.
    static PrimeIdealK inert(u64 k);

    Kind kind() const { return kind_; }
    const EisensteinInt& generator() const { return generator_; }
    u64 residue_norm() const { return residue_norm_; }
    u64 characteristic() const { return characteristic_; }

    PrimeIdealK conj() const;
    bool contains(const EisensteinInt& x) const;

    friend bool operator==(const PrimeIdealK&, const PrimeIdealK&) = default;

private:
    PrimeIdealK(Kind kind, EisensteinInt gen, u64 norm, u64 ch)
        : kind_(kind), generator_(gen), residue_norm_(norm), characteristic_(ch) {}

    Kind kind_;
    EisensteinInt generator_;
    u64 residue_norm_;
    u64 characteristic_;
};

std::string to_string(const PrimeIdealK& m);

// Primary prime of norm p; either conjugate may come back.
EisensteinInt primary_split(u64 p);

// O_K / P for a prime ideal P. Elements are encoded as integers below
// size(): a residue mod p for split P, a + b*k for inert P.
class ResidueField {
public:
    using Elem = u64;

    explicit ResidueField(const PrimeIdealK& ideal);

    u64 size() const { return size_; }
    u64 characteristic() const { return ch_; }
    bool is_prime_field() const { return !inert_; }

    Elem reduce(const EisensteinInt& x) const;
    Elem from_integer(i64 n) const;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem add(Elem x, Elem y) const;
    Elem sub(Elem x, Elem y) const;
    Elem neg(Elem x) const { return sub(0, x); }
    Elem mul(Elem x, Elem y) const;
    Elem inv(Elem x) const;
    Elem pow(Elem x, u64 e) const;

    Elem unit_image(Unit6 u) const { return unit_images_[u.exp()]; }

    // Sextic residue symbol of a nonzero element. Requires size() = 1 mod 6.
    Unit6 symbol(Elem x) const;

private:
    bool inert_ = false;
    u64 ch_ = 0;
    u64 size_ = 0;
    u64 omega_image_ = 0;  // split only
    Elem unit_images_[6]{};
};

Unit6 sextic_symbol(const EisensteinInt& alpha, const PrimeIdealK& m);
Unit6 cubic_symbol(const EisensteinInt& alpha, const PrimeIdealK& m);
Unit6 quadratic_symbol(const EisensteinInt& alpha, const PrimeIdealK& m);

// Prime ideal factorization of kO_K (k != 0, 3 does not divide k).
std::vector<std::pair<PrimeIdealK, int>> factor_rational(i64 k);

// Prime ideal factorization of xO_K (3 does not divide N(x)).
std::vector<std::pair<PrimeIdealK, int>> factor_ideal(const EisensteinInt& x);

// Jacobi-style symbol over the factorization of kO_K; degree in {2, 3, 6}.
Unit6 symbol_composite(const EisensteinInt& alpha, i64 k, int degree);

// Same, over the factorization of lambda*O_K.
Unit6 symbol_mod_element(const EisensteinInt& alpha, const EisensteinInt& lambda, int degree);

struct ReciprocityCheck {
    Unit6 quadratic_lhs, quadratic_rhs;
    Unit6 cubic_lhs, cubic_rhs;
    bool holds() const { return quadratic_lhs == quadratic_rhs && cubic_lhs == cubic_rhs; }
};

// Both sides of the quadratic and cubic laws relating (k/lambda) and (lambda/k).
ReciprocityCheck reciprocity_pair(i64 k, const EisensteinInt& lambda);

}  // namespace ecaliquot
