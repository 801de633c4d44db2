#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ecaliquot/eisenstein.hpp"

namespace ecaliquot {

using Rational = boost::rational<i64>;

std::string to_string(const Rational& r);

// O_K / k (or O_K / K for a prime ideal K), evaluated through the
// residue fields of the prime ideals dividing the modulus.
class ResidueRing {
public:
    explicit ResidueRing(i64 k);
    explicit ResidueRing(const PrimeIdealK& K);

    u64 size() const { return size_; }

    // Canonical representative of the index-th residue class.
    EisensteinInt element(u64 index) const;

    // Sextic symbol over the modulus, or nothing if x is not a unit.
    std::optional<Unit6> symbol(const EisensteinInt& x) const;

    // Visits every lambda with lambda and 1 - lambda both units, passing
    // (lambda/K)_6 and (lambda(1 - lambda)/K)_3.
    void for_each_sharp(const std::function<void(const EisensteinInt&, Unit6, Unit6)>& fn) const;

private:
    struct Component {
        ResidueField field;
        int exponent;
        std::vector<signed char> table;  // sextic exponent, -1 at zero
    };

    void add_component(const PrimeIdealK& P, int exponent);

    u64 modulus_ = 0;  // k, or 0 when built from a prime ideal
    u64 size_ = 0;
    std::optional<PrimeIdealK> ideal_;
    std::vector<Component> parts_;
};

std::vector<EisensteinInt> ok_sharp(i64 k);
std::vector<EisensteinInt> ok_sharp(const PrimeIdealK& K);

enum class MCase { a, b, c, d };

// Every prime divisor of k is +-1 mod 9.
bool primes_pm1_mod9(i64 k);
MCase m_case(i64 k);
// e.g. "a.2": case letter and k mod 3.
std::string case_label(i64 k);

std::vector<EisensteinInt> m_k_set(i64 k);
std::vector<EisensteinInt> m_k1_set(i64 k);

struct MCounts {
    u64 sharp = 0;
    u64 m = 0;
    u64 m1 = 0;
};

// Sizes of O_K^#, M_k and M_k^[1] without materializing the sets.
MCounts m_counts(i64 k);

// Closed forms for prime k, indexed by MCase.
std::array<Rational, 4> m_counts_formula(u64 k);
std::array<Rational, 4> m1_counts_formula(u64 k);

Rational r_of_k(u64 k);
Rational predicted_density(i64 k);

struct DensityPrediction {
    i64 k = 0;
    std::string case_label;
    u64 sharp_count = 0;
    u64 m_count = 0;
    u64 m1_count = 0;
    Rational ratio;
    std::optional<Rational> r_of_k;
};

DensityPrediction density_prediction(i64 k);

u64 m_K1_sub(Unit6 zeta, Unit6 xi, const PrimeIdealK& K);

int e_term(Unit6 zeta, Unit6 xi);

// Point count of gamma z^6 (1 - gamma z^6) = delta x^3 from the trace formula.
i64 c6_count_trace(Unit6 zeta, Unit6 xi, const PrimeIdealK& K);

// The same count by enumeration over O_K/K.
u64 c6_count_bruteforce(const EisensteinInt& gamma, const EisensteinInt& delta, const PrimeIdealK& K);

struct C6Witness {
    EisensteinInt gamma;
    EisensteinInt delta;
};

// First residues (in index order) with (gamma/K)_6 = zeta and (delta/K)_3 = xi.
C6Witness c6_witnesses(Unit6 zeta, Unit6 xi, const PrimeIdealK& K);

// Prime ideals of norm at most norm_max with norm = 1 mod 6.
std::vector<PrimeIdealK> prime_ideals_up_to(u64 norm_max);

struct C6CheckRow {
    PrimeIdealK ideal;
    Unit6 zeta;
    Unit6 xi;
    i64 trace_count;
    u64 brute_count;
    u64 m_sub;
    int e;
};

struct C6CheckReport {
    u64 ideals = 0;
    u64 cases = 0;
    std::vector<C6CheckRow> failures;  // trace, brute force or 18*M + e disagree, or Weil bound fails
};

C6CheckReport c6_check(u64 norm_max);

}  // namespace ecaliquot
