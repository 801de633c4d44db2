#include "ecaliquot/cm_density.hpp"

#include <cmath>
#include <stdexcept>

namespace ecaliquot {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

void require_coprime_to_6(i64 k) {
    if (k <= 1 || k % 2 == 0 || k % 3 == 0) throw std::domain_error("modulus must be > 1 and coprime to 6");
}

void require_prime_k(u64 k) {
    if (k < 5 || !is_prime(k)) throw std::domain_error("k must be a prime >= 5");
}

}  // namespace

ResidueRing::ResidueRing(i64 k) {
    require_coprime_to_6(k);
    modulus_ = static_cast<u64>(k);
    size_ = modulus_ * modulus_;
    for (const auto& [P, e] : factor_rational(k)) add_component(P, e);
}

ResidueRing::ResidueRing(const PrimeIdealK& K) : size_(K.residue_norm()), ideal_(K) { add_component(K, 1); }

void ResidueRing::add_component(const PrimeIdealK& P, int exponent) {
    ResidueField field(P);
    std::vector<signed char> table(field.size(), -1);
    for (u64 c = 1; c < field.size(); ++c) table[c] = static_cast<signed char>(field.symbol(c).exp());
    parts_.push_back({std::move(field), exponent, std::move(table)});
}

EisensteinInt ResidueRing::element(u64 index) const {
    if (index >= size_) throw std::out_of_range("ResidueRing: index out of range");
    if (ideal_) {
        if (ideal_->kind() == PrimeIdealK::Kind::split) return EisensteinInt(static_cast<i64>(index));
        u64 k = ideal_->characteristic();
        return {static_cast<i64>(index % k), static_cast<i64>(index / k)};
    }
    return {static_cast<i64>(index % modulus_), static_cast<i64>(index / modulus_)};
}

std::optional<Unit6> ResidueRing::symbol(const EisensteinInt& x) const {
    int s = 0;
    for (const auto& part : parts_) {
        int t = part.table[part.field.reduce(x)];
        if (t < 0) return std::nullopt;
        s += part.exponent * t;
    }
    return Unit6(s);
}

void ResidueRing::for_each_sharp(const std::function<void(const EisensteinInt&, Unit6, Unit6)>& fn) const {
    for (u64 i = 0; i < size_; ++i) {
        const EisensteinInt lambda = element(i);
        int s = 0, s1 = 0;
        bool unit = true;
        for (const auto& part : parts_) {
            auto c = part.field.reduce(lambda);
            int t = part.table[c];
            int t1 = part.table[part.field.sub(part.field.one(), c)];
            if (t < 0 || t1 < 0) {
                unit = false;
                break;
            }
            s += part.exponent * t;
            s1 += part.exponent * t1;
        }
        // cubic = sextic^2
        if (unit) fn(lambda, Unit6(s), Unit6(2 * (s + s1)));
    }
}

std::vector<EisensteinInt> ok_sharp(i64 k) {
    std::vector<EisensteinInt> out;
    ResidueRing(k).for_each_sharp([&](const EisensteinInt& x, Unit6, Unit6) { out.push_back(x); });
    return out;
}

std::vector<EisensteinInt> ok_sharp(const PrimeIdealK& K) {
    std::vector<EisensteinInt> out;
    ResidueRing(K).for_each_sharp([&](const EisensteinInt& x, Unit6, Unit6) { out.push_back(x); });
    return out;
}

bool primes_pm1_mod9(i64 k) {
    require_coprime_to_6(k);
    for (auto [p, e] : factorize(static_cast<u64>(k)))
        if (p % 9 != 1 && p % 9 != 8) return false;
    return true;
}

MCase m_case(i64 k) {
    bool pr = primes_pm1_mod9(k);
    if (k % 4 == 1) return pr ? MCase::a : MCase::b;
    return pr ? MCase::c : MCase::d;
}

std::string case_label(i64 k) {
    static constexpr const char* letters[] = {"a", "b", "c", "d"};
    return std::string(letters[static_cast<int>(m_case(k))]) + "." + std::to_string(k % 3);
}

namespace {

// Membership in M_k given (lambda/k)_6.
bool in_m(MCase c, Unit6 s) {
    const bool quadratic_minus = s.pow(3) == Unit6::minus_one();
    const bool cubic_nontrivial = s.pow(2) != Unit6::one();
    switch (c) {
        case MCase::a: return quadratic_minus && cubic_nontrivial;
        case MCase::b: return quadratic_minus;
        case MCase::c: return cubic_nontrivial;
        case MCase::d: return true;
    }
    return false;
}

}  // namespace

std::vector<EisensteinInt> m_k_set(i64 k) {
    const MCase c = m_case(k);
    std::vector<EisensteinInt> out;
    ResidueRing(k).for_each_sharp([&](const EisensteinInt& x, Unit6 s, Unit6) {
        if (in_m(c, s)) out.push_back(x);
    });
    return out;
}

std::vector<EisensteinInt> m_k1_set(i64 k) {
    const MCase c = m_case(k);
    std::vector<EisensteinInt> out;
    ResidueRing(k).for_each_sharp([&](const EisensteinInt& x, Unit6 s, Unit6 cubic) {
        if (in_m(c, s) && cubic == Unit6::one()) out.push_back(x);
    });
    return out;
}

MCounts m_counts(i64 k) {
    const MCase c = m_case(k);
    MCounts out;
    ResidueRing(k).for_each_sharp([&](const EisensteinInt&, Unit6 s, Unit6 cubic) {
        ++out.sharp;
        if (in_m(c, s)) {
            ++out.m;
            if (cubic == Unit6::one()) ++out.m1;
        }
    });
    return out;
}

std::array<Rational, 4> m_counts_formula(u64 k) {
    require_prime_k(k);
    const i64 K = static_cast<i64>(k);
    if (k % 3 == 1) {
        const i64 base = (K - 1) * (K - 3);
        return {Rational(base, 3), Rational(base, 2), Rational(2 * base, 3), Rational((K - 2) * (K - 2))};
    }
    const i64 base = K * K - 1;
    return {Rational(base, 3), Rational(base, 2), Rational(2 * base, 3), Rational(K * K - 2)};
}

std::array<Rational, 4> m1_counts_formula(u64 k) {
    require_prime_k(k);
    const i64 K = static_cast<i64>(k);
    if (k % 3 == 1) {
        return {Rational((K - 1) * (K - 1), 9), Rational((K - 1) * (K - 3), 6), Rational(2 * (K - 1) * (K - 1), 9),
                Rational(K * K - 2 * K + 4, 3)};
    }
    return {Rational((K + 1) * (K + 1), 9), Rational(K * K - 1, 6), Rational(2 * (K + 1) * (K + 1), 9),
            Rational(K * K + 2 * K - 2, 3)};
}

Rational r_of_k(u64 k) {
    require_prime_k(k);
    const i64 K = static_cast<i64>(k);
    switch (k % 36) {
        case 1:
        case 19: return Rational(2, 3 * (K - 3));
        case 13:
        case 25:
        case 5:
        case 29: return Rational(0);
        case 7:
        case 31: return Rational(2 * K, 3 * (K - 2) * (K - 2));
        case 17:
        case 35: return Rational(2, 3 * (K - 1));
        case 11:
        case 23: return Rational(2 * K, 3 * (K * K - 2));
        default: throw std::logic_error("r_of_k: unexpected residue");
    }
}

Rational predicted_density(i64 k) {
    MCounts c = m_counts(k);
    return Rational(static_cast<i64>(c.m1), static_cast<i64>(c.m));
}

DensityPrediction density_prediction(i64 k) {
    MCounts c = m_counts(k);
    DensityPrediction out;
    out.k = k;
    out.case_label = case_label(k);
    out.sharp_count = c.sharp;
    out.m_count = c.m;
    out.m1_count = c.m1;
    out.ratio = Rational(static_cast<i64>(c.m1), static_cast<i64>(c.m));
    if (is_prime(static_cast<u64>(k))) out.r_of_k = r_of_k(static_cast<u64>(k));
    return out;
}

namespace {

void require_norm_1_mod_6(const PrimeIdealK& K) {
    if (K.residue_norm() % 6 != 1) throw std::domain_error("prime ideal norm must be 1 mod 6");
}

void require_mu3(Unit6 xi) {
    if (!xi.in_mu3()) throw std::domain_error("xi must be a cube root of unity");
}

}  // namespace

u64 m_K1_sub(Unit6 zeta, Unit6 xi, const PrimeIdealK& K) {
    require_norm_1_mod_6(K);
    require_mu3(xi);
    u64 count = 0;
    ResidueRing(K).for_each_sharp([&](const EisensteinInt&, Unit6 s, Unit6 cubic) {
        count += (s == zeta && cubic == xi);
    });
    return count;
}

int e_term(Unit6 zeta, Unit6 xi) {
    return (zeta == Unit6::one() ? 6 : 0) + (zeta.pow(2) == xi ? 3 : 0) + (zeta.pow(4) == xi ? 3 : 0);
}

i64 c6_count_trace(Unit6 zeta, Unit6 xi, const PrimeIdealK& K) {
    require_norm_1_mod_6(K);
    require_mu3(xi);
    const EisensteinInt pibar = conj(K.generator());
    const Unit6 eps = cubic_symbol(2, K);
    const i64 N = static_cast<i64>(K.residue_norm());
    auto tr = [&](Unit6 u) { return trace(u.value() * pibar); };
    // The last term carries no (-1/K)_2 factor: with it, split K of norm
    // 3 mod 4 disagree with the enumerated count.
    return N + 1 + tr(xi) + tr(eps.pow(2) * zeta.pow(3) * xi.pow(2)) + tr(eps * zeta.pow(5) * xi) +
           tr(eps * zeta * xi);
}

u64 c6_count_bruteforce(const EisensteinInt& gamma, const EisensteinInt& delta, const PrimeIdealK& K) {
    require_norm_1_mod_6(K);
    const ResidueField F(K);
    const auto g = F.reduce(gamma), d = F.reduce(delta);
    if (g == 0 || d == 0) throw std::domain_error("c6_count_bruteforce: gamma and delta must be units");
    const u64 n = F.size();

    std::vector<unsigned char> cube_roots(n, 0), sixth_roots(n, 0);
    for (u64 x = 0; x < n; ++x) {
        auto x3 = F.mul(F.mul(x, x), x);
        ++cube_roots[x3];
        ++sixth_roots[F.mul(x3, x3)];
    }

    const auto dinv = F.inv(d);
    u64 affine = 0;
    for (u64 z = 1; z < n; ++z) {
        auto z2 = F.mul(z, z);
        auto lambda = F.mul(g, F.mul(F.mul(z2, z2), z2));
        auto t = F.mul(F.mul(lambda, F.sub(F.one(), lambda)), dinv);
        if (t != 0) affine += cube_roots[t];
    }
    // Points of the smooth model over x = 0, z = 0 and infinity.
    const auto ginv = F.inv(g);
    u64 boundary = sixth_roots[ginv] + cube_roots[F.mul(g, dinv)] + cube_roots[F.neg(F.mul(F.mul(g, g), dinv))];
    return affine + boundary;
}

C6Witness c6_witnesses(Unit6 zeta, Unit6 xi, const PrimeIdealK& K) {
    require_norm_1_mod_6(K);
    require_mu3(xi);
    const ResidueRing ring(K);
    std::optional<EisensteinInt> gamma, delta;
    for (u64 i = 1; i < ring.size() && !(gamma && delta); ++i) {
        const EisensteinInt x = ring.element(i);
        auto s = ring.symbol(x);
        if (!s) continue;
        if (!gamma && *s == zeta) gamma = x;
        if (!delta && s->pow(2) == xi) delta = x;
    }
    if (!gamma || !delta) throw std::logic_error("c6_witnesses: no witness found");
    return {*gamma, *delta};
}

std::vector<PrimeIdealK> prime_ideals_up_to(u64 norm_max) {
    std::vector<PrimeIdealK> out;
    for (u64 p : primes_up_to(norm_max)) {
        if (p % 3 == 1) {
            auto P = PrimeIdealK::above(p);
            out.push_back(P);
            out.push_back(P.conj());
        } else if (p % 3 == 2 && p >= 5 && p * p <= norm_max) {
            out.push_back(PrimeIdealK::inert(p));
        }
    }
    return out;
}

C6CheckReport c6_check(u64 norm_max) {
    C6CheckReport report;
    for (const auto& K : prime_ideals_up_to(norm_max)) {
        ++report.ideals;
        const double N = static_cast<double>(K.residue_norm());
        for (int z = 0; z < 6; ++z)
            for (int x = 0; x < 6; x += 2) {
                const Unit6 zeta(z), xi(x);
                const auto w = c6_witnesses(zeta, xi, K);
                C6CheckRow row{K, zeta, xi, c6_count_trace(zeta, xi, K), c6_count_bruteforce(w.gamma, w.delta, K),
                               m_K1_sub(zeta, xi, K), e_term(zeta, xi)};
                ++report.cases;
                const bool weil = std::abs(static_cast<double>(row.brute_count) - (N + 1)) <= 8 * std::sqrt(N);
                if (row.trace_count != static_cast<i64>(row.brute_count) ||
                    static_cast<i64>(18 * row.m_sub) + row.e != row.trace_count || !weil)
                    report.failures.push_back(row);
            }
    }
    return report;
}

}  // namespace ecaliquot
