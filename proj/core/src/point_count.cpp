#include "ecaliquot/point_count.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace ecaliquot {

Backend parse_backend(std::string_view name) {
    if (name == "auto" || name == "automatic") return Backend::automatic;
    if (name == "naive") return Backend::naive;
    if (name == "bsgs") return Backend::bsgs;
    if (name == "cm") return Backend::cm;
    throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

std::string to_string(Backend b) {
    switch (b) {
        case Backend::automatic: return "auto";
        case Backend::naive: return "naive";
        case Backend::bsgs: return "bsgs";
        case Backend::cm: return "cm";
    }
    return "?";
}

u64 count_reduction_points(const CurveFp& E) {
    const u64 p = E.p;
    if (p == 2) {
        const auto& a = E.a;
        u64 count = 1;
        for (u64 x = 0; x < 2; ++x)
            for (u64 y = 0; y < 2; ++y) {
                u64 lhs = (y * y + a[0] * x * y + a[2] * y) & 1;
                u64 rhs = (x * x * x + a[1] * x * x + a[3] * x + a[4]) & 1;
                count += lhs == rhs;
            }
        return count;
    }
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    std::vector<signed char> chi(p, -1);
    chi[0] = 0;
    for (u64 y = 1; y <= (p - 1) / 2; ++y) chi[mulmod(y, y, p)] = 1;
    const u64 c3 = 4 % p, c2 = E.b2, c1 = mulmod(2, E.b4, p), c0 = E.b6;
    u64 count = 1;
    for (u64 x = 0; x < p; ++x) {
        u64 f = addmod(mulmod(addmod(mulmod(addmod(mulmod(c3, x, p), c2, p), x, p), c1, p), x, p), c0, p);
        count += static_cast<u64>(1 + chi[f]);
    }
    return count;
}

u64 count_points_naive(const CurveFp& E) {
    if (!E.good) throw std::domain_error("count_points_naive: bad reduction");
    return count_reduction_points(E);
}

namespace {

u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Every M in [lo, hi] with M*P = O. Gives up (nullopt) when P has order
// at most 2m, where the baby-step table would be ambiguous.
std::optional<std::vector<u64>> annihilators(const ShortCurve& C, const PointFp& P, u64 lo, u64 hi) {
    const u64 span = hi - lo + 1;
    const u64 m = isqrt(span / 2) + 1;
    std::vector<PointFp> steps(m + 1);
    std::vector<std::pair<u64, u64>> table;
    table.reserve(m);
    PointFp Q = P;
    for (u64 j = 1; j <= m; ++j) {
        if (Q.infinity) return std::nullopt;
        steps[j] = Q;
        table.emplace_back(Q.x, j);
        Q = C.add(Q, P);
    }
    std::sort(table.begin(), table.end());
    for (std::size_t i = 1; i < table.size(); ++i)
        if (table[i].first == table[i - 1].first) return std::nullopt;

    const u64 stride = 2 * m + 1;
    const PointFp giant = C.add(C.dbl(steps[m]), P);
    std::vector<u64> out;
    u64 center = lo + m;
    PointFp R = C.mul(P, center);
    for (; center - m <= hi; center += stride) {
        u64 M = 0;
        bool hit = false;
        if (R.infinity) {
            M = center;
            hit = true;
        } else {
            auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(R.x, u64{0}));
            if (it != table.end() && it->first == R.x) {
                u64 j = it->second;
                // R = jP means (center - j)P = O; R = -jP means (center + j)P = O.
                M = R.y == steps[j].y ? center - j : center + j;
                hit = true;
            }
        }
        if (hit && M >= lo && M <= hi) out.push_back(M);
        R = C.add(R, giant);
    }
    return out;
}

}  // namespace

u64 count_points_bsgs(const CurveFp& E) {
    if (!E.good) throw std::domain_error("count_points_bsgs: bad reduction");
    const u64 p = E.p;
    if (p < 5) return count_points_naive(E);
    const u64 w = hasse_width(p);
    const u64 lo = p + 1 - w, hi = p + 1 + w;
    const ShortCurve base(E);
    std::mt19937_64 rng(splitmix64(p ^ splitmix64(E.A ^ splitmix64(E.B))));

    std::vector<u64> candidates;
    bool seeded = false;
    for (int iter = 0; iter < 512; ++iter) {
        u64 x = rng() % p;
        u64 d = base.rhs(x);
        if (d == 0) continue;
        // (d*x, d^2) lies on y^2 = x^3 + A d^2 x + B d^3, which is E when d
        // is a square and the quadratic twist otherwise.
        const bool twist = legendre(d, p) == -1;
        const u64 d2 = mulmod(d, d, p);
        const ShortCurve C(p, mulmod(E.A, d2, p), mulmod(E.B, mulmod(d2, d, p), p));
        const PointFp P = PointFp::affine(mulmod(d, x, p), d2);
        auto order_of = [&](u64 N) { return twist ? 2 * p + 2 - N : N; };

        if (!seeded || candidates.size() > 6) {
            auto found = annihilators(C, P, lo, hi);
            if (!found) continue;
            std::vector<u64> next;
            for (u64 M : *found) next.push_back(order_of(M));
            std::sort(next.begin(), next.end());
            if (!seeded) {
                candidates = std::move(next);
                seeded = true;
            } else {
                std::vector<u64> both;
                std::set_intersection(candidates.begin(), candidates.end(), next.begin(), next.end(),
                                      std::back_inserter(both));
                candidates = std::move(both);
            }
        } else {
            std::erase_if(candidates, [&](u64 N) { return !C.mul(P, order_of(N)).infinity; });
        }
        if (seeded && candidates.size() == 1) return candidates.front();
        if (seeded && candidates.empty()) throw std::logic_error("count_points_bsgs: no consistent group order");
    }
    if (p < (1u << 20)) return count_points_naive(E);
    throw std::runtime_error("count_points_bsgs: group order not determined");
}

u64 count_points(const CurveFp& E) {
    return E.p < kBsgsThreshold ? count_points_naive(E) : count_points_bsgs(E);
}

i64 trace_a_p(const CurveFp& E) {
    return static_cast<i64>(E.p + 1) - static_cast<i64>(count_points(E));
}

EisensteinInt grossencharacter_j0(i64 k, u64 p) {
    if (p < 5 || p % 3 != 1) throw std::domain_error("grossencharacter_j0: p must split in Q(w)");
    if (k == 0 || reduce_signed(k, p) == 0) throw std::domain_error("grossencharacter_j0: p divides 6k");
    const EisensteinInt pi = primary_split(p);
    const PrimeIdealK ideal = PrimeIdealK::split(pi);
    const ResidueField field(ideal);
    const u64 four_k = mulmod(4, reduce_signed(k, p), p);
    const Unit6 chi = field.symbol(four_k);
    return -(chi.inverse().value() * pi);
}

u64 count_points_cm_j0(i64 k, u64 p) {
    if (p < 5 || k == 0 || reduce_signed(k, p) == 0) throw std::domain_error("count_points_cm_j0: p divides 6k");
    if (p % 3 == 2) return p + 1;
    return static_cast<u64>(static_cast<i64>(p + 1) - trace(grossencharacter_j0(k, p)));
}

bool torsion_obstruction(const CurveQ& E) {
    PointCounter counter(E);
    u64 g = 0;
    int seen = 0;
    for (u64 p = 5; seen < 20; p = next_prime(p + 1)) {
        auto n = counter.count(p);
        if (!n) continue;
        g = std::gcd(g, *n);
        ++seen;
    }
    return g > 1;
}

PointCounter::PointCounter(CurveQ curve, Backend backend)
    : curve_(std::move(curve)), backend_(backend), j0_(curve_.j0_parameter()) {
    if (backend_ == Backend::cm && !j0_)
        throw std::invalid_argument("cm backend needs a curve of the form y^2 = x^3 + k");
}

bool PointCounter::good_reduction(u64 p) const { return mod_big(curve_.discriminant(), p) != 0; }

std::optional<u64> PointCounter::count(u64 p) const {
    const bool use_cm = j0_ && p >= 5 && (backend_ == Backend::cm || backend_ == Backend::automatic);
    if (use_cm) {
        if (reduce_signed(*j0_, p) == 0) return std::nullopt;
        return count_points_cm_j0(*j0_, p);
    }
    CurveFp E = reduce(curve_, p);
    if (!E.good) return std::nullopt;
    switch (backend_) {
        case Backend::naive: return count_points_naive(E);
        default: return count_points(E);
    }
}

}  // namespace ecaliquot
