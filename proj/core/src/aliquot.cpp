#include "ecaliquot/aliquot.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "ecaliquot/parallel.hpp"

namespace ecaliquot {

namespace {

// Smallest prime considered by the searches.
constexpr u64 kFirstPrime = 2;

// Per-range memo of the point-count map.
class Walker {
public:
    explicit Walker(const PointCounter& counter) : counter_(counter) {}

    std::optional<u64> next(u64 p) {
        auto it = memo_.find(p);
        if (it != memo_.end()) return it->second;
        auto q = next_value(counter_, p);
        memo_.emplace(p, q);
        return q;
    }

private:
    const PointCounter& counter_;
    std::unordered_map<u64, std::optional<u64>> memo_;
};

// Backend used to re-check cycles found by a search.
Backend independent_backend(const PointCounter& searched, u64 largest) {
    bool used_cm = searched.curve().j0_parameter() &&
                   (searched.backend() == Backend::cm || searched.backend() == Backend::automatic);
    if (used_cm) return Backend::bsgs;
    return largest < 20'000'000 ? Backend::naive : Backend::bsgs;
}

// Cycle of length ell whose smallest element is p, if any.
std::optional<std::vector<u64>> cycle_from(Walker& walker, u64 p, int ell) {
    std::vector<u64> seq{p};
    u64 cur = p;
    for (int i = 1; i < ell; ++i) {
        auto nxt = walker.next(cur);
        if (!nxt || *nxt <= p || std::find(seq.begin(), seq.end(), *nxt) != seq.end()) return std::nullopt;
        seq.push_back(*nxt);
        cur = *nxt;
    }
    auto close = walker.next(cur);
    if (!close || *close != p) return std::nullopt;
    return seq;
}

}  // namespace

AliquotCycle AliquotCycle::normalized() const {
    AliquotCycle out = *this;
    if (!out.primes.empty()) {
        auto it = std::min_element(out.primes.begin(), out.primes.end());
        std::rotate(out.primes.begin(), it, out.primes.end());
    }
    return out;
}

std::string AliquotCycle::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < primes.size(); ++i) os << (i ? "," : "") << primes[i];
    return os.str();
}

std::optional<u64> next_value(const PointCounter& counter, u64 p) {
    auto n = counter.count(p);
    if (!n) throw std::domain_error("next_value: bad reduction at p");
    u64 q = *n;
    if (!is_prime(q) || !counter.good_reduction(q)) return std::nullopt;
    return q;
}

std::optional<u64> next_value(const CurveQ& E, u64 p) { return next_value(PointCounter(E), p); }

std::vector<AliquotCycle> aliquot_cycles_up_to(const CurveQ& E, int ell, u64 X, const SearchOptions& opts) {
    if (ell < 1) throw std::domain_error("aliquot_cycles_up_to: length must be positive");
    const PointCounter counter(E, opts.backend);
    auto per_range = map_ranges(split_ranges(kFirstPrime, X, opts.range_size), opts.workers, [&](const Range& r) {
        Walker walker(counter);
        std::vector<std::vector<u64>> found;
        for (u64 p : primes_in_range(r.lo, r.hi)) {
            if (!counter.good_reduction(p)) continue;
            if (auto c = cycle_from(walker, p, ell)) found.push_back(std::move(*c));
        }
        return found;
    });
    std::vector<AliquotCycle> out;
    for (auto& chunk : per_range)
        for (auto& primes : chunk) {
            u64 largest = *std::max_element(primes.begin(), primes.end());
            if (!verify_cycle(E, primes, independent_backend(counter, largest)))
                throw std::logic_error("aliquot_cycles_up_to: cycle failed independent verification");
            out.push_back({E, std::move(primes)});
        }
    return out;
}

std::vector<PrimePair> amicable_pairs_up_to(const CurveQ& E, u64 X, const SearchOptions& opts) {
    std::vector<PrimePair> out;
    for (const auto& c : aliquot_cycles_up_to(E, 2, X, opts)) out.emplace_back(c.primes[0], c.primes[1]);
    return out;
}

u64 chain_count(const CurveQ& E, int ell, u64 X, const SearchOptions& opts) {
    if (ell < 2) throw std::domain_error("chain_count: length must be at least 2");
    const PointCounter counter(E, opts.backend);
    auto per_range = map_ranges(split_ranges(kFirstPrime, X, opts.range_size), opts.workers, [&](const Range& r) {
        Walker walker(counter);
        u64 count = 0;
        std::vector<u64> seq;
        for (u64 p : primes_in_range(r.lo, r.hi)) {
            if (!counter.good_reduction(p)) continue;
            seq.assign(1, p);
            u64 cur = p;
            for (int i = 1; i < ell; ++i) {
                auto nxt = walker.next(cur);
                if (!nxt || std::find(seq.begin(), seq.end(), *nxt) != seq.end()) break;
                seq.push_back(*nxt);
                cur = *nxt;
            }
            count += seq.size() == static_cast<std::size_t>(ell);
        }
        return count;
    });
    return std::accumulate(per_range.begin(), per_range.end(), u64{0});
}

bool verify_cycle(const CurveQ& E, std::span<const u64> primes, Backend backend) {
    if (primes.empty()) return false;
    std::vector<u64> sorted(primes.begin(), primes.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    const PointCounter counter(E, backend);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        u64 p = primes[i];
        if (!is_prime(p)) return false;
        auto n = counter.count(p);
        if (!n || *n != primes[(i + 1) % primes.size()]) return false;
    }
    return true;
}

std::optional<AliquotCycle> cycle_through(const CurveQ& E, u64 p, int max_length, Backend backend) {
    const PointCounter counter(E, backend);
    if (!is_prime(p) || !counter.good_reduction(p)) return std::nullopt;
    std::vector<u64> orbit{p};
    for (int i = 0; i < max_length; ++i) {
        auto n = next_value(counter, orbit.back());
        if (!n) return std::nullopt;
        if (*n == p) return AliquotCycle{E, std::move(orbit)};
        if (std::find(orbit.begin(), orbit.end(), *n) != orbit.end()) return std::nullopt;
        orbit.push_back(*n);
    }
    return std::nullopt;
}

std::array<u64, 2> cm_next_values(u64 p, u64 q) {
    if (p < 5) throw std::domain_error("cm_next_values: p must be at least 5");
    return {p, 2 * q + 2 - p};
}

CandidateTraces candidate_traces_j0(u64 p, u64 q) {
    const i128 P = p, Q = q;
    const i128 num = 2 * P * Q + 2 * P + 2 * Q - P * P - Q * Q - 1;
    if (num < 0 || num % 3 != 0) throw std::domain_error("candidate_traces_j0: A^2 is not a nonnegative integer");
    const u64 a2 = static_cast<u64>(num / 3);
    const u64 A = isqrt(a2);
    if (A * A != a2) throw std::domain_error("candidate_traces_j0: A^2 is not a square");
    const i64 t = static_cast<i64>(q + 1) - static_cast<i64>(p);
    const i64 a3 = 3 * static_cast<i64>(A);
    if ((t + a3) % 2 != 0) throw std::domain_error("candidate_traces_j0: parity mismatch");
    CandidateTraces out;
    out.A = static_cast<i64>(A);
    out.traces = {t, -t, (t + a3) / 2, -(t + a3) / 2, (t - a3) / 2, -(t - a3) / 2};
    return out;
}

std::optional<u64> j0_partner(i64 k, u64 p) {
    if (p < 5 || k == 0 || reduce_signed(k, p) == 0) return std::nullopt;
    u64 q = count_points_cm_j0(k, p);
    if (q < 5 || !is_prime(q) || reduce_signed(k, q) == 0) return std::nullopt;
    return q;
}

TypeOneVerdict classify_type1(i64 k, u64 p) {
    auto q = j0_partner(k, p);
    if (!q) throw std::domain_error("classify_type1: p is not in N_k");
    TypeOneVerdict v;
    v.p = p;
    v.q = *q;
    // Direct count at q, independent of the Grossencharacter.
    const u64 nq = count_points(reduce(CurveQ::short_form(0, k), v.q));
    v.a_q = static_cast<i64>(v.q + 1) - static_cast<i64>(nq);
    const i64 t = static_cast<i64>(v.q + 1) - static_cast<i64>(p);
    v.is_type1 = v.a_q == t || v.a_q == -t;

    const EisensteinInt psi = grossencharacter_j0(k, p);
    const PrimeIdealK above_p = PrimeIdealK::split(psi);
    const PrimeIdealK above_q = PrimeIdealK::split(EisensteinInt(1) - psi);
    if (above_q.residue_norm() != v.q) throw std::logic_error("classify_type1: N(1 - psi) != q");
    v.symbol_product = sextic_symbol(k, above_p) * sextic_symbol(k, above_q);
    v.symbols_agree = v.symbol_product.in_mu2() == v.is_type1;
    return v;
}

i64 recursion_term(i64 p, i64 q, i64 i) {
    if (i < 1) throw std::domain_error("recursion_term: i must be positive");
    return (i - 1) * q - (i - 2) * p + (i - 1) * (i - 2);
}

std::array<CaseValue, 8> j0_triple_case_values(i64 p_in, i64 q_in) {
    const i128 p = p_in, q = q_in;
    const i128 p2 = p * p, q2 = q * q, p3 = p2 * p, q3 = q2 * q;
    return {{
        {"2A+", 28 * p2 - 24 * p * q + 12 * q2 - 72 * p - 24 * q + 48},
        {"2A-", 12 * p2 - 24 * p * q + 28 * q2 - 24 * p - 40 * q + 16},
        {"1B+", 12 * p2 - 12 * p * q + 4 * q2 - 24 * p + 12},
        {"1B-", 4 * p2 - 4 * p * q + 4 * q2 + 12},
        {"2B++", 4 * p2 * p2 + 2 * p3 * q + 3 * p2 * q2 - p * q3 + q2 * q2 - 6 * p3 - 15 * p2 * q - 15 * p * q2 +
                     3 * p2 + 3 * p * q + 3 * q2},
        {"2B+-", 9 * p2 * q2 - 9 * p * q3 + 9 * q2 * q2 + 9 * p2 * q - 27 * p * q2 + 3 * p2 - 21 * p * q - 3 * q2 -
                     6 * p + 6 * q + 4},
        {"2B-+", 3 * p2 * q2 - 3 * p * q3 + q2 * q2 + 9 * p2 * q - 9 * p * q2 + 9 * p2 - 9 * p * q + 3 * q2},
        {"2B--", 4 * p2 * p2 - 18 * p3 * q + 33 * p2 * q2 - 27 * p * q3 + 9 * q2 * q2 - 10 * p3 + 33 * p2 * q -
                     21 * p * q2 + 21 * p2 - 21 * p * q - 3 * q2 - 10 * p + 6 * q + 4},
    }};
}

namespace {

// a_p at any prime: from the smooth count at good p, from the singular
// cubic (1, -1 or 0) at bad p.
i64 local_trace(const PointCounter& counter, u64 p, bool& good) {
    good = counter.good_reduction(p);
    u64 n = good ? *counter.count(p) : count_reduction_points(reduce(counter.curve(), p));
    return static_cast<i64>(p + 1) - static_cast<i64>(n);
}

}  // namespace

i64 l_series_coefficient(const CurveQ& E, u64 n) {
    if (n == 0) throw std::domain_error("l_series_coefficient: n must be positive");
    const PointCounter counter(E);
    i128 result = 1;
    if (n == 1) return 1;
    for (auto [p, e] : factorize(n)) {
        bool good = false;
        const i128 ap = local_trace(counter, p, good);
        i128 prev = 1, cur = ap;
        for (int i = 1; i < e; ++i) {
            i128 nxt = good ? ap * cur - static_cast<i128>(p) * prev : ap * cur;
            prev = cur;
            cur = nxt;
        }
        result *= cur;
    }
    return static_cast<i64>(result);
}

i64 type_l_step(const CurveQ& E, u64 n) {
    return static_cast<i64>(n) + 1 - l_series_coefficient(E, n);
}

u64 type_n_step(const CurveQ& E, u64 n) {
    if (n == 0) throw std::domain_error("type_n_step: n must be positive");
    const PointCounter counter(E);
    u64 result = 1;
    if (n == 1) return 1;
    for (auto [p, e] : factorize(n)) {
        bool good = false;
        const i64 ap = local_trace(counter, p, good);
        const i64 c = good ? static_cast<i64>(p) + 1 - ap : static_cast<i64>(p) - ap;
        u64 factor = static_cast<u64>(c);
        for (int i = 1; i < e; ++i) factor *= p;
        result *= factor;
    }
    return result;
}

}  // namespace ecaliquot
