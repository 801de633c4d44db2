#include "ecaliquot/constructor.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>

#include "ecaliquot/parallel.hpp"
#include "ecaliquot/point_count.hpp"

namespace ecaliquot {

bool hasse_compatible(u64 p, u64 q) {
    const i128 d = static_cast<i128>(p) + 1 - static_cast<i128>(q);
    return d * d <= 4 * static_cast<i128>(p);
}

bool cyclic_hasse(std::span<const u64> order) {
    for (std::size_t i = 0; i < order.size(); ++i)
        if (!hasse_compatible(order[i], order[(i + 1) % order.size()])) return false;
    return !order.empty();
}

std::vector<u64> PrimeWindow::cycle_order() const {
    std::vector<u64> out;
    out.reserve(primes.size());
    for (std::size_t i = 0; i < primes.size(); i += 2) out.push_back(primes[i]);
    std::size_t top = primes.size() % 2 == 0 ? primes.size() - 1 : primes.size() - 2;
    for (std::size_t i = top; i < primes.size(); i -= 2) out.push_back(primes[i]);
    return out;
}

bool PrimeWindow::valid() const {
    if (primes.empty() || primes.front() < 5) return false;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (!is_prime(primes[i])) return false;
        if (i > 0 && next_prime(primes[i - 1] + 1) != primes[i]) return false;
    }
    const auto order = cycle_order();
    return cyclic_hasse(order);
}

PrimeWindow find_prime_window(int ell, u64 start_hint) {
    if (ell < 1) throw std::invalid_argument("find_prime_window: length must be positive");
    std::deque<u64> run;
    u64 p = next_prime(std::max<u64>(start_hint, 5));
    for (;; p = next_prime(p + 1)) {
        run.push_back(p);
        if (run.size() > static_cast<std::size_t>(ell)) run.pop_front();
        if (run.size() < static_cast<std::size_t>(ell)) continue;
        PrimeWindow w{{run.begin(), run.end()}};
        if (cyclic_hasse(w.cycle_order())) return w;
    }
}

namespace {

u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr u64 kExhaustiveBelow = 100;

}  // namespace

CurveFp curve_with_order(u64 p, u64 n) {
    if (p < 5 || !is_prime(p)) throw std::domain_error("curve_with_order: p must be a prime >= 5");
    if (!hasse_compatible(p, n)) throw std::domain_error("curve_with_order: order outside the Hasse interval");

    auto try_curve = [&](u64 a, u64 b) -> std::optional<CurveFp> {
        CurveFp E = short_curve_fp(p, a, b);
        if (E.good && count_points(E) == n) return E;
        return std::nullopt;
    };

    if (p >= kExhaustiveBelow) {
        std::mt19937_64 rng(splitmix64(p ^ splitmix64(n)));
        std::uniform_int_distribution<u64> coeff(0, p - 1);
        // Orders near the Hasse bound are rare; after this many draws fall
        // through to the exhaustive scan.
        const u64 draws = 64 * (isqrt(p) + 1);
        for (u64 i = 0; i < draws; ++i) {
            u64 a = coeff(rng), b = coeff(rng);
            if (auto E = try_curve(a, b)) return *E;
        }
    }
    for (u64 a = 0; a < p; ++a)
        for (u64 b = 0; b < p; ++b)
            if (auto E = try_curve(a, b)) return *E;
    throw std::logic_error("curve_with_order: no curve found");
}

CurveQ crt_lift(std::span<const CurveFp> local) {
    if (local.empty()) throw std::invalid_argument("crt_lift: no curves");
    std::vector<u64> ps;
    for (const auto& E : local) {
        if (!E.good) throw std::invalid_argument("crt_lift: singular input curve");
        ps.push_back(E.p);
    }
    std::sort(ps.begin(), ps.end());
    if (std::adjacent_find(ps.begin(), ps.end()) != ps.end()) throw std::invalid_argument("crt_lift: repeated prime");

    BigInt modulus = 1, a = 0, b = 0;
    for (const auto& E : local) {
        // Solve x = r mod p, x = current mod modulus.
        const u64 p = E.p;
        const u64 inv = invmod(mod_big(modulus, p), p);
        auto step = [&](BigInt& x, u64 r) {
            u64 t = mulmod(submod(r % p, mod_big(x, p), p), inv, p);
            x += modulus * t;
        };
        step(a, E.A);
        step(b, E.B);
        modulus *= p;
    }
    return CurveQ::short_form(a, b);
}

CycleConstruction build_cycle_curve(std::span<const int> lengths, u64 start_hint, unsigned workers) {
    if (lengths.empty()) throw std::invalid_argument("build_cycle_curve: no lengths");

    std::vector<PrimeWindow> windows;
    std::vector<std::pair<u64, u64>> targets;  // (p, #E_p)
    u64 hint = start_hint;
    for (int ell : lengths) {
        PrimeWindow w = find_prime_window(ell, hint);
        const auto order = w.cycle_order();
        for (std::size_t i = 0; i < order.size(); ++i) targets.emplace_back(order[i], order[(i + 1) % order.size()]);
        hint = w.primes.back() + 1;
        windows.push_back(std::move(w));
    }

    std::vector<Range> ranges;
    for (u64 i = 0; i < targets.size(); ++i) ranges.push_back({i, i});
    auto local = map_ranges(ranges, workers, [&](const Range& r) {
        return curve_with_order(targets[r.lo].first, targets[r.lo].second);
    });

    CycleConstruction out{crt_lift(local), std::move(windows), {}};
    for (const auto& w : out.windows) {
        const auto order = w.cycle_order();
        if (!verify_cycle(out.curve, order, Backend::automatic))
            throw std::logic_error("build_cycle_curve: lifted curve fails verification");
        out.cycles.push_back(AliquotCycle{out.curve, order}.normalized());
    }
    return out;
}

}  // namespace ecaliquot
