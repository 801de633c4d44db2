#pragma once

#include <span>
#include <vector>

#include "ecaliquot/aliquot.hpp"
#include "ecaliquot/curve.hpp"

namespace ecaliquot {

// |p + 1 - q| <= 2 sqrt(p), checked exactly.
bool hasse_compatible(u64 p, u64 q);

// Every step of the cyclic sequence (last back to first) is Hasse compatible.
bool cyclic_hasse(std::span<const u64> order);

// A run of consecutive primes together with the cyclic order the cycle
// visits them in: up through the odd positions, back down through the even.
struct PrimeWindow {
    std::vector<u64> primes;  // ascending, consecutive

    std::vector<u64> cycle_order() const;
    bool valid() const;
};

// Least run of ell consecutive primes >= max(start_hint, 5) whose cycle
// order satisfies cyclic_hasse.
PrimeWindow find_prime_window(int ell, u64 start_hint = 5);

// y^2 = x^3 + a x + b over F_p with exactly n points.
// Throws std::domain_error if n is outside the Hasse interval or p < 5.
CurveFp curve_with_order(u64 p, u64 n);

// Short model over Q with coefficients in [0, prod p_i) that reduces to
// each input. Throws std::invalid_argument on repeated primes or a
// singular input.
CurveQ crt_lift(std::span<const CurveFp> local);

struct CycleConstruction {
    CurveQ curve;
    std::vector<PrimeWindow> windows;
    std::vector<AliquotCycle> cycles;  // normalized, one per requested length
};

// One curve over Q with a verified aliquot cycle of each requested length,
// on disjoint prime windows. Throws std::logic_error if verification fails.
CycleConstruction build_cycle_curve(std::span<const int> lengths, u64 start_hint = 5, unsigned workers = 1);

}  // namespace ecaliquot
