#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ecaliquot/curve.hpp"
#include "ecaliquot/eisenstein.hpp"

namespace ecaliquot {

enum class Backend { automatic, naive, bsgs, cm };

Backend parse_backend(std::string_view name);
std::string to_string(Backend b);

// Below this, BSGS defers to direct counting.
inline constexpr u64 kBsgsThreshold = 1024;

// #E(F_p) by summing Legendre symbols. Throws on bad reduction.
u64 count_points_naive(const CurveFp& E);

// Points on the reduced cubic including any singular point, for any p.
u64 count_reduction_points(const CurveFp& E);

// Baby-step giant-step on random points of the curve and its quadratic twist.
u64 count_points_bsgs(const CurveFp& E);

// p + 1 - #E(F_p).
i64 trace_a_p(const CurveFp& E);

// -(4k/pi)_6^{-1} * pi for the primary prime pi above p.
EisensteinInt grossencharacter_j0(i64 k, u64 p);

// #E(F_p) for y^2 = x^3 + k.
u64 count_points_cm_j0(i64 k, u64 p);

// naive below the threshold, BSGS above.
u64 count_points(const CurveFp& E);

// True if #E(F_p) shares a common factor over 20 good primes p > 3.
bool torsion_obstruction(const CurveQ& E);

// Point counts of a fixed curve with a chosen backend.
class PointCounter {
public:
    explicit PointCounter(CurveQ curve, Backend backend = Backend::automatic);

    const CurveQ& curve() const { return curve_; }
    Backend backend() const { return backend_; }

    bool good_reduction(u64 p) const;

    // #E(F_p), or nothing when p has bad reduction.
    std::optional<u64> count(u64 p) const;

private:
    CurveQ curve_;
    Backend backend_;
    std::optional<i64> j0_;
};

}  // namespace ecaliquot
