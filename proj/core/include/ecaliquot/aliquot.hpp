#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ecaliquot/curve.hpp"
#include "ecaliquot/eisenstein.hpp"
#include "ecaliquot/point_count.hpp"

namespace ecaliquot {

struct AliquotCycle {
    CurveQ curve;
    std::vector<u64> primes;

    // Rotation starting at the smallest prime.
    AliquotCycle normalized() const;
    std::string to_csv() const;
};

struct ChainRecord {
    std::vector<u64> primes;
};

struct TypeOneVerdict {
    u64 p = 0;
    u64 q = 0;
    i64 a_q = 0;
    bool is_type1 = false;        // from a_q directly
    Unit6 symbol_product;         // (k/p)_6 (k/q)_6 over p = (psi), q = (1 - psi)
    bool symbols_agree = false;   // symbol_product in {1, -1} matches is_type1
};

struct SearchOptions {
    Backend backend = Backend::automatic;
    unsigned workers = 1;
    u64 range_size = 1u << 16;
};

using PrimePair = std::pair<u64, u64>;

// #E(F_p) when it is a prime of good reduction.
std::optional<u64> next_value(const PointCounter& counter, u64 p);
std::optional<u64> next_value(const CurveQ& E, u64 p);

// Normalized pairs (p, q), p < q, p <= X; ascending.
std::vector<PrimePair> amicable_pairs_up_to(const CurveQ& E, u64 X, const SearchOptions& opts = {});

// Normalized cycles of exact length ell with smallest prime <= X.
std::vector<AliquotCycle> aliquot_cycles_up_to(const CurveQ& E, int ell, u64 X, const SearchOptions& opts = {});

// Number of chains p_1 -> ... -> p_ell of distinct primes with p_1 <= X.
u64 chain_count(const CurveQ& E, int ell, u64 X, const SearchOptions& opts = {});

// Re-checks every step of a claimed cycle with the given backend.
bool verify_cycle(const CurveQ& E, std::span<const u64> primes, Backend backend = Backend::bsgs);

// Follows p -> #E_p until it returns to p; nothing if the orbit leaves the
// good primes, repeats elsewhere, or is longer than max_length.
std::optional<AliquotCycle> cycle_through(const CurveQ& E, u64 p, int max_length, Backend backend = Backend::automatic);

// The two values #E_q can take on a CM curve with j != 0.
std::array<u64, 2> cm_next_values(u64 p, u64 q);

struct CandidateTraces {
    i64 A = 0;
    std::array<i64, 6> traces{};
};

// The six possible a_q on a j = 0 curve given #E_p = q.
CandidateTraces candidate_traces_j0(u64 p, u64 q);

// q = #E_p for y^2 = x^3 + k when p is in N_k.
std::optional<u64> j0_partner(i64 k, u64 p);

TypeOneVerdict classify_type1(i64 k, u64 p);

// A_i = (i-1)q - (i-2)p + (i-1)(i-2).
i64 recursion_term(i64 p, i64 q, i64 i);

struct CaseValue {
    std::string_view label;
    i128 value;
};

// Values of the eight polynomials whose vanishing a j = 0 triple requires.
std::array<CaseValue, 8> j0_triple_case_values(i64 p, i64 q);

// L-series coefficient a_n of E.
i64 l_series_coefficient(const CurveQ& E, u64 n);

// F_E(n) = n + 1 - a_n.
i64 type_l_step(const CurveQ& E, u64 n);

// G_E(n) = prod p^(e-1) c_p.
u64 type_n_step(const CurveQ& E, u64 n);

}  // namespace ecaliquot
