#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ecaliquot/aliquot.hpp"
#include "ecaliquot/cm_density.hpp"
#include "ecaliquot/curve.hpp"
#include "ecaliquot/point_count.hpp"

namespace ecaliquot {

enum class OutputFormat { csv, json };

OutputFormat parse_format(std::string_view name);

struct ExperimentConfig {
    std::string curve;          // anything CurveQ::parse accepts; ignored when k is set
    std::optional<i64> k;       // y^2 = x^3 + k
    u64 X = 100000;
    std::vector<int> lengths;   // chain lengths to count alongside the sweep
    Backend backend = Backend::automatic;
    unsigned workers = 1;
    u64 range_size = 1u << 16;
    std::optional<std::filesystem::path> checkpoint;
    OutputFormat format = OutputFormat::csv;

    // Throws std::invalid_argument on X < 5, zero workers or a missing curve.
    void validate() const;
    CurveQ resolve_curve() const;
    SearchOptions search_options() const;
};

struct ChainCount {
    int length = 0;
    u64 count = 0;
};

struct SweepReport {
    std::string curve;
    u64 X = 0;
    u64 prime_order = 0;   // primes p <= X of good reduction with #E_p prime
    u64 pairs = 0;         // normalized amicable pairs (p, q) with p <= X
    u64 n_k = 0;           // p >= 5 with #E_p = q a prime of good reduction
    u64 n_k1 = 0;          // those with a_q = +-(q + 1 - p)
    std::vector<PrimePair> pair_list;
    std::vector<ChainCount> chains;
    double elapsed_seconds = 0;

    double pairs_over_prime_order() const;
    double type1_ratio() const;
    double pairs_over_type1() const;
};

// Counts are independent of the worker count. With a checkpoint path, each
// finished range is appended as a JSON line and synced; a rerun skips
// ranges already present.
SweepReport run_pair_sweep(const ExperimentConfig& cfg);

std::string to_csv(const SweepReport& r);
std::string to_json(const SweepReport& r);

struct DensityRow {
    i64 k = 0;
    std::string case_label;
    u64 X = 0;
    u64 pairs = 0;
    u64 n_k1 = 0;
    u64 n_k = 0;
    Rational predicted;

    double experiment() const;
    double deviation() const;
};

DensityRow run_density_report(i64 k, u64 X, const SearchOptions& opts = {});

std::string to_csv(std::span<const DensityRow> rows);
std::string to_json(std::span<const DensityRow> rows);

// Normalized amicable pairs on y^2 + y = x^3 + x^2 with p < 10^11.
std::span<const PrimePair> known_pairs_conductor43();

struct PairListDiff {
    u64 X = 0;
    std::vector<PrimePair> computed;
    std::vector<PrimePair> expected;
    std::vector<PrimePair> missing;     // expected but not computed
    std::vector<PrimePair> unexpected;  // computed but not expected

    bool matches() const { return missing.empty() && unexpected.empty(); }
};

PairListDiff check_conductor43_pairs(u64 X, const SearchOptions& opts = {});

struct GrowthRow {
    u64 X = 0;
    u64 pairs = 0;

    // Q / (sqrt(X) / (log X)^2)
    double scaled() const;
    // log Q / log X; nothing when Q = 0
    std::optional<double> exponent() const;
};

std::vector<GrowthRow> run_growth_table(const CurveQ& E, std::span<const u64> checkpoints, const SearchOptions& opts = {});

std::string to_csv(std::span<const GrowthRow> rows);
std::string to_json(std::span<const GrowthRow> rows);

}  // namespace ecaliquot
