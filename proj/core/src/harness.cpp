#include "ecaliquot/harness.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "ecaliquot/parallel.hpp"

namespace ecaliquot {

using nlohmann::json;

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown output format: " + std::string(name));
}

void ExperimentConfig::validate() const {
    if (X < 5) throw std::invalid_argument("X must be at least 5");
    if (workers < 1) throw std::invalid_argument("worker count must be at least 1");
    if (range_size < 1) throw std::invalid_argument("range size must be positive");
    if (!k && curve.empty()) throw std::invalid_argument("no curve given");
    for (int ell : lengths)
        if (ell < 2) throw std::invalid_argument("chain lengths must be at least 2");
}

CurveQ ExperimentConfig::resolve_curve() const {
    if (k) return CurveQ::short_form(0, *k);
    return CurveQ::parse(curve);
}

SearchOptions ExperimentConfig::search_options() const { return {backend, workers, range_size}; }

namespace {

double ratio(u64 num, u64 den) { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

struct RangeCounts {
    u64 lo = 0, hi = 0;
    u64 prime_order = 0, n_k = 0, n_k1 = 0;
    std::vector<PrimePair> pairs;
};

json range_to_json(const std::string& curve, const RangeCounts& c) {
    json pairs = json::array();
    for (auto [p, q] : c.pairs) pairs.push_back({p, q});
    return {{"curve", curve},       {"lo", c.lo},     {"hi", c.hi},         {"prime_order", c.prime_order},
            {"n_k", c.n_k},         {"n_k1", c.n_k1}, {"pairs", pairs}};
}

// Append-only JSON lines file, synced after every record.
class CheckpointLog {
public:
    CheckpointLog(const std::filesystem::path& path, std::string curve) : curve_(std::move(curve)) {
        load(path);
        fd_ = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
        if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "open " + path.string());
    }
    CheckpointLog(const CheckpointLog&) = delete;
    CheckpointLog& operator=(const CheckpointLog&) = delete;
    ~CheckpointLog() {
        if (fd_ >= 0) ::close(fd_);
    }

    std::optional<RangeCounts> find(const Range& r) const {
        auto it = done_.find({r.lo, r.hi});
        if (it == done_.end()) return std::nullopt;
        return it->second;
    }

    void record(const RangeCounts& c) {
        const std::string line = range_to_json(curve_, c).dump() + "\n";
        std::lock_guard lock(mutex_);
        const char* data = line.data();
        std::size_t left = line.size();
        while (left > 0) {
            ssize_t n = ::write(fd_, data, left);
            if (n < 0) {
                if (errno == EINTR) continue;
                throw std::system_error(errno, std::generic_category(), "checkpoint write");
            }
            data += n;
            left -= static_cast<std::size_t>(n);
        }
        if (::fsync(fd_) != 0) throw std::system_error(errno, std::generic_category(), "checkpoint fsync");
    }

private:
    void load(const std::filesystem::path& path) {
        std::ifstream in(path);
        std::string line;
        while (std::getline(in, line)) {
            // A torn final line from an interrupted run is skipped.
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object() || j.value("curve", "") != curve_) continue;
            RangeCounts c;
            c.lo = j.at("lo").get<u64>();
            c.hi = j.at("hi").get<u64>();
            c.prime_order = j.at("prime_order").get<u64>();
            c.n_k = j.at("n_k").get<u64>();
            c.n_k1 = j.at("n_k1").get<u64>();
            for (const auto& pq : j.at("pairs")) c.pairs.emplace_back(pq.at(0).get<u64>(), pq.at(1).get<u64>());
            done_[{c.lo, c.hi}] = std::move(c);
        }
    }

    std::string curve_;
    int fd_ = -1;
    std::mutex mutex_;
    std::map<std::pair<u64, u64>, RangeCounts> done_;
};

RangeCounts sweep_range(const PointCounter& counter, const Range& r) {
    RangeCounts c;
    c.lo = r.lo;
    c.hi = r.hi;
    for (u64 p : primes_in_range(r.lo, r.hi)) {
        auto n = counter.count(p);
        if (!n || !is_prime(*n)) continue;
        const u64 q = *n;
        ++c.prime_order;
        if (p < 5) continue;
        auto m = counter.count(q);
        if (!m) continue;
        ++c.n_k;
        if (*m == p || *m == 2 * q + 2 - p) ++c.n_k1;
        if (*m == p && p < q) c.pairs.emplace_back(p, q);
    }
    return c;
}

}  // namespace

double SweepReport::pairs_over_prime_order() const { return ratio(pairs, prime_order); }
double SweepReport::type1_ratio() const { return ratio(n_k1, n_k); }
double SweepReport::pairs_over_type1() const { return ratio(pairs, n_k1); }

SweepReport run_pair_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const CurveQ E = cfg.resolve_curve();
    const PointCounter counter(E, cfg.backend);
    const std::string name = E.to_string();

    std::optional<CheckpointLog> log;
    if (cfg.checkpoint) log.emplace(*cfg.checkpoint, name);

    auto per_range = map_ranges(split_ranges(2, cfg.X, cfg.range_size), cfg.workers, [&](const Range& r) {
        if (log)
            if (auto saved = log->find(r)) return *saved;
        RangeCounts c = sweep_range(counter, r);
        if (log) log->record(c);
        return c;
    });

    SweepReport out;
    out.curve = name;
    out.X = cfg.X;
    for (const auto& c : per_range) {
        out.prime_order += c.prime_order;
        out.n_k += c.n_k;
        out.n_k1 += c.n_k1;
        out.pair_list.insert(out.pair_list.end(), c.pairs.begin(), c.pairs.end());
    }
    out.pairs = out.pair_list.size();
    for (int ell : cfg.lengths) out.chains.push_back({ell, chain_count(E, ell, cfg.X, cfg.search_options())});
    out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

namespace {

std::string fixed(double x, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

// Elapsed time is left out so that resumed and uninterrupted runs agree.
std::string to_csv(const SweepReport& r) {
    std::ostringstream os;
    os << "curve,X,prime_order,pairs,n_k,n_k1,pairs_over_prime_order,type1_ratio,pairs_over_type1";
    for (const auto& c : r.chains) os << ",chains_" << c.length;
    os << "\n";
    os << csv_field(r.curve) << ',' << r.X << ',' << r.prime_order << ',' << r.pairs << ',' << r.n_k << ','
       << r.n_k1 << ',' << fixed(r.pairs_over_prime_order(), 4) << ',' << fixed(r.type1_ratio(), 4) << ','
       << fixed(r.pairs_over_type1(), 4);
    for (const auto& c : r.chains) os << ',' << c.count;
    os << "\n";
    return os.str();
}

std::string to_json(const SweepReport& r) {
    json pairs = json::array();
    for (auto [p, q] : r.pair_list) pairs.push_back({p, q});
    json chains = json::object();
    for (const auto& c : r.chains) chains[std::to_string(c.length)] = c.count;
    json j = {{"curve", r.curve},
              {"X", r.X},
              {"prime_order", r.prime_order},
              {"count", r.pairs},
              {"n_k", r.n_k},
              {"n_k1", r.n_k1},
              {"pairs_over_prime_order", r.pairs_over_prime_order()},
              {"type1_ratio", r.type1_ratio()},
              {"pairs_over_type1", r.pairs_over_type1()},
              {"pair_list", pairs},
              {"chains", chains},
              {"elapsed", r.elapsed_seconds}};
    return j.dump(2) + "\n";
}

double DensityRow::experiment() const { return ratio(n_k1, n_k); }

double DensityRow::deviation() const {
    return std::abs(experiment() - boost::rational_cast<double>(predicted));
}

DensityRow run_density_report(i64 k, u64 X, const SearchOptions& opts) {
    ExperimentConfig cfg;
    cfg.k = k;
    cfg.X = X;
    cfg.backend = opts.backend;
    cfg.workers = opts.workers;
    cfg.range_size = opts.range_size;
    const SweepReport r = run_pair_sweep(cfg);
    return {k, case_label(k), X, r.pairs, r.n_k1, r.n_k, predicted_density(k)};
}

std::string to_csv(std::span<const DensityRow> rows) {
    std::ostringstream os;
    os << "k,case,X,pairs,n_k1,n_k,pairs_over_type1,experiment,conjecture,conjecture_decimal\n";
    for (const auto& r : rows)
        os << r.k << ',' << r.case_label << ',' << r.X << ',' << r.pairs << ',' << r.n_k1 << ',' << r.n_k << ','
           << fixed(ratio(r.pairs, r.n_k1), 3) << ',' << fixed(r.experiment(), 4) << ',' << to_string(r.predicted)
           << ',' << fixed(boost::rational_cast<double>(r.predicted), 4) << "\n";
    return os.str();
}

std::string to_json(std::span<const DensityRow> rows) {
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"k", r.k},
                       {"case", r.case_label},
                       {"X", r.X},
                       {"pairs", r.pairs},
                       {"n_k1", r.n_k1},
                       {"n_k", r.n_k},
                       {"experiment", r.experiment()},
                       {"conjecture", to_string(r.predicted)}});
    return out.dump(2) + "\n";
}

namespace {

constexpr std::array<PrimePair, 55> kConductor43Pairs{{
    {853, 883},
    {77761, 77999},
    {1147339, 1148359},
    {1447429, 1447561},
    {82459561, 82471789},
    {109165543, 109180121},
    {253185307, 253194619},
    {320064601, 320079131},
    {794563993, 794571803},
    {797046407, 797057473},
    {2185447367, 2185504261},
    {2382994403, 2383029443},
    {4101180511, 4101190039},
    {4686466159, 4686510971},
    {5293671709, 5293749623},
    {6677602471, 6677694539},
    {7074693823, 7074704971},
    {7806306133, 7806380963},
    {9395537549, 9395559011},
    {9771430993, 9771433303},
    {9849225103, 9849306373},
    {10574564857, 10574619851},
    {12657210407, 12657303353},
    {13003880317, 13003900901},
    {13789895011, 13790023199},
    {14436076927, 14436180091},
    {14976551207, 14976590371},
    {15597047659, 15597075937},
    {15679549877, 15679688491},
    {16322301811, 16322366867},
    {17725049203, 17725142719},
    {17841395323, 17841406601},
    {31615097957, 31615194739},
    {33266376239, 33266419807},
    {33963999907, 33964128017},
    {34525477799, 34525684639},
    {39287748091, 39287808559},
    {40136806357, 40137038941},
    {46438194193, 46438453213},
    {51838270219, 51838493561},
    {51881025571, 51881167549},
    {52011956957, 52012184953},
    {55823622193, 55823919169},
    {57920520199, 57920640709},
    {62765305697, 62765625749},
    {62995853671, 62996152237},
    {66252308051, 66252349753},
    {67177409329, 67177631771},
    {69449506103, 69449741239},
    {75002612911, 75002660263},
    {77264683829, 77264993327},
    {77635421531, 77635670141},
    {79067605783, 79067881429},
    {81263083703, 81263204563},
    {94248260597, 94248586591},
}};

}  // namespace

std::span<const PrimePair> known_pairs_conductor43() { return kConductor43Pairs; }

PairListDiff check_conductor43_pairs(u64 X, const SearchOptions& opts) {
    PairListDiff out;
    out.X = X;
    out.computed = amicable_pairs_up_to(CurveQ(0, 1, 1, 0, 0), X, opts);
    for (const auto& pq : kConductor43Pairs)
        if (pq.first <= X) out.expected.push_back(pq);
    std::set_difference(out.expected.begin(), out.expected.end(), out.computed.begin(), out.computed.end(),
                        std::back_inserter(out.missing));
    std::set_difference(out.computed.begin(), out.computed.end(), out.expected.begin(), out.expected.end(),
                        std::back_inserter(out.unexpected));
    return out;
}

double GrowthRow::scaled() const {
    const double x = static_cast<double>(X), l = std::log(x);
    return static_cast<double>(pairs) / (std::sqrt(x) / (l * l));
}

std::optional<double> GrowthRow::exponent() const {
    if (pairs == 0) return std::nullopt;
    return std::log(static_cast<double>(pairs)) / std::log(static_cast<double>(X));
}

std::vector<GrowthRow> run_growth_table(const CurveQ& E, std::span<const u64> checkpoints, const SearchOptions& opts) {
    if (checkpoints.empty()) return {};
    const u64 top = *std::max_element(checkpoints.begin(), checkpoints.end());
    const auto pairs = amicable_pairs_up_to(E, top, opts);
    std::vector<GrowthRow> out;
    for (u64 X : checkpoints) {
        auto n = std::count_if(pairs.begin(), pairs.end(), [&](const PrimePair& pq) { return pq.first <= X; });
        out.push_back({X, static_cast<u64>(n)});
    }
    return out;
}

std::string to_csv(std::span<const GrowthRow> rows) {
    std::ostringstream os;
    os << "X,pairs,scaled,exponent\n";
    for (const auto& r : rows) {
        auto e = r.exponent();
        os << r.X << ',' << r.pairs << ',' << fixed(r.scaled(), 3) << ',' << (e ? fixed(*e, 3) : "") << "\n";
    }
    return os.str();
}

std::string to_json(std::span<const GrowthRow> rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json row = {{"X", r.X}, {"pairs", r.pairs}, {"scaled", r.scaled()}};
        auto e = r.exponent();
        row["exponent"] = e ? json(*e) : json(nullptr);
        out.push_back(row);
    }
    return out.dump(2) + "\n";
}

}  // namespace ecaliquot
