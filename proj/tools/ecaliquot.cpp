// ecaliquot: command line front end for the aliquot cycle library.

#include <charconv>
#include <cmath>
#include <iomanip>
#include <optional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecaliquot/aliquot.hpp"
#include "ecaliquot/cm_density.hpp"
#include "ecaliquot/constructor.hpp"
#include "ecaliquot/harness.hpp"

using namespace ecaliquot;
using nlohmann::json;

namespace {

constexpr int kMismatch = 2;

// Integer from "1000000", "1e6" or "10^6".
u64 parse_count(const std::string& text) {
    auto fail = [&] { return std::invalid_argument("not a count: " + text); };
    auto to_u64 = [&](std::string_view s) {
        u64 v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) throw fail();
        return v;
    };
    auto power = [&](u64 base, u64 exp) {
        u64 v = 1;
        for (u64 i = 0; i < exp; ++i) {
            if (v > UINT64_MAX / base) throw fail();
            v *= base;
        }
        return v;
    };
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
        u64 m = to_u64(std::string_view(text).substr(0, e));
        return m * power(10, to_u64(std::string_view(text).substr(e + 1)));
    }
    if (auto c = text.find('^'); c != std::string::npos)
        return power(to_u64(std::string_view(text).substr(0, c)), to_u64(std::string_view(text).substr(c + 1)));
    return to_u64(text);
}

std::vector<u64> parse_list(const std::string& text) {
    std::vector<u64> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        out.push_back(parse_count(text.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

struct CommonFlags {
    std::string curve;
    std::optional<i64> k;
    std::string X = "100000";
    std::string backend = "automatic";
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string format = "csv";

    CurveQ resolve() const {
        if (k) return CurveQ::short_form(0, *k);
        if (curve.empty()) throw CLI::ValidationError("--curve", "a curve or --k is required");
        return CurveQ::parse(curve);
    }
    SearchOptions options() const { return {parse_backend(backend), workers}; }
    OutputFormat output() const { return parse_format(format); }
};

void add_curve(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--curve", f.curve, "[a1,a2,a3,a4,a6], x^3+k or x^3+a*x+b");
    cmd->add_option("--k", f.k, "use y^2 = x^3 + k");
}

void add_search(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--X", f.X, "prime bound (1e6 and 10^6 accepted)");
    cmd->add_option("--backend", f.backend, "point counting backend")
        ->check(CLI::IsMember({"automatic", "naive", "bsgs", "cm"}));
    cmd->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
}

void add_format(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

std::string join(const std::vector<u64>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

json density_json(const DensityPrediction& d) {
    json j = {{"k", d.k},
              {"case", d.case_label},
              {"sharp", d.sharp_count},
              {"M", d.m_count},
              {"M1", d.m1_count},
              {"ratio", to_string(d.ratio)},
              {"ratio_decimal", boost::rational_cast<double>(d.ratio)}};
    if (d.r_of_k) j["R"] = to_string(*d.r_of_k);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Aliquot cycles and amicable pairs of elliptic curves"};
    app.require_subcommand(1);
    CommonFlags f;
    int rc = 0;

    auto* pairs = app.add_subcommand("pairs", "amicable pair sweep with prime-order and Type 1 counts");
    std::string checkpoint;
    bool list = false;
    add_curve(pairs, f);
    add_search(pairs, f);
    add_format(pairs, f);
    pairs->add_option("--checkpoint", checkpoint, "JSON lines file of finished ranges");
    pairs->add_flag("--list", list, "print the pairs instead of the summary (csv)");
    pairs->callback([&] {
        ExperimentConfig cfg;
        cfg.curve = f.curve;
        cfg.k = f.k;
        cfg.X = parse_count(f.X);
        cfg.backend = parse_backend(f.backend);
        cfg.workers = f.workers;
        if (!checkpoint.empty()) cfg.checkpoint = checkpoint;
        if (!cfg.k && cfg.curve.empty()) throw CLI::ValidationError("--curve", "a curve or --k is required");
        const SweepReport r = run_pair_sweep(cfg);
        if (f.output() == OutputFormat::json) {
            std::cout << to_json(r);
        } else if (list) {
            std::cout << "p,q\n";
            for (auto [p, q] : r.pair_list) std::cout << p << ',' << q << '\n';
        } else {
            std::cout << to_csv(r);
        }
    });

    auto* cycles = app.add_subcommand("cycles", "normalized aliquot cycles of the given lengths");
    std::string lengths = "2";
    add_curve(cycles, f);
    add_search(cycles, f);
    add_format(cycles, f);
    cycles->add_option("--lengths", lengths, "comma separated cycle lengths");
    cycles->callback([&] {
        const CurveQ E = f.resolve();
        json out = json::array();
        if (f.output() == OutputFormat::csv) std::cout << "length,cycle\n";
        for (u64 ell : parse_list(lengths))
            for (const auto& c : aliquot_cycles_up_to(E, static_cast<int>(ell), parse_count(f.X), f.options())) {
                if (f.output() == OutputFormat::csv)
                    std::cout << ell << ",\"" << c.to_csv() << "\"\n";
                else
                    out.push_back({{"length", ell}, {"cycle", c.primes}});
            }
        if (f.output() == OutputFormat::json) std::cout << out.dump(2) << '\n';
    });

    auto* chains = app.add_subcommand("chains", "count chains p_1 -> ... -> p_l of distinct primes");
    add_curve(chains, f);
    add_search(chains, f);
    add_format(chains, f);
    chains->add_option("--lengths", lengths, "comma separated chain lengths");
    chains->callback([&] {
        const CurveQ E = f.resolve();
        const u64 X = parse_count(f.X);
        json out = json::array();
        if (f.output() == OutputFormat::csv) std::cout << "length,X,chains\n";
        for (u64 ell : parse_list(lengths)) {
            u64 n = chain_count(E, static_cast<int>(ell), X, f.options());
            if (f.output() == OutputFormat::csv)
                std::cout << ell << ',' << X << ',' << n << '\n';
            else
                out.push_back({{"length", ell}, {"X", X}, {"chains", n}});
        }
        if (f.output() == OutputFormat::json) std::cout << out.dump(2) << '\n';
    });

    auto* construct = app.add_subcommand("construct", "build a curve with aliquot cycles of given lengths");
    std::string hint = "5";
    construct->add_option("--lengths", lengths, "comma separated cycle lengths")->required();
    construct->add_option("--start", hint, "smallest prime to use");
    construct->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
    add_format(construct, f);
    construct->callback([&] {
        std::vector<int> ls;
        for (u64 ell : parse_list(lengths)) ls.push_back(static_cast<int>(ell));
        std::optional<CycleConstruction> built;
        try {
            built = build_cycle_curve(ls, parse_count(hint), f.workers);
        } catch (const std::logic_error& e) {
            std::cerr << e.what() << '\n';
            rc = kMismatch;
            return;
        }
        const auto& c = *built;
        if (f.output() == OutputFormat::json) {
            json cycles = json::array();
            for (const auto& cy : c.cycles) cycles.push_back(cy.primes);
            std::cout << json{{"curve", c.curve.to_string()}, {"cycles", cycles}}.dump(2) << '\n';
        } else {
            std::cout << "curve," << '"' << c.curve.to_string() << "\"\n";
            for (const auto& cy : c.cycles) std::cout << "cycle,\"" << cy.to_csv() << "\"\n";
        }
    });

    auto* verify = app.add_subcommand("verify", "re-check a claimed aliquot cycle");
    std::string cycle;
    add_curve(verify, f);
    verify->add_option("--cycle", cycle, "comma separated primes in cycle order")->required();
    verify->add_option("--backend", f.backend, "point counting backend")
        ->check(CLI::IsMember({"automatic", "naive", "bsgs", "cm"}));
    verify->callback([&] {
        const auto primes = parse_list(cycle);
        const bool ok = verify_cycle(f.resolve(), primes, parse_backend(f.backend));
        std::cout << (ok ? "ok" : "mismatch") << '\n';
        if (!ok) rc = kMismatch;
    });

    auto* density = app.add_subcommand("density", "predicted Type 1 density for y^2 = x^3 + k");
    i64 dk = 0;
    std::string dX;
    density->add_option("--k", dk, "k coprime to 6")->required();
    density->add_option("--X", dX, "also run the experiment up to X");
    density->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
    density->callback([&] {
        json j = density_json(density_prediction(dk));
        if (!dX.empty()) {
            SearchOptions opts;
            opts.workers = f.workers;
            const DensityRow row = run_density_report(dk, parse_count(dX), opts);
            j["X"] = row.X;
            j["n_k"] = row.n_k;
            j["n_k1"] = row.n_k1;
            j["pairs"] = row.pairs;
            j["experiment"] = row.experiment();
        }
        std::cout << j.dump(2) << '\n';
    });

    auto* mktable = app.add_subcommand("mktable", "sizes of O_K^#, M_k and M_k^[1] over a range of k");
    std::string range = "5..97";
    bool composite = false;
    mktable->add_option("--range", range, "lo..hi");
    mktable->add_flag("--composite", composite, "include composite k coprime to 6");
    add_format(mktable, f);
    mktable->callback([&] {
        auto dots = range.find("..");
        if (dots == std::string::npos) throw CLI::ValidationError("--range", "expected lo..hi");
        const u64 lo = parse_count(range.substr(0, dots)), hi = parse_count(range.substr(dots + 2));
        json out = json::array();
        if (f.output() == OutputFormat::csv) std::cout << "k,case,sharp,M,M1,ratio,decimal\n";
        for (u64 k = std::max<u64>(lo, 5); k <= hi; ++k) {
            if (k % 2 == 0 || k % 3 == 0 || (!composite && !is_prime(k))) continue;
            const auto d = density_prediction(static_cast<i64>(k));
            if (f.output() == OutputFormat::csv)
                std::cout << k << ',' << d.case_label << ',' << d.sharp_count << ',' << d.m_count << ','
                          << d.m1_count << ',' << to_string(d.ratio) << ',' << std::fixed << std::setprecision(4)
                          << boost::rational_cast<double>(d.ratio) << '\n';
            else
                out.push_back(density_json(d));
        }
        if (f.output() == OutputFormat::json) std::cout << out.dump(2) << '\n';
    });

    auto* c6check = app.add_subcommand("c6check", "trace formula vs enumeration for the genus 4 curves");
    u64 norm_max = 2500;
    c6check->add_option("--norm-max", norm_max, "largest prime ideal norm");
    c6check->callback([&] {
        const auto report = c6_check(norm_max);
        std::cout << "ideals,cases,failures\n"
                  << report.ideals << ',' << report.cases << ',' << report.failures.size() << '\n';
        for (const auto& row : report.failures)
            std::cerr << to_string(row.ideal) << ' ' << row.zeta << ' ' << row.xi << " trace=" << row.trace_count
                      << " enumerated=" << row.brute_count << " 18M+e=" << 18 * row.m_sub + row.e << '\n';
        if (!report.failures.empty()) rc = kMismatch;
    });

    auto* growth = app.add_subcommand("growth", "Q(X) against sqrt(X)/(log X)^2 at several bounds");
    std::string checkpoints = "1e6,1e7";
    add_curve(growth, f);
    growth->add_option("--X", checkpoints, "comma separated bounds");
    growth->add_option("--backend", f.backend, "point counting backend")
        ->check(CLI::IsMember({"automatic", "naive", "bsgs", "cm"}));
    growth->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
    add_format(growth, f);
    growth->callback([&] {
        const auto xs = parse_list(checkpoints);
        const auto rows = run_growth_table(f.resolve(), xs, f.options());
        std::cout << (f.output() == OutputFormat::csv ? to_csv(rows) : to_json(rows));
    });

    auto* typeln = app.add_subcommand("typeln", "iterate n -> n + 1 - a_n and the Neron-model map");
    std::string start = "5";
    int steps = 10;
    add_curve(typeln, f);
    typeln->add_option("--n", start, "starting value")->required();
    typeln->add_option("--steps", steps, "number of iterations");
    typeln->callback([&] {
        const CurveQ E = f.resolve();
        std::cout << "step,L,N\n";
        i64 l = static_cast<i64>(parse_count(start));
        u64 n = parse_count(start);
        for (int i = 0; i <= steps; ++i) {
            std::cout << i << ',' << (l > 0 ? std::to_string(l) : "") << ',' << (n > 0 ? std::to_string(n) : "")
                      << '\n';
            l = l > 0 ? type_l_step(E, static_cast<u64>(l)) : 0;
            n = n > 0 ? type_n_step(E, n) : 0;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
