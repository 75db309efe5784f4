// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>
#include <fmt/format.h>

#include "relaysim/cli.hpp"
#include "relaysim/planner.hpp"
#include "relaysim/pow.hpp"
#include "relaysim/relkin.hpp"
#include "relaysim/simcore.hpp"
#include "relaysim/topo.hpp"

#include <unistd.h>

using namespace relaysim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "FAILED ") + what;
    }
};

bool within_rel(double got, double want, double tol) { return std::abs(got - want) <= tol * std::abs(want); }

topo::NodeSpec node(std::string id, double hashpower) {
    std::string region = id;
    return {std::move(id), topo::StaticPoint{}, hashpower, std::move(region)};
}

simcore::Scenario two_node(double a, double b, double delay, double blocktime, double duration) {
    simcore::Scenario s{topo::LatencyGraph::with_explicit_edges({node("earth", a), node("mars", b)},
                                                                {{"earth", "mars", delay}})};
    s.blocktime = blocktime;
    s.duration = duration;
    return s;
}

unsigned workers() { return std::max(2u, std::thread::hardware_concurrency()); }

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t n) {
    std::vector<std::uint64_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = first + i;
    return out;
}

// ---------------------------------------------------------------------------

Outcome worked_example() {
    Outcome o;
    const relkin::Velocity v{0.98 * relkin::kSpeedOfLight};
    const auto p = relkin::boost({1.10, 4.0e8}, v);
    const auto cls = relkin::classify(1.10, 4.0e8);
    const double g = relkin::gamma(v);
    o.require(std::abs(g - 5.0252) <= 1e-4, fmt::format("gamma={:.6f}", g));
    o.require(within_rel(p.x, 3.86e8, 0.01), fmt::format("dx'={:.6e} m", p.x));
    o.require(within_rel(p.t, -1.04, 0.01), fmt::format("dt'={:.6f} s", p.t));
    o.require(within_rel(cls.v_info, 3.64e8, 0.005), fmt::format("v_info={:.6e} m/s", cls.v_info));
    o.require(cls.kind == relkin::CausalKind::Spacelike, std::string("class=") + relkin::to_string(cls.kind));
    return o;
}

Outcome difficulty_decode() {
    Outcome o;
    using boost::multiprecision::cpp_int;
    const auto target = pow::decode_compact(pow::CompactBits{0x1903a30c});
    // Oracle: coefficient shifted by 8 * (exponent - 3) bits.
    const cpp_int oracle = cpp_int(0x03a30c) << (8 * (0x19 - 3));
    const cpp_int got(target.value);
    o.require(got == oracle, "exact integer " + target.to_decimal());
    o.require(got == cpp_int(238348) * (cpp_int(1) << 176), "equals 238348*2^176");
    const auto digits = target.to_decimal();
    o.require(digits.size() == 59 && digits.starts_with("22"),
              fmt::format("2 significant figures {}.{}e{}", digits[0], digits[1], digits.size() - 1));
    return o;
}

Outcome time_dilation() {
    Outcome o;
    const double years = relkin::proper_elapsed(100.0, {0.99 * relkin::kSpeedOfLight});
    o.require(within_rel(years, 14.107, 0.001), fmt::format("{:.6f} years", years));
    return o;
}

Outcome galilean_limit() {
    Outcome o;
    const double c = 1e15;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> vel(-3e4, 3e4), tt(-1e4, 1e4), xx(-1e9, 1e9);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double v = vel(rng), t = tt(rng), x = xx(rng);
        const auto p = relkin::boost({t, x}, {v}, c);
        const double gx = x - v * t;
        const double ex = std::abs(p.x - gx) / std::max({std::abs(gx), std::abs(x), std::abs(v * t)});
        const double et = std::abs(p.t - t) / std::abs(t);
        worst = std::max({worst, ex, et});
    }
    o.require(worst <= 1e-6, fmt::format("1000 boosts, worst relative error {:.3e}", worst));
    return o;
}

Outcome interval_invariance() {
    Outcome o;
    const double c = relkin::kSpeedOfLight;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> beta(-0.999, 0.999), tt(-1e3, 1e3), xx(-3e11, 3e11);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double t = tt(rng), x = xx(rng);
        const auto p = relkin::boost({t, x}, {beta(rng) * c}, c);
        const double before = c * c * t * t - x * x;
        const double after = c * c * p.t * p.t - p.x * p.x;
        // Relative to the interval's scale, so near-null pairs do not divide by ~0.
        const double scale = c * c * t * t + x * x;
        worst = std::max(worst, std::abs(after - before) / scale);
    }
    o.require(worst <= 1e-9, fmt::format("10^4 pairs, worst relative change {:.3e}", worst));
    return o;
}

Outcome planner_formulas() {
    Outcome o;
    const double sat = planner::bound_satellite(10.0).b_min;
    const double conc = planner::bound_concentric(std::vector<double>{4.0, 6.0}).b_min;
    const double sep = planner::bound_separate(2.0, 10.0, 3.0).b_min;
    o.require(sat == 5.0, fmt::format("satellite {}", sat));
    o.require(conc == 5.0, fmt::format("concentric {}", conc));
    o.require(sep == 7.5, fmt::format("separate {}", sep));
    return o;
}

double floyd_warshall_max(std::vector<std::vector<double>> d) {
    const std::size_t n = d.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    double m = 0.0;
    for (const auto& row : d) m = std::max(m, *std::max_element(row.begin(), row.end()));
    return m;
}

Outcome worst_case_confirmation() {
    Outcome o;
    const auto g = topo::LatencyGraph::with_explicit_edges(
        {node("earth", 1), node("mars", 1), node("venus", 1)},
        {{"earth", "mars", 1.0}, {"earth", "venus", 2.0}, {"mars", "venus", 4.0}});
    const double wc = simcore::worst_case_confirmation(g);
    const double d = topo::diameter(g);
    const double fw = floyd_warshall_max({{0, 1, 2}, {1, 0, 4}, {2, 4, 0}});
    o.require(wc == 6.0, fmt::format("worst case {}", wc));
    o.require(d == 3.0 && d == fw, fmt::format("diameter {} vs Floyd-Warshall {}", d, fw));
    return o;
}

Outcome lattice_flood() {
    Outcome o;
    const int l = 4, w = 4, h = 4;
    const double alpha = 1.0;
    simcore::Scenario s{topo::build_lattice(l, w, h, alpha)};
    s.mining = simcore::MiningModel::Disabled;
    s.duration = 1000.0;
    s.record_arrivals = true;
    simcore::Simulator sim(s);
    sim.inject_block(s.graph.index_of(topo::lattice_node_id(0, 0, 0)), 0.0);
    const auto r = sim.run();
    const auto far = s.graph.index_of(topo::lattice_node_id(l - 1, w - 1, h - 1));
    const auto seen = r.arrivals.at(0).at(far);
    const double hops = (l - 1) + (w - 1) + (h - 1);  // breadth-first distance on the grid
    o.require(seen && *seen == alpha * hops,
              fmt::format("corner reached at t={}", seen ? fmt::format("{}", *seen) : "never"));
    o.detail += fmt::format("; alpha*l*w*h = {} (not asserted)", alpha * l * w * h);
    return o;
}

Outcome orphan_monotonicity() {
    Outcome o;
    const std::vector<double> blocktimes{75, 150, 300, 600, 1200};
    const auto seeds = seed_range(100, 20);
    std::vector<double> means;
    std::uint64_t fewest = std::numeric_limits<std::uint64_t>::max();
    for (double b : blocktimes) {
        const auto reports = simcore::run_sweep(two_node(0.5, 0.5, 452.0, b, 2300.0 * b), seeds, workers());
        double sum = 0.0;
        for (const auto& r : reports) {
            sum += r.orphan_rate;
            fewest = std::min(fewest, r.total_mined);
        }
        means.push_back(sum / static_cast<double>(reports.size()));
    }
    std::string rates;
    for (std::size_t i = 0; i < means.size(); ++i) rates += fmt::format(" B={}:{:.4f}", blocktimes[i], means[i]);
    o.require(fewest >= 2000, fmt::format("fewest blocks in a run {}", fewest));
    o.require(std::is_sorted(means.rbegin(), means.rend()), "mean orphan rate nonincreasing:" + rates);
    o.require(means.front() > means.back(), "rate at 75 s exceeds rate at 1200 s");
    return o;
}

Outcome dominance() {
    Outcome o;
    const double b = 600.0;
    auto s = two_node(0.9, 0.1, 0.0, b, 5500.0 * b);
    s.seed = 9;
    const auto r = simcore::run(s);
    const auto d = simcore::dominance_stats(r);
    o.require(r.total_mined >= 5000, fmt::format("{} blocks", r.total_mined));
    o.require(std::abs(d[0].main_chain_share - 0.9) <= 0.03 && std::abs(d[1].main_chain_share - 0.1) <= 0.03,
              fmt::format("zero-delay shares {:.4f}/{:.4f}", d[0].main_chain_share, d[1].main_chain_share));

    const auto reports = simcore::run_sweep(two_node(0.9, 0.1, b, b, 2000.0 * b), seed_range(200, 20), workers());
    double majority = 0.0, minority = 0.0;
    int seeds_agreeing = 0;
    for (const auto& rep : reports) {
        const auto st = simcore::dominance_stats(rep);
        majority += st[0].stale_fraction;
        minority += st[1].stale_fraction;
        if (st[1].stale_fraction > st[0].stale_fraction) ++seeds_agreeing;
    }
    majority /= 20.0;
    minority /= 20.0;
    o.require(minority > majority,
              fmt::format("delay=B mean stale fraction minority {:.4f} > majority {:.4f} ({}/20 seeds)",
                          minority, majority, seeds_agreeing));
    return o;
}

Outcome censorship() {
    Outcome o;
    const double b = 600.0;
    auto s = two_node(1.0, 0.0, 451.98, b, 1e4 * b);
    s.seed = 13;
    s.censorship = {{"mars"}, {}};
    s.tx_workload = {{3600.0, 1, 0}};
    const auto blocked = simcore::run(s);
    o.require(!blocked.txs[0].confirmed, fmt::format("all hashpower censoring: unconfirmed after {} blocks",
                                                     blocked.total_mined));

    auto with_mars = s;
    with_mars.graph = s.graph.with_nodes({node("earth", 0.9), node("mars", 0.1)});
    const auto open = simcore::run(with_mars);
    o.require(open.txs[0].confirmed.has_value(),
              open.txs[0].confirmed ? fmt::format("mars at 10%: confirmed after {:.0f} s", *open.txs[0].latency())
                                    : std::string("mars at 10%: unconfirmed"));
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / fmt::format("relaysim-acceptance-{}", ::getpid());
    fs::remove_all(root);
    int checked = 0;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(RELAYSIM_SCENARIO_DIR)) {
        if (e.path().extension() == ".scn") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& scn : files) {
        std::string outputs[2];
        for (int run = 0; run < 2; ++run) {
            const auto dir = root / fmt::format("{}-{}", scn.stem().string(), run);
            std::ostringstream out, err;
            const std::vector<std::string> args{"simulate", scn.string(), "--output-dir", dir.string()};
            const int code = cli::run(args, out, err);
            if (code != 0) o.require(false, scn.filename().string() + ": " + err.str());
            outputs[run] = out.str();
            for (const char* f : {"summary.txt", "blocks.csv", "transactions.csv"}) outputs[run] += slurp(dir / f);
        }
        if (outputs[0] != outputs[1]) o.require(false, scn.filename().string() + " differs between runs");
        ++checked;
    }
    fs::remove_all(root);
    o.require(checked >= 7, fmt::format("{} bundled scenarios byte-identical across runs", checked));

    auto base = two_node(0.5, 0.5, 452.0, 600.0, 600.0 * 1000);
    const auto seeds = seed_range(1, 8);
    const auto one = simcore::run_sweep(base, seeds, 1);
    const auto many = simcore::run_sweep(base, seeds, workers());
    o.require(one == many, fmt::format("sweep of {} seeds identical with 1 and {} workers", seeds.size(), workers()));
    return o;
}

Outcome supply_cap() {
    Outcome o;
    const auto total = pow::total_supply();
    // Oracle: geometric halving summed with integer division per era.
    boost::multiprecision::cpp_int sum = 0;
    for (std::uint64_t reward = 5'000'000'000ull; reward > 0; reward /= 2) sum += reward * 210'000ull;
    o.require(boost::multiprecision::cpp_int(total) == sum, fmt::format("total {} atomic units", total));
    o.require(total < 2'100'000'000'000'000ull, "below 2.1e15");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"worked example", worked_example},
        {"difficulty decode", difficulty_decode},
        {"time dilation", time_dilation},
        {"galilean limit", galilean_limit},
        {"interval invariance", interval_invariance},
        {"planner formulas", planner_formulas},
        {"worst-case confirmation", worst_case_confirmation},
        {"lattice propagation", lattice_flood},
        {"orphan monotonicity", orphan_monotonicity},
        {"dominance", dominance},
        {"censorship", censorship},
        {"determinism", determinism},
        {"supply cap", supply_cap},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
    }
    std::cout << fmt::format("{}/{} criteria passed", criteria.size() - failed, criteria.size()) << std::endl;
    return failed == 0 ? 0 : 1;
}
