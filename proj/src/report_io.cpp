#include "relaysim/report_io.hpp"

#include "json.hpp"
#include <fmt/format.h>

#include "relaysim/units.hpp"

namespace relaysim::report {

namespace {

using units::format_number;

struct Entry {
    std::string key;
    nlohmann::json value;
    std::string text;
};

std::vector<Entry> summary_entries(const simcore::SimReport& r, const scenario::PlanResult* plan) {
    std::vector<Entry> out;
    auto num = [&](std::string key, double v) { out.push_back({std::move(key), v, format_number(v)}); };
    auto count = [&](std::string key, std::uint64_t v) { out.push_back({std::move(key), v, fmt::format("{}", v)}); };
    auto text = [&](std::string key, std::string v) { out.push_back({std::move(key), v, v}); };

    count("seed", r.seed);
    num("blocktime", r.blocktime);
    num("duration", r.duration);
    count("total_mined", r.total_mined);
    count("final_height", r.final_height);
    num("orphan_rate", r.orphan_rate);
    count("fork_count", r.fork_count);
    count("propagation.fully_propagated", r.propagation.fully_propagated);
    num("propagation.mean_full_delay", r.propagation.mean_full_delay);
    num("propagation.max_full_delay", r.propagation.max_full_delay);

    std::uint64_t confirmed = 0;
    double latency_sum = 0.0;
    for (const auto& tx : r.txs) {
        if (auto l = tx.latency()) {
            ++confirmed;
            latency_sum += *l;
        }
    }
    count("tx_total", r.txs.size());
    count("tx_confirmed", confirmed);
    num("tx_mean_latency", confirmed ? latency_sum / static_cast<double>(confirmed) : 0.0);

    for (const auto& d : simcore::dominance_stats(r)) {
        num(fmt::format("node.{}.share", d.id), d.main_chain_share);
        num(fmt::format("node.{}.stale_fraction", d.id), d.stale_fraction);
    }
    for (const auto& n : r.nodes) {
        count(fmt::format("node.{}.mined", n.id), n.mined);
        count(fmt::format("node.{}.main_chain", n.id), n.main_chain);
    }
    if (plan) {
        num("b_min", plan->bound.b_min);
        text("rule", planner::to_string(plan->bound.rule));
        num("sampled_diameter", plan->sampled_diameter);
        text("verdict", planner::to_string(plan->feasibility.verdict));
        num("governing_latency", plan->feasibility.governing_latency);
        num("threshold", plan->feasibility.threshold);
    }
    return out;
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

}  // namespace

std::string blocks_csv(const simcore::SimReport& r) {
    std::string out = "id,parent,miner,time,height,on_main_chain\n";
    for (const auto& b : r.blocks) {
        out += fmt::format("{},{},{},{},{},{}\n", b.id, b.parent, r.nodes.at(b.miner).id,
                           format_number(b.time), b.height, b.on_main_chain ? 1 : 0);
    }
    return out;
}

std::string transactions_csv(const simcore::SimReport& r) {
    std::string out = "id,created,confirmed,latency\n";
    for (const auto& tx : r.txs) {
        out += fmt::format("{},{},{},{}\n", tx.id, format_number(tx.created), optional_cell(tx.confirmed),
                           optional_cell(tx.latency()));
    }
    return out;
}

std::string summary_document(const simcore::SimReport& r, const scenario::PlanResult* plan) {
    std::string out;
    for (const auto& e : summary_entries(r, plan)) out += fmt::format("{} = {}\n", e.key, e.text);
    return out;
}

std::string summary_json_line(const simcore::SimReport& r, const scenario::PlanResult* plan) {
    nlohmann::ordered_json doc;
    for (auto& e : summary_entries(r, plan)) doc[e.key] = std::move(e.value);
    return doc.dump() + "\n";
}

std::string summary_table(const simcore::SimReport& r) {
    std::string out;
    out += fmt::format("seed {}  blocks mined {}  final height {}  orphan rate {:.6f}  forks {}\n",
                       r.seed, r.total_mined, r.final_height, r.orphan_rate, r.fork_count);
    out += fmt::format("{:<16} {:>10} {:>10} {:>10} {:>10}\n", "node", "mined", "main", "share", "stale");
    const auto dom = simcore::dominance_stats(r);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        out += fmt::format("{:<16} {:>10} {:>10} {:>10.4f} {:>10.4f}\n", r.nodes[i].id, r.nodes[i].mined,
                           r.nodes[i].main_chain, dom[i].main_chain_share, dom[i].stale_fraction);
    }
    return out;
}

}  // namespace relaysim::report
