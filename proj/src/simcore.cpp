#include "relaysim/simcore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "relaysim/errors.hpp"
#include "relaysim/pow.hpp"

namespace relaysim::simcore {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

void append_be(std::vector<std::uint8_t>& out, std::uint64_t value, int bytes) {
    for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

}  // namespace

// ---------------------------------------------------------------------------
// Scenario

void Scenario::validate() const {
    if (!(blocktime > 0.0) || !std::isfinite(blocktime)) {
        throw ArgumentError(fmt::format("blocktime must be positive, got {}", blocktime));
    }
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw ArgumentError(fmt::format("duration must be positive, got {}", duration));
    }
    topo::require_connected(graph);
    if (!node_velocities.empty() && node_velocities.size() != graph.size()) {
        throw ArgumentError("node_velocities must list one entry per node");
    }
    for (double v : node_velocities) {
        if (!std::isfinite(v) || std::abs(v) >= graph.c()) {
            throw DomainError(fmt::format("node velocity {} m/s is not below c", v));
        }
    }
    if (!censorship.empty() && censorship.size() != graph.size()) {
        throw ArgumentError("censorship must list one entry per node");
    }
    for (const auto& tx : tx_workload) {
        if (tx.origin >= graph.size() || tx.destination >= graph.size()) {
            throw ArgumentError("transaction references an unknown node");
        }
        if (!(tx.created >= 0.0) || !std::isfinite(tx.created)) {
            throw ArgumentError("transaction creation time must be nonnegative");
        }
    }
    if (mining != MiningModel::Disabled) {
        const bool any = std::any_of(graph.nodes().begin(), graph.nodes().end(),
                                     [](const topo::NodeSpec& n) { return n.hashpower > 0.0; });
        if (!any) throw ArgumentError("at least one node needs positive hashpower");
    }
    if (mining == MiningModel::HashGrind &&
        (hash_difficulty_bits == 0 || hash_difficulty_bits > 24)) {
        throw ArgumentError("hash grinding supports 1..24 difficulty bits");
    }
}

double Scenario::velocity(NodeIndex node) const {
    return node_velocities.empty() ? 0.0 : node_velocities.at(node);
}

bool Scenario::censors(NodeIndex miner, const TxSpec& tx) const {
    if (censorship.empty()) return false;
    const auto& banned = censorship.at(miner);
    return banned.contains(graph.node(tx.origin).region) ||
           banned.contains(graph.node(tx.destination).region);
}

// ---------------------------------------------------------------------------
// NodeChainState

NodeChainState::NodeChainState() {
    blocks_.emplace(kGenesis, Entry{kNoParent, 0, 0.0, true});
}

bool NodeChainState::is_connected(BlockId id) const {
    auto it = blocks_.find(id);
    return it != blocks_.end() && it->second.connected;
}

std::optional<double> NodeChainState::arrival_time(BlockId id) const {
    auto it = blocks_.find(id);
    if (it == blocks_.end()) return std::nullopt;
    return it->second.arrival;
}

std::size_t NodeChainState::buffered_count() const {
    std::size_t n = 0;
    for (const auto& [parent, children] : waiting_for_parent_) n += children.size();
    return n;
}

void NodeChainState::consider_tip(BlockId id, const Entry& entry) {
    if (entry.height > tip_height_ ||
        (entry.height == tip_height_ && entry.arrival < tip_arrival_)) {
        tip_ = id;
        tip_height_ = entry.height;
        tip_arrival_ = entry.arrival;
    }
}

void NodeChainState::connect(BlockId id) {
    std::vector<BlockId> stack{id};
    while (!stack.empty()) {
        const BlockId current = stack.back();
        stack.pop_back();
        auto& entry = blocks_.at(current);
        entry.connected = true;
        consider_tip(current, entry);
        if (auto it = waiting_for_parent_.find(current); it != waiting_for_parent_.end()) {
            // Reverse so children connect in arrival order when popped.
            stack.insert(stack.end(), it->second.rbegin(), it->second.rend());
            waiting_for_parent_.erase(it);
        }
    }
}

std::vector<NodeIndex> NodeChainState::on_block_arrival(const Block& block, double local_time,
                                                        std::optional<NodeIndex> sender,
                                                        std::span<const NodeIndex> neighbors) {
    if (blocks_.contains(block.id)) return {};
    blocks_.emplace(block.id, Entry{block.parent, block.height, local_time, false});

    if (is_connected(block.parent)) {
        connect(block.id);
    } else {
        waiting_for_parent_[block.parent].push_back(block.id);
    }

    std::vector<NodeIndex> out;
    out.reserve(neighbors.size());
    for (NodeIndex n : neighbors) {
        if (!sender || n != *sender) out.push_back(n);
    }
    return out;
}

bool NodeChainState::add_transaction(TxId tx) {
    if (!pool_index_.insert(tx).second) return false;
    pool_.push_back(tx);
    return true;
}

// ---------------------------------------------------------------------------
// Random streams and mining waits

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (0xd1b54a32d192ed03ull * (stream + 1));
    std::seed_seq seq{splitmix64(state), splitmix64(state), splitmix64(state), splitmix64(state)};
    engine_.seed(seq);
}

double RandomStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double next_mining_event(RandomStream& rng, double blocktime, double hashshare, double velocity,
                         double c) {
    if (hashshare <= 0.0) return std::numeric_limits<double>::infinity();
    const double rate = (hashshare / blocktime) / relkin::gamma({velocity}, c);
    // Inverse CDF; 1 - u lies in (0, 1] so the log is finite.
    return -std::log(1.0 - rng.uniform()) / rate;
}

// ---------------------------------------------------------------------------
// Simulator

Simulator::Simulator(const Scenario& scenario) : scenario_(scenario) {
    scenario_.validate();
    const auto& g = scenario_.graph;
    const std::size_t n = g.size();

    double total = 0.0;
    for (const auto& node : g.nodes()) total += node.hashpower;
    shares_.resize(n, 0.0);
    for (NodeIndex i = 0; i < n; ++i) {
        shares_[i] = total > 0.0 ? g.node(i).hashpower / total : 0.0;
    }

    neighbor_ids_.resize(n);
    for (NodeIndex i = 0; i < n; ++i) {
        for (const auto& link : g.neighbors(i)) neighbor_ids_[i].push_back(link.to);
    }
    states_.resize(n);
    streams_.reserve(n);
    for (NodeIndex i = 0; i < n; ++i) streams_.emplace_back(scenario_.seed, i);
    mine_counters_.assign(n, 0);

    blocks_.push_back(Block{});
    jumps_.push_back({});
    child_count_.push_back(0);
    reached_.push_back(static_cast<std::uint32_t>(n));
    last_arrival_.push_back(0.0);
    if (scenario_.record_arrivals) arrivals_.push_back(std::vector<std::optional<double>>(n, 0.0));

    inclusions_.resize(scenario_.tx_workload.size());
    confirmed_.resize(scenario_.tx_workload.size());
}

void Simulator::push(double time, EventKind kind, NodeIndex node, NodeIndex from,
                     std::uint32_t item) {
    heap_.push_back(Event{time, seq_++, kind, node, from, item});
    std::push_heap(heap_.begin(), heap_.end(), Later{});
}

void Simulator::inject_block(NodeIndex miner, double time) {
    if (miner >= states_.size()) throw ArgumentError("injected block names an unknown node");
    if (!(time >= 0.0)) throw ArgumentError("injection time must be nonnegative");
    push(time, EventKind::InjectedMine, miner);
}

double Simulator::mining_wait(NodeIndex node) {
    const double v = scenario_.velocity(node);
    if (scenario_.mining == MiningModel::Poisson) {
        return next_mining_event(streams_[node], scenario_.blocktime, shares_[node], v,
                                 scenario_.graph.c());
    }
    // HashGrind: grind a per-attempt header and convert the trial count into
    // time with a proper-time hash rate of share * 2^bits / blocktime.
    if (shares_[node] <= 0.0) return std::numeric_limits<double>::infinity();
    const unsigned bits = scenario_.hash_difficulty_bits;
    const auto target = pow::Target::power_of_two(256 - bits);
    std::vector<std::uint8_t> header{'r', 'e', 'l', 'a', 'y', 's', 'i', 'm'};
    append_be(header, scenario_.seed, 8);
    append_be(header, node, 4);
    append_be(header, mine_counters_[node]++, 8);
    const auto nonce = pow::mine(header, target, std::uint64_t{1} << 32);
    const double trials = nonce ? static_cast<double>(*nonce) + 1.0 : 4294967296.0;
    const double hash_rate = shares_[node] * std::ldexp(1.0, static_cast<int>(bits)) /
                             scenario_.blocktime;
    return trials / hash_rate * relkin::gamma({v}, scenario_.graph.c());
}

void Simulator::schedule_mining(NodeIndex node, double now) {
    const double wait = mining_wait(node);
    if (std::isfinite(wait)) push(now + wait, EventKind::Mine, node);
}

BlockId Simulator::ancestor_at(BlockId block, std::uint64_t height) const {
    std::uint64_t climb = blocks_[block].height - height;
    for (std::size_t k = 0; climb != 0; ++k, climb >>= 1) {
        if (climb & 1) block = jumps_[block][k];
    }
    return block;
}

bool Simulator::is_ancestor(BlockId ancestor, BlockId block) const {
    if (blocks_[ancestor].height > blocks_[block].height) return false;
    return ancestor_at(block, blocks_[ancestor].height) == ancestor;
}

bool Simulator::tx_in_chain(TxId tx, BlockId tip) const {
    return std::any_of(inclusions_[tx].begin(), inclusions_[tx].end(),
                       [&](BlockId b) { return is_ancestor(b, tip); });
}

void Simulator::mine_block(NodeIndex node, double now) {
    const BlockId parent = states_[node].best_tip();
    Block block;
    block.id = static_cast<BlockId>(blocks_.size());
    block.parent = parent;
    block.miner = node;
    block.time = now;
    block.height = blocks_[parent].height + 1;
    for (TxId tx : states_[node].pool()) {
        if (scenario_.censors(node, scenario_.tx_workload[tx])) continue;
        if (tx_in_chain(tx, parent)) continue;
        block.txs.push_back(tx);
    }

    std::vector<BlockId> jumps{parent};
    while (jumps.size() <= jumps_[jumps.back()].size()) {
        const BlockId mid = jumps.back();
        jumps.push_back(jumps_[mid][jumps.size() - 1]);
    }
    for (TxId tx : block.txs) inclusions_[tx].push_back(block.id);
    ++child_count_[parent];
    child_count_.push_back(0);
    jumps_.push_back(std::move(jumps));
    reached_.push_back(0);
    last_arrival_.push_back(now);
    if (scenario_.record_arrivals) {
        arrivals_.push_back(std::vector<std::optional<double>>(states_.size()));
    }
    blocks_.push_back(std::move(block));

    deliver_block(node, blocks_.back().id, now, std::nullopt);
}

void Simulator::forward(NodeIndex from, std::span<const NodeIndex> targets, double now,
                        EventKind kind, std::uint32_t item) {
    const auto links = scenario_.graph.neighbors(from);
    for (NodeIndex to : targets) {
        for (const auto& link : links) {
            if (link.to == to) {
                push(now + scenario_.graph.delay(from, link, now), kind, to, from, item);
                break;
            }
        }
    }
}

void Simulator::deliver_block(NodeIndex node, BlockId id, double now,
                              std::optional<NodeIndex> sender) {
    if (states_[node].knows(id)) return;
    const Block& block = blocks_[id];
    const auto targets = states_[node].on_block_arrival(block, now, sender, neighbor_ids_[node]);
    if (scenario_.record_arrivals) arrivals_[id][node] = now;
    ++reached_[id];
    last_arrival_[id] = std::max(last_arrival_[id], now);
    for (TxId tx : block.txs) {
        if (scenario_.tx_workload[tx].origin == node && !confirmed_[tx]) confirmed_[tx] = now;
    }
    forward(node, targets, now, EventKind::BlockArrival, id);
}

void Simulator::deliver_tx(NodeIndex node, TxId tx, double now, std::optional<NodeIndex> sender) {
    if (!states_[node].add_transaction(tx)) return;
    std::vector<NodeIndex> targets;
    for (NodeIndex n : neighbor_ids_[node]) {
        if (!sender || n != *sender) targets.push_back(n);
    }
    forward(node, targets, now, EventKind::TxArrival, tx);
}

SimReport Simulator::run() {
    if (ran_) throw std::logic_error("Simulator::run may only be called once");
    ran_ = true;

    if (scenario_.mining != MiningModel::Disabled) {
        for (NodeIndex i = 0; i < states_.size(); ++i) schedule_mining(i, 0.0);
    }
    for (TxId tx = 0; tx < scenario_.tx_workload.size(); ++tx) {
        push(scenario_.tx_workload[tx].created, EventKind::TxCreated,
             scenario_.tx_workload[tx].origin, kNoNode, tx);
    }

    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), Later{});
        const Event ev = heap_.back();
        heap_.pop_back();
        if (ev.time > scenario_.duration) break;

        const std::optional<NodeIndex> sender =
            ev.from == kNoNode ? std::nullopt : std::optional<NodeIndex>(ev.from);
        switch (ev.kind) {
            case EventKind::Mine:
                mine_block(ev.node, ev.time);
                schedule_mining(ev.node, ev.time);
                break;
            case EventKind::InjectedMine:
                mine_block(ev.node, ev.time);
                break;
            case EventKind::BlockArrival:
                deliver_block(ev.node, ev.item, ev.time, sender);
                break;
            case EventKind::TxCreated:
            case EventKind::TxArrival:
                deliver_tx(ev.node, ev.item, ev.time, sender);
                break;
        }
    }
    return build_report();
}

SimReport Simulator::build_report() const {
    const auto& g = scenario_.graph;
    SimReport report;
    report.seed = scenario_.seed;
    report.blocktime = scenario_.blocktime;
    report.duration = scenario_.duration;
    report.nodes.resize(g.size());
    for (NodeIndex i = 0; i < g.size(); ++i) report.nodes[i].id = g.node(i).id;

    // Final main chain: highest block, earliest mined, lowest id.
    BlockId best = kGenesis;
    for (BlockId b = 1; b < blocks_.size(); ++b) {
        const auto& cand = blocks_[b];
        const auto& cur = blocks_[best];
        if (cand.height > cur.height || (cand.height == cur.height && cand.time < cur.time)) {
            best = b;
        }
    }
    std::vector<bool> on_main(blocks_.size(), false);
    for (BlockId b = best; b != kNoParent; b = blocks_[b].parent) on_main[b] = true;

    double delay_sum = 0.0;
    for (BlockId b = 1; b < blocks_.size(); ++b) {
        const auto& block = blocks_[b];
        report.blocks.push_back({block.id, block.parent, block.miner, block.time, block.height,
                                 static_cast<bool>(on_main[b]),
                                 static_cast<std::uint32_t>(block.txs.size())});
        ++report.nodes[block.miner].mined;
        if (on_main[b]) ++report.nodes[block.miner].main_chain;
        if (reached_[b] == g.size()) {
            const double full = last_arrival_[b] - block.time;
            ++report.propagation.fully_propagated;
            delay_sum += full;
            report.propagation.max_full_delay = std::max(report.propagation.max_full_delay, full);
        }
    }
    if (report.propagation.fully_propagated > 0) {
        report.propagation.mean_full_delay =
            delay_sum / static_cast<double>(report.propagation.fully_propagated);
    }
    for (BlockId b = 0; b < blocks_.size(); ++b) {
        if (child_count_[b] > 1) report.fork_count += child_count_[b] - 1;
    }

    report.total_mined = report.blocks.size();
    report.final_height = blocks_[best].height;
    if (report.total_mined > 0) {
        report.orphan_rate = static_cast<double>(report.total_mined - report.final_height) /
                             static_cast<double>(report.total_mined);
    }

    for (TxId tx = 0; tx < scenario_.tx_workload.size(); ++tx) {
        const auto& spec = scenario_.tx_workload[tx];
        report.txs.push_back({tx, spec.origin, spec.destination, spec.created, confirmed_[tx]});
    }
    if (scenario_.record_arrivals) {
        report.arrivals.assign(arrivals_.begin() + 1, arrivals_.end());
    }
    return report;
}

SimReport run(const Scenario& scenario) { return Simulator(scenario).run(); }

std::vector<SimReport> run_sweep(const Scenario& base, std::span<const std::uint64_t> seeds,
                                 unsigned workers) {
    base.validate();
    std::vector<SimReport> reports(seeds.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            Scenario s = base;
            s.seed = seeds[i];
            reports[i] = run(s);
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(workers, seeds.size()));
    if (count == 1) {
        work();
        return reports;
    }
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(work);
    pool.clear();
    return reports;
}

double worst_case_confirmation(const topo::LatencyGraph& g, std::optional<double> window) {
    return 2.0 * topo::max_diameter(g, window);
}

std::vector<NodeDominance> dominance_stats(const SimReport& report) {
    std::vector<NodeDominance> out;
    for (const auto& node : report.nodes) {
        NodeDominance d;
        d.id = node.id;
        if (report.final_height > 0) {
            d.main_chain_share =
                static_cast<double>(node.main_chain) / static_cast<double>(report.final_height);
        }
        if (node.mined > 0) {
            d.stale_fraction = static_cast<double>(node.mined - node.main_chain) /
                               static_cast<double>(node.mined);
        }
        out.push_back(std::move(d));
    }
    return out;
}

CausalityCheck verify_causality(const SimReport& report, const topo::LatencyGraph& g) {
    CausalityCheck check;
    if (g.is_time_varying() || report.arrivals.size() != report.blocks.size()) return check;
    check.checked = true;
    std::vector<std::vector<double>> dist(g.size());
    for (std::size_t b = 0; b < report.blocks.size(); ++b) {
        const auto& block = report.blocks[b];
        auto& from_miner = dist[block.miner];
        if (from_miner.empty()) from_miner = topo::shortest_delays(g, block.miner, 0.0);
        for (NodeIndex n = 0; n < g.size(); ++n) {
            const auto& seen = report.arrivals[b][n];
            if (!seen) continue;
            ++check.samples;
            const double earliest = block.time + from_miner[n];
            if (*seen < earliest - 1e-9 * std::max(1.0, std::abs(earliest))) ++check.violations;
        }
    }
    return check;
}

}  // namespace relaysim::simcore
