#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "relaysim/topo.hpp"

namespace relaysim::simcore {

using topo::NodeIndex;
using BlockId = std::uint32_t;
using TxId = std::uint32_t;

inline constexpr BlockId kGenesis = 0;
inline constexpr BlockId kNoParent = std::numeric_limits<BlockId>::max();
inline constexpr NodeIndex kNoNode = std::numeric_limits<NodeIndex>::max();

struct TxSpec {
    double created = 0.0;  // seconds
    NodeIndex origin = 0;
    NodeIndex destination = 0;

    friend bool operator==(const TxSpec&, const TxSpec&) = default;
};

enum class MiningModel {
    Poisson,    // exponential inter-block times
    HashGrind,  // literal SHA-256 nonce search at a tiny difficulty
    Disabled,   // only injected blocks; used for propagation experiments
};

struct Scenario {
    explicit Scenario(topo::LatencyGraph g) : graph(std::move(g)) {}

    topo::LatencyGraph graph;
    double blocktime = 600.0;  // network-wide mean seconds between blocks
    double duration = 0.0;     // seconds of coordinate time
    std::uint64_t seed = 0;
    std::vector<double> node_velocities;           // m/s per node; empty means all at rest
    std::vector<TxSpec> tx_workload;
    std::vector<std::set<std::string>> censorship;  // per node; empty means nobody censors
    MiningModel mining = MiningModel::Poisson;
    unsigned hash_difficulty_bits = 8;  // HashGrind target is 2^(256 - bits)
    bool record_arrivals = false;       // keep the per-block, per-node arrival matrix

    /// Throws ArgumentError / GraphError when the scenario cannot be run.
    void validate() const;
    double velocity(NodeIndex node) const;
    bool censors(NodeIndex miner, const TxSpec& tx) const;
};

struct Block {
    BlockId id = kGenesis;
    BlockId parent = kNoParent;
    NodeIndex miner = kNoNode;
    double time = 0.0;
    std::uint64_t height = 0;
    std::vector<TxId> txs;
};

/// A node's local view of the block tree and its transaction pool.
class NodeChainState {
public:
    NodeChainState();

    /// Process the delivery of `block` at `local_time`. On first arrival the
    /// block is stored, connected to the tree as soon as its parent is known,
    /// and fork choice re-runs; the returned forward set is every neighbor
    /// except the sender. Duplicates return an empty set.
    std::vector<NodeIndex> on_block_arrival(const Block& block, double local_time,
                                            std::optional<NodeIndex> sender,
                                            std::span<const NodeIndex> neighbors);

    BlockId best_tip() const { return tip_; }
    std::uint64_t best_height() const { return tip_height_; }
    bool knows(BlockId id) const { return blocks_.contains(id); }
    bool is_connected(BlockId id) const;
    std::optional<double> arrival_time(BlockId id) const;
    std::size_t buffered_count() const;

    /// Returns true the first time the transaction is seen.
    bool add_transaction(TxId tx);
    const std::vector<TxId>& pool() const { return pool_; }

private:
    struct Entry {
        BlockId parent = kNoParent;
        std::uint64_t height = 0;
        double arrival = 0.0;
        bool connected = false;
    };

    void connect(BlockId id);
    void consider_tip(BlockId id, const Entry& entry);

    std::unordered_map<BlockId, Entry> blocks_;
    std::map<BlockId, std::vector<BlockId>> waiting_for_parent_;
    BlockId tip_ = kGenesis;
    std::uint64_t tip_height_ = 0;
    double tip_arrival_ = 0.0;
    std::vector<TxId> pool_;
    std::unordered_set<TxId> pool_index_;
};

/// Per-node random stream derived from (seed, node index) only, so adding a
/// node leaves the other nodes' draws untouched.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream);

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Coordinate-time wait until the node's next block. Hash rate is fixed in the
/// miner's proper time, so the coordinate rate is (share / blocktime) / gamma.
/// A zero share never mines (+inf).
double next_mining_event(RandomStream& rng, double blocktime, double hashshare, double velocity,
                         double c = relkin::kSpeedOfLight);

struct BlockRecord {
    BlockId id = 0;
    BlockId parent = kGenesis;
    NodeIndex miner = 0;
    double time = 0.0;
    std::uint64_t height = 0;
    bool on_main_chain = false;
    std::uint32_t tx_count = 0;

    friend bool operator==(const BlockRecord&, const BlockRecord&) = default;
};

struct TxRecord {
    TxId id = 0;
    NodeIndex origin = 0;
    NodeIndex destination = 0;
    double created = 0.0;
    std::optional<double> confirmed;

    std::optional<double> latency() const {
        return confirmed ? std::optional<double>(*confirmed - created) : std::nullopt;
    }
    friend bool operator==(const TxRecord&, const TxRecord&) = default;
};

struct NodeCounts {
    std::string id;
    std::uint64_t mined = 0;
    std::uint64_t main_chain = 0;

    friend bool operator==(const NodeCounts&, const NodeCounts&) = default;
};

struct PropagationStats {
    std::uint64_t fully_propagated = 0;  // blocks that reached every node before the end
    double mean_full_delay = 0.0;
    double max_full_delay = 0.0;

    friend bool operator==(const PropagationStats&, const PropagationStats&) = default;
};

struct SimReport {
    std::uint64_t seed = 0;
    double blocktime = 0.0;
    double duration = 0.0;
    std::vector<NodeCounts> nodes;
    std::vector<BlockRecord> blocks;  // mined blocks, genesis excluded
    std::vector<TxRecord> txs;
    std::uint64_t total_mined = 0;
    std::uint64_t final_height = 0;
    double orphan_rate = 0.0;
    std::uint64_t fork_count = 0;  // blocks mined on a parent that already had a child
    PropagationStats propagation;
    /// arrivals[block][node], filled only when Scenario::record_arrivals is set.
    std::vector<std::vector<std::optional<double>>> arrivals;

    friend bool operator==(const SimReport&, const SimReport&) = default;
};

class Simulator {
public:
    explicit Simulator(const Scenario& scenario);

    /// Mine a block at `miner` at coordinate time `time`, outside the mining process.
    void inject_block(NodeIndex miner, double time);

    SimReport run();

private:
    enum class EventKind { Mine, InjectedMine, BlockArrival, TxCreated, TxArrival };

    struct Event {
        double time;
        std::uint64_t seq;
        EventKind kind;
        NodeIndex node;
        NodeIndex from;
        std::uint32_t item;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            return a.time != b.time ? a.time > b.time : a.seq > b.seq;
        }
    };

    void push(double time, EventKind kind, NodeIndex node, NodeIndex from = kNoNode,
              std::uint32_t item = 0);
    void schedule_mining(NodeIndex node, double now);
    double mining_wait(NodeIndex node);
    void mine_block(NodeIndex node, double now);
    void deliver_block(NodeIndex node, BlockId block, double now, std::optional<NodeIndex> sender);
    void deliver_tx(NodeIndex node, TxId tx, double now, std::optional<NodeIndex> sender);
    void forward(NodeIndex from, std::span<const NodeIndex> targets, double now, EventKind kind,
                 std::uint32_t item);
    bool tx_in_chain(TxId tx, BlockId tip) const;
    bool is_ancestor(BlockId ancestor, BlockId block) const;
    BlockId ancestor_at(BlockId block, std::uint64_t height) const;
    SimReport build_report() const;

    const Scenario& scenario_;
    std::vector<double> shares_;
    std::vector<std::vector<NodeIndex>> neighbor_ids_;
    std::vector<NodeChainState> states_;
    std::vector<RandomStream> streams_;
    std::vector<std::uint64_t> mine_counters_;
    std::vector<Block> blocks_;
    std::vector<std::vector<BlockId>> jumps_;  // jumps_[b][k] = 2^k-th ancestor
    std::vector<std::uint32_t> child_count_;
    std::vector<std::vector<BlockId>> inclusions_;  // per tx, blocks including it
    std::vector<std::optional<double>> confirmed_;
    std::vector<std::uint32_t> reached_;    // per block, nodes reached
    std::vector<double> last_arrival_;      // per block, latest first-arrival time
    std::vector<std::vector<std::optional<double>>> arrivals_;
    std::vector<Event> heap_;
    std::uint64_t seq_ = 0;
    bool ran_ = false;
};

SimReport run(const Scenario& scenario);

/// One report per seed, in seed order. Independent of `workers`.
std::vector<SimReport> run_sweep(const Scenario& base, std::span<const std::uint64_t> seeds,
                                 unsigned workers);

/// Round trip along the longest shortest path: 2 x diameter, maximized over
/// epochs for moving nodes.
double worst_case_confirmation(const topo::LatencyGraph& g,
                               std::optional<double> window = std::nullopt);

struct NodeDominance {
    std::string id;
    double main_chain_share = 0.0;
    double stale_fraction = 0.0;  // own blocks orphaned / own blocks mined
};

std::vector<NodeDominance> dominance_stats(const SimReport& report);

struct CausalityCheck {
    bool checked = false;  // false for time-varying graphs or without recorded arrivals
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
};

/// No node may see a block earlier than its mining time plus the shortest-path
/// delay from the miner.
CausalityCheck verify_causality(const SimReport& report, const topo::LatencyGraph& g);

}  // namespace relaysim::simcore
