#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nkimit {

using NodeId = std::uint32_t;

enum class TopologyKind { kRing, kComplete, kChain, kStar, kBarabasiAlbert, kWattsStrogatz, kCommunity };

std::string_view to_string(TopologyKind kind);
// Accepts the canonical names plus the short aliases "ba" and "ws".
TopologyKind parse_topology_kind(std::string_view name);
// Kinds whose construction consumes randomness.
bool is_stochastic(TopologyKind kind);

// Immutable undirected influence graph over agents 0 .. l-1.
//
// Every instance is validated on construction: sorted adjacency lists, no
// self-loops, no duplicate edges, symmetric, connected.
class Topology {
public:
    static Topology ring(std::size_t l, std::size_t m);
    static Topology complete(std::size_t l);
    static Topology chain(std::size_t l);
    static Topology star(std::size_t l);
    static Topology barabasi_albert(std::size_t l, std::uint64_t seed);
    static Topology watts_strogatz(std::size_t l, std::size_t m, double beta, std::uint64_t seed);
    static Topology community(std::size_t l, std::size_t clusters, double p_in, double p_out, std::uint64_t seed);

    // From an explicit edge list; kind is informational.
    static Topology from_edges(std::size_t l, std::span<const std::pair<NodeId, NodeId>> edges,
                               TopologyKind kind, std::uint64_t seed = 0);

    std::size_t size() const noexcept { return adjacency_.size(); }
    TopologyKind kind() const noexcept { return kind_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::span<const NodeId> neighbors(NodeId i) const noexcept { return adjacency_[i]; }
    std::size_t degree(NodeId i) const noexcept { return adjacency_[i].size(); }
    std::size_t edge_count() const noexcept { return edges_; }
    bool is_complete() const noexcept { return edges_ == size() * (size() - 1) / 2; }
    // Resampling attempts used by generators that reject disconnected draws.
    std::size_t attempts() const noexcept { return attempts_; }

    bool operator==(const Topology& other) const { return adjacency_ == other.adjacency_; }

    // "TOPOLOGY kind l seed" header, then one "i j" line per edge with i < j.
    void dump(std::ostream& out) const;
    void dump(const std::string& path) const;
    static Topology load(std::istream& in);
    static Topology load(const std::string& path);

private:
    Topology(std::vector<std::vector<NodeId>> adjacency, TopologyKind kind, std::uint64_t seed,
             std::size_t attempts = 1);

    std::vector<std::vector<NodeId>> adjacency_;
    TopologyKind kind_ = TopologyKind::kRing;
    std::uint64_t seed_ = 0;
    std::size_t edges_ = 0;
    std::size_t attempts_ = 1;
};

bool is_connected(const std::vector<std::vector<NodeId>>& adjacency);

std::map<std::size_t, std::size_t> degree_histogram(const Topology& t);
// Ties broken by lowest id.
NodeId highest_degree_node(const Topology& t);

// Parameters sufficient to build any topology kind for a given group size.
// Fields not used by a kind are ignored.
struct TopologyParams {
    TopologyKind kind = TopologyKind::kComplete;
    // Coordination number for ring / watts_strogatz. nullopt means l-1.
    std::optional<std::size_t> m;
    double beta = 0.0;
    std::size_t clusters = 4;
    double p_in = 0.3;
    double p_out = 0.001;
};

Topology make_topology(const TopologyParams& params, std::size_t l, std::uint64_t seed);
// Resolved coordination number reported for the parameter point, if the kind
// has one.
std::optional<std::size_t> coordination_number(const TopologyParams& params, std::size_t l);

}  // namespace nkimit
