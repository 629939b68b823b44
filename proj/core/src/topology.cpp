#include "nkimit/topology.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "nkimit/error.hpp"
#include "nkimit/rng.hpp"

namespace nkimit {

namespace {

using Adjacency = std::vector<std::vector<NodeId>>;

constexpr std::size_t kMaxResampleAttempts = 1000;

void require_size(std::size_t l, const char* what) {
    if (l < 2) throw ParameterError(std::string(what) + ": need at least 2 nodes");
    if (l > std::size_t{0xFFFFFFFF}) throw ParameterError(std::string(what) + ": too many nodes");
}

void add_edge(Adjacency& adj, std::size_t a, std::size_t b) {
    adj[a].push_back(static_cast<NodeId>(b));
    adj[b].push_back(static_cast<NodeId>(a));
}

void remove_neighbor(std::vector<NodeId>& list, NodeId v) {
    auto it = std::find(list.begin(), list.end(), v);
    if (it != list.end()) {
        *it = list.back();
        list.pop_back();
    }
}

bool has_neighbor(const std::vector<NodeId>& list, NodeId v) {
    return std::find(list.begin(), list.end(), v) != list.end();
}

Adjacency ring_adjacency(std::size_t l, std::size_t m) {
    Adjacency adj(l);
    if (m == l - 1) {
        for (std::size_t i = 0; i < l; ++i) {
            for (std::size_t j = i + 1; j < l; ++j) add_edge(adj, i, j);
        }
        return adj;
    }
    for (std::size_t d = 1; d <= m / 2; ++d) {
        for (std::size_t i = 0; i < l; ++i) add_edge(adj, i, (i + d) % l);
    }
    return adj;
}

void validate_ring(std::size_t l, std::size_t m, const char* what) {
    require_size(l, what);
    if (m == l - 1) return;
    if (m % 2 != 0) {
        throw ParameterError(std::string(what) + ": coordination number m=" + std::to_string(m) +
                             " must be even (or equal l-1)");
    }
    if (m < 2 || m + 2 > l) {
        throw ParameterError(std::string(what) + ": need 2 <= m <= l-2 or m = l-1, got m=" + std::to_string(m) +
                             " for l=" + std::to_string(l));
    }
}

}  // namespace

std::string_view to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::kRing: return "ring";
        case TopologyKind::kComplete: return "complete";
        case TopologyKind::kChain: return "chain";
        case TopologyKind::kStar: return "star";
        case TopologyKind::kBarabasiAlbert: return "barabasi_albert";
        case TopologyKind::kWattsStrogatz: return "watts_strogatz";
        case TopologyKind::kCommunity: return "community";
    }
    return "unknown";
}

TopologyKind parse_topology_kind(std::string_view name) {
    if (name == "ring") return TopologyKind::kRing;
    if (name == "complete") return TopologyKind::kComplete;
    if (name == "chain") return TopologyKind::kChain;
    if (name == "star") return TopologyKind::kStar;
    if (name == "barabasi_albert" || name == "ba") return TopologyKind::kBarabasiAlbert;
    if (name == "watts_strogatz" || name == "ws") return TopologyKind::kWattsStrogatz;
    if (name == "community") return TopologyKind::kCommunity;
    throw ParameterError("unknown topology kind '" + std::string(name) + "'");
}

bool is_stochastic(TopologyKind kind) {
    return kind == TopologyKind::kBarabasiAlbert || kind == TopologyKind::kWattsStrogatz ||
           kind == TopologyKind::kCommunity;
}

bool is_connected(const Adjacency& adjacency) {
    if (adjacency.empty()) return true;
    std::vector<char> seen(adjacency.size(), 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : adjacency[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == adjacency.size();
}

Topology::Topology(Adjacency adjacency, TopologyKind kind, std::uint64_t seed, std::size_t attempts)
    : adjacency_(std::move(adjacency)), kind_(kind), seed_(seed), attempts_(attempts) {
    const std::size_t l = adjacency_.size();
    std::size_t endpoint_count = 0;
    for (std::size_t i = 0; i < l; ++i) {
        auto& list = adjacency_[i];
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
            throw ParameterError("topology: duplicate edge at node " + std::to_string(i));
        }
        for (NodeId v : list) {
            if (v >= l) throw ParameterError("topology: neighbor id out of range at node " + std::to_string(i));
            if (v == i) throw ParameterError("topology: self-loop at node " + std::to_string(i));
        }
        endpoint_count += list.size();
    }
    for (std::size_t i = 0; i < l; ++i) {
        for (NodeId v : adjacency_[i]) {
            if (!std::binary_search(adjacency_[v].begin(), adjacency_[v].end(), static_cast<NodeId>(i))) {
                throw ParameterError("topology: asymmetric edge " + std::to_string(i) + "-" + std::to_string(v));
            }
        }
    }
    if (!is_connected(adjacency_)) throw ParameterError("topology: graph is not connected");
    edges_ = endpoint_count / 2;
}

Topology Topology::ring(std::size_t l, std::size_t m) {
    validate_ring(l, m, "ring");
    return Topology(ring_adjacency(l, m), TopologyKind::kRing, 0);
}

Topology Topology::complete(std::size_t l) {
    require_size(l, "complete");
    return Topology(ring_adjacency(l, l - 1), TopologyKind::kComplete, 0);
}

Topology Topology::chain(std::size_t l) {
    require_size(l, "chain");
    Adjacency adj(l);
    for (std::size_t i = 0; i + 1 < l; ++i) add_edge(adj, i, i + 1);
    return Topology(std::move(adj), TopologyKind::kChain, 0);
}

Topology Topology::star(std::size_t l) {
    require_size(l, "star");
    Adjacency adj(l);
    for (std::size_t i = 1; i < l; ++i) add_edge(adj, 0, i);
    return Topology(std::move(adj), TopologyKind::kStar, 0);
}

Topology Topology::barabasi_albert(std::size_t l, std::uint64_t seed) {
    require_size(l, "barabasi_albert");
    Rng rng(derive_seed(seed, Stream::kTopology));
    Adjacency adj(l);
    // Each edge contributes both endpoints, so a uniform pick from this list
    // selects node j with probability k_j / sum(k).
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * (l - 1));
    add_edge(adj, 1, 0);
    endpoints.push_back(1);
    endpoints.push_back(0);
    for (std::size_t i = 2; i < l; ++i) {
        const NodeId j = endpoints[rng.below(endpoints.size())];
        add_edge(adj, i, j);
        endpoints.push_back(static_cast<NodeId>(i));
        endpoints.push_back(j);
    }
    return Topology(std::move(adj), TopologyKind::kBarabasiAlbert, seed);
}

Topology Topology::watts_strogatz(std::size_t l, std::size_t m, double beta, std::uint64_t seed) {
    if (m == l - 1 && m % 2 == 1) {
        throw ParameterError("watts_strogatz: m must be even");
    }
    validate_ring(l, m, "watts_strogatz");
    if (m + 2 > l) throw ParameterError("watts_strogatz: need m <= l-2");
    if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("watts_strogatz: beta must be in [0, 1]");

    const std::uint64_t base = derive_seed(seed, Stream::kTopology);
    for (std::size_t attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
        Rng rng(derive_seed(base, attempt));
        Adjacency adj = ring_adjacency(l, m);
        // Offset-major order: all (i, i+1) links first, then (i, i+2), ...
        for (std::size_t d = 1; d <= m / 2; ++d) {
            for (std::size_t i = 0; i < l; ++i) {
                if (!rng.bernoulli(beta)) continue;
                auto& list = adj[i];
                if (list.size() >= l - 1) continue;
                const auto old = static_cast<NodeId>((i + d) % l);
                NodeId target = 0;
                do {
                    target = static_cast<NodeId>(rng.below(l));
                } while (target == i || has_neighbor(list, target));
                remove_neighbor(list, old);
                remove_neighbor(adj[old], static_cast<NodeId>(i));
                add_edge(adj, i, target);
            }
        }
        if (is_connected(adj)) {
            return Topology(std::move(adj), TopologyKind::kWattsStrogatz, seed, attempt + 1);
        }
    }
    throw GenerationError("watts_strogatz: no connected draw in " + std::to_string(kMaxResampleAttempts) +
                          " attempts (l=" + std::to_string(l) + ", m=" + std::to_string(m) + ")");
}

Topology Topology::community(std::size_t l, std::size_t clusters, double p_in, double p_out, std::uint64_t seed) {
    require_size(l, "community");
    if (clusters == 0 || l % clusters != 0) {
        throw ParameterError("community: cluster count " + std::to_string(clusters) + " must divide l=" +
                             std::to_string(l));
    }
    if (!(p_in > 0.0 && p_in <= 1.0) || !(p_out > 0.0 && p_out <= 1.0)) {
        throw ParameterError("community: p_in and p_out must be in (0, 1]");
    }
    const std::size_t cluster_size = l / clusters;
    const std::uint64_t base = derive_seed(seed, Stream::kTopology);
    for (std::size_t attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
        Rng rng(derive_seed(base, attempt));
        Adjacency adj(l);
        for (std::size_t i = 0; i < l; ++i) {
            for (std::size_t j = i + 1; j < l; ++j) {
                const double p = (i / cluster_size == j / cluster_size) ? p_in : p_out;
                if (rng.bernoulli(p)) add_edge(adj, i, j);
            }
        }
        if (is_connected(adj)) {
            return Topology(std::move(adj), TopologyKind::kCommunity, seed, attempt + 1);
        }
    }
    throw GenerationError("community: no connected draw in " + std::to_string(kMaxResampleAttempts) +
                          " attempts (l=" + std::to_string(l) + ", p_in=" + std::to_string(p_in) +
                          ", p_out=" + std::to_string(p_out) + ")");
}

Topology Topology::from_edges(std::size_t l, std::span<const std::pair<NodeId, NodeId>> edges, TopologyKind kind,
                              std::uint64_t seed) {
    require_size(l, "from_edges");
    Adjacency adj(l);
    for (const auto& [a, b] : edges) {
        if (a >= l || b >= l) throw ParameterError("from_edges: node id out of range");
        add_edge(adj, a, b);
    }
    return Topology(std::move(adj), kind, seed);
}

void Topology::dump(std::ostream& out) const {
    out << "TOPOLOGY " << to_string(kind_) << ' ' << size() << ' ' << seed_ << '\n';
    for (std::size_t i = 0; i < size(); ++i) {
        for (NodeId j : adjacency_[i]) {
            if (j > i) out << i << ' ' << j << '\n';
        }
    }
}

void Topology::dump(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    dump(out);
    if (!out) throw IoError("write to '" + path + "' failed");
}

Topology Topology::load(std::istream& in) {
    std::string tag;
    std::string kind;
    std::size_t l = 0;
    std::uint64_t seed = 0;
    if (!(in >> tag >> kind >> l >> seed) || tag != "TOPOLOGY") {
        throw ParameterError("topology dump: expected header 'TOPOLOGY kind l seed'");
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    NodeId a = 0;
    NodeId b = 0;
    while (in >> a >> b) {
        if (a >= b) throw ParameterError("topology dump: edge lines must satisfy i < j");
        edges.emplace_back(a, b);
    }
    if (!in.eof()) throw ParameterError("topology dump: malformed edge line");
    return from_edges(l, edges, parse_topology_kind(kind), seed);
}

Topology Topology::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return load(in);
}

std::map<std::size_t, std::size_t> degree_histogram(const Topology& t) {
    std::map<std::size_t, std::size_t> histogram;
    for (NodeId i = 0; i < t.size(); ++i) ++histogram[t.degree(i)];
    return histogram;
}

NodeId highest_degree_node(const Topology& t) {
    NodeId best = 0;
    for (NodeId i = 1; i < t.size(); ++i) {
        if (t.degree(i) > t.degree(best)) best = i;
    }
    return best;
}

Topology make_topology(const TopologyParams& params, std::size_t l, std::uint64_t seed) {
    const std::size_t m = params.m.value_or(l - 1);
    switch (params.kind) {
        case TopologyKind::kRing: return Topology::ring(l, m);
        case TopologyKind::kComplete: return Topology::complete(l);
        case TopologyKind::kChain: return Topology::chain(l);
        case TopologyKind::kStar: return Topology::star(l);
        case TopologyKind::kBarabasiAlbert: return Topology::barabasi_albert(l, seed);
        case TopologyKind::kWattsStrogatz: return Topology::watts_strogatz(l, m, params.beta, seed);
        case TopologyKind::kCommunity:
            return Topology::community(l, params.clusters, params.p_in, params.p_out, seed);
    }
    throw ParameterError("make_topology: unhandled kind");
}

std::optional<std::size_t> coordination_number(const TopologyParams& params, std::size_t l) {
    switch (params.kind) {
        case TopologyKind::kRing:
        case TopologyKind::kWattsStrogatz: return params.m.value_or(l - 1);
        case TopologyKind::kComplete: return l - 1;
        case TopologyKind::kChain: return 2;
        default: return std::nullopt;
    }
}

}  // namespace nkimit
