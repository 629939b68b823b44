#include "nkimit/dynamics.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "nkimit/error.hpp"

namespace nkimit {

std::uint64_t max_trials_for_cost(double max_cost, int n, std::size_t l) {
    if (!(max_cost > 0.0) || l == 0) throw ParameterError("max_trials_for_cost: need max_cost > 0 and l >= 1");
    const double trials = std::ceil(max_cost * std::ldexp(1.0, n) / static_cast<double>(l));
    return trials < 1.0 ? 1 : static_cast<std::uint64_t>(trials);
}

std::uint32_t elementary_move(std::uint32_t word, int bits, Rng& rng) {
    return word ^ (1U << rng.below(static_cast<std::uint64_t>(bits)));
}

std::uint32_t imitation_move(std::uint32_t target, std::uint32_t model, Rng& rng) {
    std::uint32_t diff = target ^ model;
    const int differing = std::popcount(diff);
    if (differing == 0) throw ParameterError("imitation_move: target equals model");
    for (auto skip = rng.below(static_cast<std::uint64_t>(differing)); skip > 0; --skip) {
        diff &= diff - 1;
    }
    return target ^ (diff & (~diff + 1));
}

namespace {

// Fitness-descending, id-ascending ordering of agents; the first entry is
// the model for everyone except itself.
struct Ranked {
    double fitness;
    NodeId id;
    bool operator<(const Ranked& other) const {
        return fitness > other.fitness || (fitness == other.fitness && id < other.id);
    }
};

class GroupSearch {
public:
    // A null topology means no agent can observe another; only valid with p = 0.
    GroupSearch(const Landscape& landscape, const Topology* topology, std::size_t l, const SearchConfig& config)
        : landscape_(landscape),
          topology_(topology),
          config_(config),
          rng_(derive_seed(config.seed, Stream::kSearch)),
          l_(l),
          n_(landscape.n()),
          optimum_(landscape.global_optimum().word()),
          ranked_(topology != nullptr && config.p > 0.0 && topology->is_complete()) {}

    SearchOutcome run() {
        const std::uint64_t max_trials =
            config_.max_trials != 0 ? config_.max_trials : max_trials_for_cost(kDefaultMaxCost, n_, l_);

        words_.resize(l_);
        fitness_.resize(l_);
        for (std::size_t i = 0; i < l_; ++i) {
            words_[i] = static_cast<std::uint32_t>(rng_.below(std::uint64_t{1} << n_));
            fitness_[i] = landscape_.fitness_of(words_[i]);
        }
        for (std::size_t i = 0; i < l_; ++i) {
            if (words_[i] == optimum_) return success(1, static_cast<NodeId>(i));
        }
        if (ranked_) {
            for (std::size_t i = 0; i < l_; ++i) ranking_.insert({fitness_[i], static_cast<NodeId>(i)});
        }

        std::vector<NodeId> order(l_);
        std::iota(order.begin(), order.end(), NodeId{0});
        const bool frozen = config_.snapshot == ModelSnapshot::kTrialStart;

        for (std::uint64_t t = 1; t <= max_trials; ++t) {
            if (config_.order == UpdateOrder::kShuffled) {
                for (std::size_t i = l_ - 1; i > 0; --i) {
                    std::swap(order[i], order[rng_.below(i + 1)]);
                }
            }
            if (frozen) take_snapshot();
            for (NodeId agent : order) {
                update(agent, frozen);
                if (words_[agent] == optimum_) return success(t, agent);
            }
        }
        SearchOutcome failed;
        failed.t_star = max_trials;
        return failed;
    }

private:
    void update(NodeId agent, bool frozen) {
        std::uint32_t next = 0;
        const bool imitate = rng_.bernoulli(config_.p);
        const std::uint32_t model_word = imitate ? model_string(agent, frozen) : words_[agent];
        if (imitate && model_word != words_[agent]) {
            next = imitation_move(words_[agent], model_word, rng_);
        } else {
            next = elementary_move(words_[agent], n_, rng_);
        }
        const double f = landscape_.fitness_of(next);
        if (ranked_) {
            ranking_.erase({fitness_[agent], agent});
            ranking_.insert({f, agent});
        }
        words_[agent] = next;
        fitness_[agent] = f;
    }

    std::uint32_t model_string(NodeId agent, bool frozen) const {
        const bool with_self = config_.pool == ModelPool::kNeighborsAndSelf;
        if (frozen) {
            if (ranked_) {
                const NodeId best =
                    (with_self || snapshot_best_[0] != agent) ? snapshot_best_[0] : snapshot_best_[1];
                return snapshot_words_[best];
            }
            return snapshot_words_[best_candidate(agent, snapshot_fitness_, with_self)];
        }
        if (ranked_) {
            auto it = ranking_.begin();
            if (!with_self && it->id == agent) ++it;
            return words_[it->id];
        }
        return words_[best_candidate(agent, fitness_, with_self)];
    }

    NodeId best_candidate(NodeId agent, const std::vector<double>& fitness, bool with_self) const {
        const auto neighbors = topology_->neighbors(agent);
        NodeId best = neighbors.front();
        // Neighbor lists are sorted, so strict comparison keeps the lowest id on ties.
        for (NodeId v : neighbors.subspan(1)) {
            if (fitness[v] > fitness[best]) best = v;
        }
        if (with_self && (fitness[agent] > fitness[best] || (fitness[agent] == fitness[best] && agent < best))) {
            best = agent;
        }
        return best;
    }

    void take_snapshot() {
        snapshot_words_ = words_;
        snapshot_fitness_ = fitness_;
        if (ranked_) {
            auto it = ranking_.begin();
            snapshot_best_[0] = it->id;
            snapshot_best_[1] = std::next(it)->id;
        }
    }

    SearchOutcome success(std::uint64_t t, NodeId winner) const {
        SearchOutcome out;
        out.success = true;
        out.t_star = t;
        out.winner = winner;
        out.rescaled_cost = static_cast<double>(l_) * static_cast<double>(t) / std::ldexp(1.0, n_);
        return out;
    }

    const Landscape& landscape_;
    const Topology* topology_;
    const SearchConfig& config_;
    Rng rng_;
    std::size_t l_;
    int n_;
    std::uint32_t optimum_;
    bool ranked_;

    std::vector<std::uint32_t> words_;
    std::vector<double> fitness_;
    std::set<Ranked> ranking_;
    std::vector<std::uint32_t> snapshot_words_;
    std::vector<double> snapshot_fitness_;
    NodeId snapshot_best_[2] = {0, 0};
};

void validate(const Topology& topology, const SearchConfig& config) {
    if (topology.size() < 2) throw ParameterError("run: topology needs at least 2 agents");
    if (!(config.p >= 0.0 && config.p <= 1.0)) throw ParameterError("run: imitation probability must be in [0, 1]");
}

}  // namespace

SearchOutcome run(const Landscape& landscape, const Topology& topology, const SearchConfig& config) {
    validate(topology, config);
    return GroupSearch(landscape, &topology, topology.size(), config).run();
}

SearchOutcome run_independent(const Landscape& landscape, std::size_t l, const SearchConfig& config) {
    if (l < 1) throw ParameterError("run_independent: need at least one agent");
    SearchConfig blind = config;
    blind.p = 0.0;
    return GroupSearch(landscape, nullptr, l, blind).run();
}

SearchOutcome run_tracking_winner_degree(const Landscape& landscape, const Topology& topology,
                                         const SearchConfig& config) {
    SearchOutcome out = run(landscape, topology, config);
    if (out.success) {
        out.winner_degree = topology.degree(out.winner);
        out.winner_is_highest_degree = out.winner == highest_degree_node(topology);
    }
    return out;
}

}  // namespace nkimit
