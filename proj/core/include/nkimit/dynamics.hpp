#pragma once

#include <cstdint>
#include <optional>

#include "nkimit/landscape.hpp"
#include "nkimit/rng.hpp"
#include "nkimit/topology.hpp"

namespace nkimit {

// Order in which agents are visited inside one trial.
enum class UpdateOrder {
    kShuffled,    // fresh uniform permutation every trial
    kSequential,  // 0, 1, ..., L-1
};

// Which strings an imitating agent sees.
enum class ModelSnapshot {
    kCurrent,     // neighbors' current strings, including updates made earlier in the same trial
    kTrialStart,  // neighbors' strings frozen at the start of the trial
};

// Which agents compete to be the target's model.
enum class ModelPool {
    kNeighbors,         // influence neighbors only
    kNeighborsAndSelf,  // neighbors plus the target; a target fitter than all neighbors is its own model
};

// Rescaled-cost cutoff used when no explicit trial limit is given: a replica
// fails once L * t / 2^N exceeds this value.
inline constexpr double kDefaultMaxCost = 1e4;

// Smallest trial count whose rescaled cost reaches max_cost (at least 1).
std::uint64_t max_trials_for_cost(double max_cost, int n, std::size_t l);

struct SearchConfig {
    double p = 0.5;                // imitation probability
    std::uint64_t max_trials = 0;  // 0 selects max_trials_for_cost(kDefaultMaxCost, n, l)
    std::uint64_t seed = 0;
    UpdateOrder order = UpdateOrder::kShuffled;
    ModelSnapshot snapshot = ModelSnapshot::kCurrent;
    ModelPool pool = ModelPool::kNeighborsAndSelf;
};

struct SearchOutcome {
    bool success = false;
    // Trial (1-based) during which the optimum was found; trials executed on failure.
    std::uint64_t t_star = 0;
    NodeId winner = 0;
    double rescaled_cost = 0.0;  // l * t_star / 2^n, success only
    // Filled by run_tracking_winner_degree().
    std::optional<std::size_t> winner_degree;
    std::optional<bool> winner_is_highest_degree;
};

// One replica of the imitative-learning group search.
//
// Agents start from independent uniform strings. Each trial visits every
// agent once; a visited agent imitates with probability p (copies one
// randomly chosen differing bit of the fittest neighbor string, ties to the
// lowest id) and otherwise flips a random bit. An agent identical to its
// model flips a random bit instead. The search stops as soon as any agent
// holds the global optimum.
SearchOutcome run(const Landscape& landscape, const Topology& topology, const SearchConfig& config);

// L agents searching without imitation (p forced to 0). Unlike run(), a
// single agent is allowed, which gives the one-walker baseline.
SearchOutcome run_independent(const Landscape& landscape, std::size_t l, const SearchConfig& config);

SearchOutcome run_tracking_winner_degree(const Landscape& landscape, const Topology& topology,
                                         const SearchConfig& config);

// Moves on packed words; exposed for testing. `bits` is the string length.
std::uint32_t elementary_move(std::uint32_t word, int bits, Rng& rng);
std::uint32_t imitation_move(std::uint32_t target, std::uint32_t model, Rng& rng);

}  // namespace nkimit
