#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nkimit/dynamics.hpp"
#include "nkimit/landscape.hpp"
#include "nkimit/topology.hpp"

namespace nkimit {

// One parameter point of an experiment.
struct ExperimentPoint {
    int n = 12;
    int k = 0;
    std::uint64_t landscape_seed = 1;
    TopologyParams topology;
    std::size_t l = 10;
    double p = 0.5;
    std::size_t replicas = 1000;
    std::uint64_t master_seed = 0;
    // Rescaled-cost cutoff; a replica fails once L*t/2^N would exceed it.
    double max_cost = kDefaultMaxCost;
    UpdateOrder order = UpdateOrder::kShuffled;
    ModelSnapshot snapshot = ModelSnapshot::kCurrent;
    ModelPool pool = ModelPool::kNeighborsAndSelf;
};

struct EnsembleReport {
    ExperimentPoint point;
    std::size_t replicas = 0;
    std::size_t successes = 0;
    double mean_cost = 0.0;      // over successes only; NaN when there are none
    double se_cost = 0.0;        // standard error of mean_cost
    double failure_rate = 0.0;
    std::size_t hub_wins = 0;    // successes won by the highest-degree agent
    double r_h = 0.0;            // L * hub_wins / successes
    double r_h_se = 0.0;         // binomial standard error of r_h
    std::uint64_t max_trials = 0;
    double wall_seconds = 0.0;   // not part of the determinism contract
};

// Per-replica seed: a pure function of (master seed, replica index), so the
// same replica index sees the same randomness at every parameter point.
std::uint64_t replica_seed(std::uint64_t master_seed, std::size_t replica);

// Runs all replicas of one point. Stochastic topologies are redrawn for each
// replica; deterministic ones are built once. threads = 0 uses the hardware
// concurrency. Per-replica outcomes do not depend on the thread count.
EnsembleReport run_ensemble(const ExperimentPoint& point, const Landscape& landscape, unsigned threads = 1);
EnsembleReport run_ensemble(const ExperimentPoint& point, unsigned threads = 1);

// Per-replica outcomes in replica order; what run_ensemble aggregates.
std::vector<SearchOutcome> run_replicas(const ExperimentPoint& point, const Landscape& landscape, unsigned threads);

struct ExperimentSpec {
    int n = 12;
    int k = 0;
    std::vector<std::uint64_t> landscape_seeds{1};
    std::vector<TopologyKind> topologies{TopologyKind::kComplete};
    std::vector<std::size_t> ls;
    // Coordination numbers for ring / watts_strogatz; nullopt means l-1.
    std::vector<std::optional<std::size_t>> ms{std::nullopt};
    std::vector<double> betas{0.0};
    std::vector<double> ps;
    std::size_t replicas = 1000;
    std::optional<std::uint64_t> master_seed;
    double max_cost = kDefaultMaxCost;
    std::size_t clusters = 4;
    double p_in = 0.3;
    double p_out = 0.001;
    UpdateOrder order = UpdateOrder::kShuffled;
    ModelSnapshot snapshot = ModelSnapshot::kCurrent;
    ModelPool pool = ModelPool::kNeighborsAndSelf;
    unsigned threads = 1;
    std::string output;
};

// Cartesian product of the sweep axes in the order
// topology, landscape seed, l, m, beta, p. The m axis applies only to ring
// and watts_strogatz, the beta axis only to watts_strogatz. Throws
// ParameterError if any point violates a topology precondition.
std::vector<ExperimentPoint> expand(const ExperimentSpec& spec);

// Runs every point and, when spec.output is set, writes the CSV there.
std::vector<EnsembleReport> sweep(const ExperimentSpec& spec);

inline constexpr const char* kCsvHeader =
    "topology,l,m,beta,p,n,k,landscape_seed,replicas,successes,mean_C,se_C,failure_rate,r_h";

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const EnsembleReport& report);
void write_csv(std::ostream& out, const std::vector<EnsembleReport>& reports);
void write_csv(const std::string& path, const std::vector<EnsembleReport>& reports);

}  // namespace nkimit
