#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "nkimit/analysis.hpp"
#include "nkimit/baseline.hpp"
#include "nkimit/error.hpp"
#include "nkimit/harness.hpp"
#include "nkimit/spec_file.hpp"

using namespace nkimit;

namespace {

ExperimentPoint small_point() {
    ExperimentPoint pt;
    pt.n = 10;
    pt.k = 2;
    pt.landscape_seed = 3;
    pt.l = 20;
    pt.p = 0.5;
    pt.replicas = 60;
    pt.master_seed = 17;
    return pt;
}

std::string csv_of(const std::vector<EnsembleReport>& reports) {
    std::ostringstream out;
    write_csv(out, reports);
    return out.str();
}

ExperimentSpec parse(const std::string& text) {
    std::istringstream in(text);
    return parse_spec(in);
}

}  // namespace

TEST(Harness, ReplicaSeedsArePureFunctions) {
    EXPECT_EQ(replica_seed(5, 3), replica_seed(5, 3));
    EXPECT_NE(replica_seed(5, 3), replica_seed(5, 4));
    EXPECT_NE(replica_seed(5, 3), replica_seed(6, 3));
}

TEST(Harness, OutcomesIndependentOfThreadCount) {
    auto pt = small_point();
    pt.topology.kind = TopologyKind::kWattsStrogatz;
    pt.topology.m = 4;
    pt.topology.beta = 0.3;
    const auto ls = Landscape::generate(pt.n, pt.k, pt.landscape_seed);
    const auto one = run_replicas(pt, ls, 1);
    for (unsigned threads : {2U, 3U, 8U}) {
        const auto many = run_replicas(pt, ls, threads);
        ASSERT_EQ(many.size(), one.size());
        for (std::size_t r = 0; r < one.size(); ++r) {
            EXPECT_EQ(many[r].success, one[r].success);
            EXPECT_EQ(many[r].t_star, one[r].t_star);
            EXPECT_EQ(many[r].winner, one[r].winner);
        }
    }
}

TEST(Harness, ReplicaMatchesDirectRun) {
    auto pt = small_point();
    pt.topology.kind = TopologyKind::kRing;
    pt.topology.m = 2;
    const auto ls = Landscape::generate(pt.n, pt.k, pt.landscape_seed);
    const auto outcomes = run_replicas(pt, ls, 1);
    SearchConfig cfg;
    cfg.p = pt.p;
    cfg.max_trials = max_trials_for_cost(pt.max_cost, pt.n, pt.l);
    cfg.seed = replica_seed(pt.master_seed, 7);
    const auto direct = run(ls, Topology::ring(20, 2), cfg);
    EXPECT_EQ(outcomes[7].t_star, direct.t_star);
    EXPECT_EQ(outcomes[7].winner, direct.winner);
}

TEST(Harness, EnsembleStatistics) {
    auto pt = small_point();
    const auto ls = Landscape::generate(pt.n, pt.k, pt.landscape_seed);
    const auto outcomes = run_replicas(pt, ls, 1);
    const auto report = run_ensemble(pt, ls);
    double sum = 0.0;
    std::size_t ok = 0;
    for (const auto& o : outcomes) {
        if (o.success) {
            sum += o.rescaled_cost;
            ++ok;
        }
    }
    EXPECT_EQ(report.successes, ok);
    EXPECT_EQ(report.replicas, pt.replicas);
    EXPECT_DOUBLE_EQ(report.mean_cost, sum / static_cast<double>(ok));
    EXPECT_DOUBLE_EQ(report.failure_rate, 1.0 - static_cast<double>(ok) / static_cast<double>(pt.replicas));
    EXPECT_GT(report.se_cost, 0.0);
}

TEST(Harness, FailuresAreCountedNotAveraged) {
    auto pt = small_point();
    pt.n = 16;
    pt.k = 15;
    pt.l = 4;
    pt.max_cost = 4.0 / 65536.0;  // exactly one trial
    pt.replicas = 10;
    const auto report = run_ensemble(pt);
    EXPECT_EQ(report.max_trials, 1U);
    EXPECT_EQ(report.successes, 0U);
    EXPECT_EQ(report.failure_rate, 1.0);
    EXPECT_TRUE(std::isnan(report.mean_cost));
    std::ostringstream out;
    write_csv_row(out, report);
    EXPECT_NE(out.str().find(",nan,"), std::string::npos);
}

TEST(Harness, ConstantDegreeHubRatioNearOne) {
    auto pt = small_point();
    pt.topology.kind = TopologyKind::kRing;
    pt.topology.m = 4;
    pt.replicas = 600;
    const auto report = run_ensemble(pt);
    EXPECT_NEAR(report.r_h, 1.0, 3 * report.r_h_se + 1e-12);
}

TEST(Harness, SingleAgentPointIsBlindWalker) {
    auto pt = small_point();
    pt.n = 8;
    pt.l = 1;
    pt.p = 0.0;
    pt.replicas = 2000;
    const auto report = run_ensemble(pt);
    EXPECT_EQ(report.successes, pt.replicas);
    EXPECT_NEAR(report.mean_cost, independent_cost(8, 1), 4 * report.se_cost);
    pt.p = 0.5;
    EXPECT_THROW(run_ensemble(pt), ParameterError);
}

TEST(Harness, RejectsInvalidPoints) {
    auto pt = small_point();
    pt.topology.kind = TopologyKind::kRing;
    pt.topology.m = 3;
    EXPECT_THROW(run_ensemble(pt), ParameterError);
    pt = small_point();
    pt.replicas = 0;
    EXPECT_THROW(run_ensemble(pt), ParameterError);
    pt = small_point();
    EXPECT_THROW(run_ensemble(pt, Landscape::generate(10, 3, 1)), ParameterError);
}

TEST(Sweep, ExpansionOrderAndApplicability) {
    ExperimentSpec spec;
    spec.topologies = {TopologyKind::kComplete, TopologyKind::kWattsStrogatz};
    spec.ls = {10, 20};
    spec.ms = {2, 4};
    spec.betas = {0.0, 1.0};
    spec.ps = {0.1, 0.2};
    spec.master_seed = 1;
    const auto points = expand(spec);
    // complete: 2 l x 2 p; watts_strogatz: 2 l x 2 m x 2 beta x 2 p
    ASSERT_EQ(points.size(), 4U + 16U);
    EXPECT_EQ(points[0].topology.kind, TopologyKind::kComplete);
    EXPECT_EQ(points[1].p, 0.2);
    EXPECT_EQ(points[2].l, 20U);
    EXPECT_EQ(points[4].topology.kind, TopologyKind::kWattsStrogatz);
    EXPECT_EQ(points[4].topology.m, std::optional<std::size_t>{2});
    EXPECT_EQ(points[5].p, 0.2);
    EXPECT_EQ(points[6].topology.beta, 1.0);
    EXPECT_EQ(points[8].topology.m, std::optional<std::size_t>{4});
}

TEST(Sweep, MasterSeedRequired) {
    ExperimentSpec spec;
    spec.ls = {10};
    spec.ps = {0.5};
    EXPECT_THROW(expand(spec), ParameterError);
}

TEST(Sweep, EmptyAxisGivesHeaderOnlyCsv) {
    ExperimentSpec spec;
    spec.ls = {10};
    spec.master_seed = 1;
    const auto reports = sweep(spec);
    EXPECT_TRUE(reports.empty());
    EXPECT_EQ(csv_of(reports), std::string(kCsvHeader) + "\n");
}

TEST(Sweep, RepeatedRunsGiveIdenticalCsv) {
    const auto spec = parse(
        "n = 10\nk = 3\nlandscape_seeds = 1, 2\ntopology = ring, star, barabasi_albert\n"
        "l = 12\nm = 2, full\np = 0.3, 0.7\nreplicas = 40\nmaster_seed = 123\n");
    auto threaded = spec;
    threaded.threads = 3;
    const auto a = csv_of(sweep(spec));
    EXPECT_EQ(a, csv_of(sweep(spec)));
    EXPECT_EQ(a, csv_of(sweep(threaded)));
    // header + ring (2 seeds x 2 m x 2 p) + star (2 x 2) + ba (2 x 2)
    EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 1 + 8 + 4 + 4);
    EXPECT_NE(a.find("\nring,12,2,,0.3,10,3,1,40,"), std::string::npos);
    EXPECT_NE(a.find("\nring,12,11,,0.7,10,3,2,40,"), std::string::npos);
    EXPECT_NE(a.find("\nstar,12,,,0.3,10,3,1,40,"), std::string::npos);
}

TEST(SpecFile, ParsesEveryKey) {
    const auto spec = parse(
        "# comment\n"
        "n = 11\nk = 4   # trailing comment\n\n"
        "landscape_seeds = 5,6\ntopology = ws, community\nl = 200\nm = 14\nbeta = 0, 0.5\n"
        "p = 0.55\nreplicas = 7\nmaster_seed = 9\nmax_cost = 50\nclusters = 5\np_in = 0.2\np_out = 0.01\n"
        "update_order = sequential\nmodel_snapshot = trial_start\nmodel_pool = neighbors\nthreads = 2\n"
        "output = out.csv\n");
    EXPECT_EQ(spec.n, 11);
    EXPECT_EQ(spec.k, 4);
    EXPECT_EQ(spec.landscape_seeds, (std::vector<std::uint64_t>{5, 6}));
    EXPECT_EQ(spec.topologies, (std::vector<TopologyKind>{TopologyKind::kWattsStrogatz, TopologyKind::kCommunity}));
    EXPECT_EQ(spec.ls, std::vector<std::size_t>{200});
    EXPECT_EQ(spec.ms, (std::vector<std::optional<std::size_t>>{14}));
    EXPECT_EQ(spec.betas, (std::vector<double>{0.0, 0.5}));
    EXPECT_EQ(spec.ps, std::vector<double>{0.55});
    EXPECT_EQ(spec.replicas, 7U);
    EXPECT_EQ(spec.master_seed, std::optional<std::uint64_t>{9});
    EXPECT_EQ(spec.max_cost, 50.0);
    EXPECT_EQ(spec.clusters, 5U);
    EXPECT_EQ(spec.p_in, 0.2);
    EXPECT_EQ(spec.p_out, 0.01);
    EXPECT_EQ(spec.order, UpdateOrder::kSequential);
    EXPECT_EQ(spec.snapshot, ModelSnapshot::kTrialStart);
    EXPECT_EQ(spec.pool, ModelPool::kNeighbors);
    EXPECT_EQ(spec.threads, 2U);
    EXPECT_EQ(spec.output, "out.csv");
}

TEST(SpecFile, DefaultsAndOverrides) {
    auto spec = parse("master_seed = 1\nl = 10\np = 0.5\n");
    EXPECT_EQ(spec.pool, ModelPool::kNeighborsAndSelf);
    EXPECT_EQ(spec.order, UpdateOrder::kShuffled);
    EXPECT_EQ(spec.snapshot, ModelSnapshot::kCurrent);
    EXPECT_EQ(spec.max_cost, kDefaultMaxCost);
    ASSERT_EQ(spec.ms.size(), 1U);
    EXPECT_FALSE(spec.ms[0].has_value());
    apply_setting(spec, "p", "0.1, 0.9");
    EXPECT_EQ(spec.ps, (std::vector<double>{0.1, 0.9}));
}

TEST(SpecFile, ErrorsCarryLineNumbers) {
    auto message = [](const std::string& text) {
        try {
            parse(text);
        } catch (const ParameterError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("master_seed = 1\nbogus = 3\n").find(":2:"), std::string::npos);
    EXPECT_NE(message("master_seed = 1\n\nl = ten\n").find(":3:"), std::string::npos);
    EXPECT_NE(message("n 12\n").find(":1:"), std::string::npos);
    EXPECT_NE(message("p = 0.5\n").find("master_seed"), std::string::npos);
    EXPECT_NE(message("master_seed = 1\nmodel_pool = everyone\n").find(":2:"), std::string::npos);
    EXPECT_THROW(load_spec("/nonexistent/spec.txt"), IoError);
}

TEST(Analysis, RecoversSyntheticPowerLaw) {
    std::vector<CostPoint> pts;
    for (double l : {10.0, 100.0, 1000.0, 5000.0}) pts.push_back({l, 0.5 * std::pow(l / 4096.0, 0.7)});
    const auto fit = fit_power_law(pts, 12);
    EXPECT_NEAR(fit.amplitude, 0.5, 1e-10);
    EXPECT_NEAR(fit.exponent, 0.7, 1e-10);
}

TEST(Analysis, RejectsDegenerateInput) {
    const std::vector<CostPoint> same{{100, 1.0}, {100, 2.0}, {100, 3.0}};
    EXPECT_THROW(fit_power_law(same, 12), NumericalError);
    const std::vector<CostPoint> two{{100, 1.0}, {200, 2.0}};
    EXPECT_THROW(fit_power_law(two, 12), ParameterError);
    const std::vector<CostPoint> negative{{100, 1.0}, {200, -2.0}, {300, 1.0}};
    EXPECT_THROW(fit_power_law(negative, 12), ParameterError);
}
