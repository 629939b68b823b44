// nkimit: command-line front end for landscape, topology, baseline and
// group-search experiments.
//
// Exit codes: 0 success, 1 parameter error, 2 generation/numerical failure,
// 3 I/O error.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nkimit/baseline.hpp"
#include "nkimit/error.hpp"
#include "nkimit/harness.hpp"
#include "nkimit/landscape.hpp"
#include "nkimit/spec_file.hpp"
#include "nkimit/topology.hpp"

namespace {

using namespace nkimit;

struct TopologyOptions {
    std::string kind = "complete";
    std::string m = "full";
    double beta = 0.0;
    std::size_t clusters = 4;
    double p_in = 0.3;
    double p_out = 0.001;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--topology,--kind", kind,
                        "ring | complete | chain | star | barabasi_albert | watts_strogatz | community")
            ->capture_default_str();
        cmd->add_option("--m", m, "coordination number for ring / watts_strogatz, or 'full' for l-1")
            ->capture_default_str();
        cmd->add_option("--beta", beta, "Watts-Strogatz rewiring probability")->capture_default_str();
        cmd->add_option("--clusters", clusters, "community: number of equal clusters")->capture_default_str();
        cmd->add_option("--p-in", p_in, "community: intra-cluster link probability")->capture_default_str();
        cmd->add_option("--p-out", p_out, "community: inter-cluster link probability")->capture_default_str();
    }

    TopologyParams params() const {
        TopologyParams tp;
        tp.kind = parse_topology_kind(kind);
        if (m != "full") {
            try {
                tp.m = std::stoul(m);
            } catch (const std::exception&) {
                throw ParameterError("--m: expected an integer or 'full', got '" + m + "'");
            }
        }
        tp.beta = beta;
        tp.clusters = clusters;
        tp.p_in = p_in;
        tp.p_out = p_out;
        return tp;
    }
};

void print_report_summary(const EnsembleReport& r) {
    std::cerr << "# " << to_string(r.point.topology.kind) << " l=" << r.point.l << " p=" << r.point.p
              << ": successes " << r.successes << "/" << r.replicas << ", mean_C " << r.mean_cost << " +/- "
              << r.se_cost << ", r_h " << r.r_h << " +/- " << r.r_h_se << ", cutoff " << r.max_trials
              << " trials, " << std::fixed << std::setprecision(2) << r.wall_seconds << " s\n"
              << std::defaultfloat;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Imitative-learning group search on NK fitness landscapes"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "Run one parameter point and print a CSV row");
    ExperimentPoint point;
    TopologyOptions run_topo;
    std::string run_order = "shuffled";
    std::string run_snapshot = "current";
    std::string run_pool = "neighbors_and_self";
    unsigned run_threads = 1;
    run_cmd->add_option("--n", point.n, "string length N")->capture_default_str();
    run_cmd->add_option("--k", point.k, "epistasis K")->capture_default_str();
    run_cmd->add_option("--landscape-seed", point.landscape_seed)->capture_default_str();
    run_cmd->add_option("--l", point.l, "group size L")->capture_default_str();
    run_cmd->add_option("--p", point.p, "imitation probability")->capture_default_str();
    run_cmd->add_option("--replicas", point.replicas)->capture_default_str();
    run_cmd->add_option("--seed", point.master_seed, "master seed")->required();
    run_cmd->add_option("--max-cost", point.max_cost, "rescaled-cost failure cutoff")->capture_default_str();
    run_cmd->add_option("--update-order", run_order, "shuffled | sequential")->capture_default_str();
    run_cmd->add_option("--model-snapshot", run_snapshot, "current | trial_start")->capture_default_str();
    run_cmd->add_option("--model-pool", run_pool, "neighbors | neighbors_and_self")->capture_default_str();
    run_cmd->add_option("--threads", run_threads, "worker threads, 0 = all cores")->capture_default_str();
    run_topo.add_to(run_cmd);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Run every point of an experiment spec file");
    std::string spec_path;
    std::vector<std::string> overrides;
    sweep_cmd->add_option("spec", spec_path, "experiment spec file")->required();
    sweep_cmd->add_option("--set", overrides, "override a spec key, e.g. --set replicas=100")->take_all();
    std::string sweep_output;
    sweep_cmd->add_option("--output,-o", sweep_output, "CSV output path (overrides the spec file's output key)");

    // baseline
    auto* base_cmd = app.add_subcommand("baseline", "Print the independent-search cost table");
    int base_n = 12;
    std::vector<std::size_t> base_ls{1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};
    base_cmd->add_option("--n", base_n)->capture_default_str();
    base_cmd->add_option("--l", base_ls, "group sizes")->delimiter(',');

    // landscape
    auto* land_cmd = app.add_subcommand("landscape", "Generate, dump or analyze an NK landscape");
    int land_n = 12;
    int land_k = 0;
    std::uint64_t land_seed = 1;
    std::string land_dump;
    std::string land_load;
    bool land_analyze = false;
    land_cmd->add_option("--n", land_n)->capture_default_str();
    land_cmd->add_option("--k", land_k)->capture_default_str();
    land_cmd->add_option("--seed", land_seed)->capture_default_str();
    land_cmd->add_option("--dump", land_dump, "write the contribution table to this file");
    land_cmd->add_option("--load", land_load, "read a landscape dump instead of generating");
    land_cmd->add_flag("--analyze", land_analyze, "count local maxima (n <= 20)");

    // topology
    auto* topo_cmd = app.add_subcommand("topology", "Generate, dump or summarize an influence graph");
    TopologyOptions topo_opts;
    std::size_t topo_l = 10;
    std::uint64_t topo_seed = 1;
    std::string topo_dump;
    bool topo_stats = false;
    topo_cmd->add_option("--l", topo_l)->capture_default_str();
    topo_cmd->add_option("--seed", topo_seed)->capture_default_str();
    topo_cmd->add_option("--dump", topo_dump, "write the edge list to this file ('-' for stdout)");
    topo_cmd->add_flag("--stats", topo_stats, "print the degree histogram");
    topo_opts.add_to(topo_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run_cmd) {
            point.topology = run_topo.params();
            ExperimentSpec tmp;
            apply_setting(tmp, "update_order", run_order);
            apply_setting(tmp, "model_snapshot", run_snapshot);
            point.order = tmp.order;
            apply_setting(tmp, "model_pool", run_pool);
            point.snapshot = tmp.snapshot;
            point.pool = tmp.pool;
            const auto report = run_ensemble(point, run_threads);
            write_csv(std::cout, {report});
            print_report_summary(report);
        } else if (*sweep_cmd) {
            ExperimentSpec spec = load_spec(spec_path);
            for (const auto& o : overrides) {
                const auto eq = o.find('=');
                if (eq == std::string::npos) throw ParameterError("--set expects key=value, got '" + o + "'");
                apply_setting(spec, o.substr(0, eq), o.substr(eq + 1));
            }
            if (!sweep_output.empty()) spec.output = sweep_output;
            const auto reports = sweep(spec);
            if (spec.output.empty()) write_csv(std::cout, reports);
            for (const auto& r : reports) print_report_summary(r);
        } else if (*base_cmd) {
            const double lambda = second_largest_eigenvalue(build_matrix(base_n));
            std::cout << std::setprecision(12) << "# n=" << base_n << " lambda=" << lambda
                      << " mean_t1=" << 1.0 / (1.0 - lambda) << "\n";
            std::cout << "l,mean_C\n";
            for (std::size_t l : base_ls) std::cout << l << ',' << independent_cost(base_n, l, lambda) << '\n';
        } else if (*land_cmd) {
            const Landscape ls = land_load.empty() ? Landscape::generate(land_n, land_k, land_seed)
                                                   : Landscape::load(land_load);
            std::cout << "n=" << ls.n() << " k=" << ls.k() << " seed=" << ls.seed() << "\n"
                      << "global_optimum=" << ls.global_optimum().to_string() << " fitness=" << std::setprecision(17)
                      << ls.global_optimum_fitness() << "\n";
            if (land_analyze) std::cout << "local_maxima=" << ls.local_maxima_count() << "\n";
            if (!land_dump.empty()) ls.dump(land_dump);
        } else if (*topo_cmd) {
            const Topology t = make_topology(topo_opts.params(), topo_l, topo_seed);
            if (topo_dump == "-") {
                t.dump(std::cout);
            } else {
                if (!topo_dump.empty()) t.dump(topo_dump);
                std::cout << "kind=" << to_string(t.kind()) << " l=" << t.size() << " edges=" << t.edge_count()
                          << " mean_degree=" << 2.0 * static_cast<double>(t.edge_count()) / static_cast<double>(t.size())
                          << " hub=" << highest_degree_node(t) << " attempts=" << t.attempts() << "\n";
            }
            if (topo_stats) {
                std::cout << "degree,count\n";
                for (const auto& [degree, count] : degree_histogram(t)) std::cout << degree << ',' << count << '\n';
            }
        }
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 1;
    } catch (const GenerationError& e) {
        std::cerr << "generation failure: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
