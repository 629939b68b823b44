#include "nkimit/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

#include "nkimit/error.hpp"
#include "nkimit/rng.hpp"

namespace nkimit {

namespace {

std::string describe(const ExperimentPoint& point) {
    std::string s = std::string(to_string(point.topology.kind)) + " l=" + std::to_string(point.l);
    if (auto m = coordination_number(point.topology, point.l)) s += " m=" + std::to_string(*m);
    if (point.topology.kind == TopologyKind::kWattsStrogatz) s += " beta=" + std::to_string(point.topology.beta);
    s += " p=" + std::to_string(point.p);
    return s;
}

void validate_point(const ExperimentPoint& point) {
    if (point.replicas < 1) throw ParameterError("replicas must be >= 1");
    if (!(point.p >= 0.0 && point.p <= 1.0)) throw ParameterError("p must be in [0, 1]: " + describe(point));
    if (!(point.max_cost > 0.0)) throw ParameterError("max_cost must be positive");
    if (point.l == 1) {
        if (point.p != 0.0) throw ParameterError("a single agent has no one to imitate; l=1 requires p=0");
        return;
    }
    if (point.l < 2) throw ParameterError("l must be >= 1");
    const auto& t = point.topology;
    const std::size_t l = point.l;
    switch (t.kind) {
        case TopologyKind::kRing: {
            const std::size_t m = t.m.value_or(l - 1);
            if (m != l - 1 && (m % 2 != 0 || m < 2 || m + 2 > l)) {
                throw ParameterError("ring needs even 2 <= m <= l-2 or m = l-1: " + describe(point));
            }
            break;
        }
        case TopologyKind::kWattsStrogatz: {
            const std::size_t m = t.m.value_or(l - 1);
            if (m % 2 != 0 || m < 2 || m + 2 > l) {
                throw ParameterError("watts_strogatz needs even 2 <= m <= l-2: " + describe(point));
            }
            if (!(t.beta >= 0.0 && t.beta <= 1.0)) throw ParameterError("beta must be in [0, 1]: " + describe(point));
            break;
        }
        case TopologyKind::kCommunity:
            if (t.clusters == 0 || l % t.clusters != 0) {
                throw ParameterError("community clusters must divide l: " + describe(point));
            }
            if (!(t.p_in > 0.0 && t.p_in <= 1.0) || !(t.p_out > 0.0 && t.p_out <= 1.0)) {
                throw ParameterError("community p_in, p_out must be in (0, 1]");
            }
            break;
        default: break;
    }
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

std::uint64_t replica_seed(std::uint64_t master_seed, std::size_t replica) {
    return derive_seed(master_seed, static_cast<std::uint64_t>(replica));
}

std::vector<SearchOutcome> run_replicas(const ExperimentPoint& point, const Landscape& landscape, unsigned threads) {
    validate_point(point);
    if (landscape.n() != point.n || landscape.k() != point.k) {
        throw ParameterError("run_ensemble: landscape does not match the point's n and k");
    }
    SearchConfig base;
    base.p = point.p;
    base.max_trials = max_trials_for_cost(point.max_cost, point.n, point.l);
    base.order = point.order;
    base.snapshot = point.snapshot;
    base.pool = point.pool;

    std::unique_ptr<Topology> fixed;
    const bool solo = point.l == 1;
    const bool redraw = !solo && is_stochastic(point.topology.kind);
    if (!solo && !redraw) fixed = std::make_unique<Topology>(make_topology(point.topology, point.l, 0));

    std::vector<SearchOutcome> outcomes(point.replicas);
    parallel_for(point.replicas, threads, [&](std::size_t r) {
        SearchConfig config = base;
        config.seed = replica_seed(point.master_seed, r);
        if (solo) {
            outcomes[r] = run_independent(landscape, point.l, config);
            if (outcomes[r].success) {
                outcomes[r].winner_degree = 0;
                outcomes[r].winner_is_highest_degree = true;
            }
            return;
        }
        if (redraw) {
            try {
                const Topology topology = make_topology(point.topology, point.l, config.seed);
                outcomes[r] = run_tracking_winner_degree(landscape, topology, config);
            } catch (const GenerationError& e) {
                throw GenerationError(std::string(e.what()) + " [point " + describe(point) + ", replica " +
                                      std::to_string(r) + "]");
            }
        } else {
            outcomes[r] = run_tracking_winner_degree(landscape, *fixed, config);
        }
    });
    return outcomes;
}

EnsembleReport run_ensemble(const ExperimentPoint& point, const Landscape& landscape, unsigned threads) {
    const auto start = std::chrono::steady_clock::now();
    const auto outcomes = run_replicas(point, landscape, threads);

    EnsembleReport report;
    report.point = point;
    report.replicas = outcomes.size();
    report.max_trials = max_trials_for_cost(point.max_cost, point.n, point.l);
    double sum = 0.0;
    for (const auto& o : outcomes) {
        if (!o.success) continue;
        ++report.successes;
        sum += o.rescaled_cost;
        if (o.winner_is_highest_degree.value_or(false)) ++report.hub_wins;
    }
    const double s = static_cast<double>(report.successes);
    report.failure_rate = 1.0 - s / static_cast<double>(report.replicas);
    if (report.successes == 0) {
        report.mean_cost = std::numeric_limits<double>::quiet_NaN();
        report.se_cost = std::numeric_limits<double>::quiet_NaN();
        report.r_h = std::numeric_limits<double>::quiet_NaN();
        report.r_h_se = std::numeric_limits<double>::quiet_NaN();
    } else {
        report.mean_cost = sum / s;
        double squares = 0.0;
        for (const auto& o : outcomes) {
            if (o.success) squares += (o.rescaled_cost - report.mean_cost) * (o.rescaled_cost - report.mean_cost);
        }
        report.se_cost = report.successes > 1 ? std::sqrt(squares / (s - 1.0) / s)
                                              : std::numeric_limits<double>::quiet_NaN();
        const double ph = static_cast<double>(report.hub_wins) / s;
        const double l = static_cast<double>(point.l);
        report.r_h = l * ph;
        report.r_h_se = l * std::sqrt(ph * (1.0 - ph) / s);
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

EnsembleReport run_ensemble(const ExperimentPoint& point, unsigned threads) {
    return run_ensemble(point, Landscape::generate(point.n, point.k, point.landscape_seed), threads);
}

std::vector<ExperimentPoint> expand(const ExperimentSpec& spec) {
    if (!spec.master_seed) throw ParameterError("experiment spec: master_seed is required");
    if (spec.replicas < 1) throw ParameterError("experiment spec: replicas must be >= 1");
    std::vector<ExperimentPoint> points;
    const std::vector<std::optional<std::size_t>> no_m{std::nullopt};
    const std::vector<double> no_beta{0.0};
    for (TopologyKind kind : spec.topologies) {
        const bool uses_m = kind == TopologyKind::kRing || kind == TopologyKind::kWattsStrogatz;
        const bool uses_beta = kind == TopologyKind::kWattsStrogatz;
        for (std::uint64_t seed : spec.landscape_seeds) {
            for (std::size_t l : spec.ls) {
                for (const auto& m : uses_m ? spec.ms : no_m) {
                    for (double beta : uses_beta ? spec.betas : no_beta) {
                        for (double p : spec.ps) {
                            ExperimentPoint pt;
                            pt.n = spec.n;
                            pt.k = spec.k;
                            pt.landscape_seed = seed;
                            pt.topology.kind = kind;
                            pt.topology.m = m;
                            pt.topology.beta = beta;
                            pt.topology.clusters = spec.clusters;
                            pt.topology.p_in = spec.p_in;
                            pt.topology.p_out = spec.p_out;
                            pt.l = l;
                            pt.p = p;
                            pt.replicas = spec.replicas;
                            pt.master_seed = *spec.master_seed;
                            pt.max_cost = spec.max_cost;
                            pt.order = spec.order;
                            pt.snapshot = spec.snapshot;
                            pt.pool = spec.pool;
                            validate_point(pt);
                            points.push_back(pt);
                        }
                    }
                }
            }
        }
    }
    return points;
}

std::vector<EnsembleReport> sweep(const ExperimentSpec& spec) {
    const auto points = expand(spec);
    std::map<std::uint64_t, Landscape> landscapes;
    std::vector<EnsembleReport> reports;
    reports.reserve(points.size());
    for (const auto& point : points) {
        auto it = landscapes.find(point.landscape_seed);
        if (it == landscapes.end()) {
            it = landscapes.emplace(point.landscape_seed, Landscape::generate(spec.n, spec.k, point.landscape_seed))
                     .first;
        }
        reports.push_back(run_ensemble(point, it->second, spec.threads));
    }
    if (!spec.output.empty()) write_csv(spec.output, reports);
    return reports;
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const EnsembleReport& r) {
    const auto& pt = r.point;
    const auto m = pt.l >= 2 ? coordination_number(pt.topology, pt.l) : std::nullopt;
    out << to_string(pt.topology.kind) << ',' << pt.l << ',' << (m ? std::to_string(*m) : std::string()) << ','
        << (pt.topology.kind == TopologyKind::kWattsStrogatz ? format_double(pt.topology.beta) : std::string())
        << ',' << format_double(pt.p) << ',' << pt.n << ',' << pt.k << ',' << pt.landscape_seed << ','
        << r.replicas << ',' << r.successes << ',' << format_double(r.mean_cost) << ','
        << format_double(r.se_cost) << ',' << format_double(r.failure_rate) << ',' << format_double(r.r_h)
        << '\n';
}

void write_csv(std::ostream& out, const std::vector<EnsembleReport>& reports) {
    write_csv_header(out);
    for (const auto& r : reports) write_csv_row(out, r);
}

void write_csv(const std::string& path, const std::vector<EnsembleReport>& reports) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_csv(out, reports);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace nkimit
