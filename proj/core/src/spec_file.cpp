#include "nkimit/spec_file.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include "nkimit/error.hpp"

namespace nkimit {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

template <class T>
T parse_integer(const std::string& key, const std::string& text) {
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw ParameterError("'" + key + "': expected an integer, got '" + text + "'");
    return value;
}

double parse_real(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) throw ParameterError("'" + key + "': expected a number, got '" + text + "'");
    return value;
}

std::string single(const std::string& key, const std::string& value) {
    const auto items = split_list(value);
    if (items.size() != 1) throw ParameterError("'" + key + "': expected a single value");
    return items.front();
}

}  // namespace

void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value) {
    if (key == "n") {
        spec.n = parse_integer<int>(key, single(key, value));
    } else if (key == "k") {
        spec.k = parse_integer<int>(key, single(key, value));
    } else if (key == "landscape_seeds" || key == "landscape_seed") {
        spec.landscape_seeds.clear();
        for (const auto& s : split_list(value)) spec.landscape_seeds.push_back(parse_integer<std::uint64_t>(key, s));
    } else if (key == "topology" || key == "topologies") {
        spec.topologies.clear();
        for (const auto& s : split_list(value)) spec.topologies.push_back(parse_topology_kind(s));
    } else if (key == "l") {
        spec.ls.clear();
        for (const auto& s : split_list(value)) spec.ls.push_back(parse_integer<std::size_t>(key, s));
    } else if (key == "m") {
        spec.ms.clear();
        for (const auto& s : split_list(value)) {
            if (s == "full") {
                spec.ms.emplace_back(std::nullopt);
            } else {
                spec.ms.emplace_back(parse_integer<std::size_t>(key, s));
            }
        }
    } else if (key == "beta") {
        spec.betas.clear();
        for (const auto& s : split_list(value)) spec.betas.push_back(parse_real(key, s));
    } else if (key == "p") {
        spec.ps.clear();
        for (const auto& s : split_list(value)) spec.ps.push_back(parse_real(key, s));
    } else if (key == "replicas") {
        spec.replicas = parse_integer<std::size_t>(key, single(key, value));
    } else if (key == "master_seed") {
        spec.master_seed = parse_integer<std::uint64_t>(key, single(key, value));
    } else if (key == "max_cost") {
        spec.max_cost = parse_real(key, single(key, value));
    } else if (key == "clusters") {
        spec.clusters = parse_integer<std::size_t>(key, single(key, value));
    } else if (key == "p_in") {
        spec.p_in = parse_real(key, single(key, value));
    } else if (key == "p_out") {
        spec.p_out = parse_real(key, single(key, value));
    } else if (key == "update_order") {
        const auto v = single(key, value);
        if (v == "shuffled") {
            spec.order = UpdateOrder::kShuffled;
        } else if (v == "sequential") {
            spec.order = UpdateOrder::kSequential;
        } else {
            throw ParameterError("'update_order': expected shuffled or sequential");
        }
    } else if (key == "model_snapshot") {
        const auto v = single(key, value);
        if (v == "current") {
            spec.snapshot = ModelSnapshot::kCurrent;
        } else if (v == "trial_start") {
            spec.snapshot = ModelSnapshot::kTrialStart;
        } else {
            throw ParameterError("'model_snapshot': expected current or trial_start");
        }
    } else if (key == "model_pool") {
        const auto v = single(key, value);
        if (v == "neighbors") {
            spec.pool = ModelPool::kNeighbors;
        } else if (v == "neighbors_and_self") {
            spec.pool = ModelPool::kNeighborsAndSelf;
        } else {
            throw ParameterError("'model_pool': expected neighbors or neighbors_and_self");
        }
    } else if (key == "threads") {
        spec.threads = parse_integer<unsigned>(key, single(key, value));
    } else if (key == "output") {
        spec.output = trim(value);
    } else {
        throw ParameterError("unknown key '" + key + "'");
    }
}

ExperimentSpec parse_spec(std::istream& in, const std::string& source_name) {
    ExperimentSpec spec;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParameterError(source_name + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        try {
            apply_setting(spec, trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)));
        } catch (const ParameterError& e) {
            throw ParameterError(source_name + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!spec.master_seed) throw ParameterError(source_name + ": master_seed is required");
    return spec;
}

ExperimentSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spec file '" + path + "'");
    return parse_spec(in, path);
}

}  // namespace nkimit
