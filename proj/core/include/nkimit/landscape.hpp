#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nkimit/bitstring.hpp"

namespace nkimit {

// NK fitness landscape over length-n binary strings.
//
// Each component i contributes phi_i(x_i, x_{i+1}, ..., x_{i+k}) (indices
// mod n), and the fitness is the mean of the n contributions. The
// neighborhood is packed into a pattern index with x_i as the most
// significant bit. Contributions are i.i.d. uniform on [0, 1).
//
// Immutable after construction; safe to share across threads.
class Landscape {
public:
    // Draws a fresh table and locates the global optimum by exhaustive
    // enumeration. Requires 1 <= n <= 24 and 0 <= k <= n-1.
    static Landscape generate(int n, int k, std::uint64_t seed);

    // Builds a landscape from an explicit contribution table of size
    // n * 2^(k+1), laid out as table[i * 2^(k+1) + pattern].
    static Landscape from_table(int n, int k, std::vector<double> contributions,
                                std::uint64_t seed = 0);

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::size_t patterns_per_component() const noexcept { return std::size_t{1} << (k_ + 1); }
    std::span<const double> contributions() const noexcept { return contributions_; }
    double contribution(int component, std::uint32_t pattern) const {
        return contributions_[static_cast<std::size_t>(component) * patterns_per_component() + pattern];
    }

    // Neighborhood pattern of component i for the packed string word.
    std::uint32_t pattern(std::uint32_t word, int component) const noexcept;

    double fitness(const BitString& s) const;
    // Word-level fitness used on the hot path. Uses the cached table when
    // n <= kTableBits.
    double fitness_of(std::uint32_t word) const noexcept {
        return table_.empty() ? compute_fitness(word) : table_[word];
    }

    const BitString& global_optimum() const noexcept { return optimum_; }
    double global_optimum_fitness() const noexcept { return optimum_fitness_; }

    // Fitness of every string, indexed by word. Empty when n > kTableBits.
    std::span<const double> fitness_table() const noexcept { return table_; }

    // Strings fitter than all n one-flip neighbors. Requires n <= 20.
    std::size_t local_maxima_count() const;

    // "NK n k seed" header followed by one "i pattern value" line per entry.
    void dump(std::ostream& out) const;
    void dump(const std::string& path) const;
    static Landscape load(std::istream& in);
    static Landscape load(const std::string& path);

    static constexpr int kTableBits = 20;

private:
    Landscape(int n, int k, std::uint64_t seed, std::vector<double> contributions);
    double compute_fitness(std::uint32_t word) const noexcept;
    void locate_optimum();

    int n_ = 0;
    int k_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<double> contributions_;
    std::vector<double> table_;
    BitString optimum_;
    double optimum_fitness_ = 0.0;
};

// Pearson correlation between the fitnesses of one-flip neighbor pairs,
// estimated over fresh landscapes and random strings.
struct CorrelationEstimate {
    double correlation = 0.0;
    double standard_error = 0.0;
    std::size_t samples = 0;
};

CorrelationEstimate neighbor_fitness_correlation(int n, int k, std::size_t samples, std::uint64_t seed);

}  // namespace nkimit
