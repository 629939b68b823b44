#include "nkimit/landscape.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "nkimit/error.hpp"
#include "nkimit/rng.hpp"

namespace nkimit {

BitString::BitString(int n, std::uint32_t word) : word_(word), n_(n) {
    if (n < 1 || n > kMaxBits) {
        throw ParameterError("BitString length must be in [1, " + std::to_string(kMaxBits) + "]");
    }
    if (n < 32 && (word >> n) != 0) {
        throw ParameterError("BitString word has bits set beyond length " + std::to_string(n));
    }
}

BitString BitString::from_bits(std::span<const int> bits) {
    const int n = static_cast<int>(bits.size());
    std::uint32_t word = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw ParameterError("BitString elements must be 0 or 1");
        }
        word = (word << 1) | static_cast<std::uint32_t>(b);
    }
    return BitString(n, word);
}

BitString BitString::parse(std::string_view text) {
    std::vector<int> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ParameterError("BitString text must contain only '0' and '1'");
        }
        bits.push_back(c - '0');
    }
    return from_bits(bits);
}

int BitString::hamming_distance(const BitString& other) const {
    if (other.n_ != n_) {
        throw ParameterError("hamming_distance: length mismatch");
    }
    return std::popcount(word_ ^ other.word_);
}

std::string BitString::to_string() const {
    std::string out(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i) {
        if ((*this)[i] != 0) out[static_cast<std::size_t>(i)] = '1';
    }
    return out;
}

namespace {

void validate_nk(int n, int k) {
    if (n < 1 || n > kMaxBits) {
        throw ParameterError("landscape: n must be in [1, " + std::to_string(kMaxBits) + "], got " +
                             std::to_string(n));
    }
    if (k < 0 || k > n - 1) {
        throw ParameterError("landscape: k must be in [0, n-1], got k=" + std::to_string(k) +
                             " for n=" + std::to_string(n));
    }
}

}  // namespace

Landscape::Landscape(int n, int k, std::uint64_t seed, std::vector<double> contributions)
    : n_(n), k_(k), seed_(seed), contributions_(std::move(contributions)) {
    locate_optimum();
}

Landscape Landscape::generate(int n, int k, std::uint64_t seed) {
    validate_nk(n, k);
    const std::size_t entries = static_cast<std::size_t>(n) << (k + 1);
    std::vector<double> table(entries);
    Rng rng(derive_seed(seed, Stream::kLandscape));
    for (double& v : table) v = rng.uniform();
    return Landscape(n, k, seed, std::move(table));
}

Landscape Landscape::from_table(int n, int k, std::vector<double> contributions, std::uint64_t seed) {
    validate_nk(n, k);
    const std::size_t entries = static_cast<std::size_t>(n) << (k + 1);
    if (contributions.size() != entries) {
        throw ParameterError("landscape: contribution table must have n*2^(k+1) = " + std::to_string(entries) +
                             " entries, got " + std::to_string(contributions.size()));
    }
    for (double v : contributions) {
        if (!(v >= 0.0 && v < 1.0)) {
            throw ParameterError("landscape: contributions must lie in [0, 1)");
        }
    }
    return Landscape(n, k, seed, std::move(contributions));
}

std::uint32_t Landscape::pattern(std::uint32_t word, int component) const noexcept {
    // Rotate so that x_component sits in the most significant position, then
    // keep the top k+1 bits.
    const std::uint32_t mask = n_ == 32 ? ~0U : ((1U << n_) - 1U);
    std::uint32_t rotated = word;
    if (component != 0) {
        rotated = ((word << component) | (word >> (n_ - component))) & mask;
    }
    return rotated >> (n_ - k_ - 1);
}

double Landscape::compute_fitness(std::uint32_t word) const noexcept {
    const std::size_t stride = patterns_per_component();
    double sum = 0.0;
    for (int i = 0; i < n_; ++i) {
        sum += contributions_[static_cast<std::size_t>(i) * stride + pattern(word, i)];
    }
    return sum / n_;
}

double Landscape::fitness(const BitString& s) const {
    if (s.size() != n_) {
        throw ParameterError("fitness: string length " + std::to_string(s.size()) +
                             " does not match landscape n=" + std::to_string(n_));
    }
    return fitness_of(s.word());
}

void Landscape::locate_optimum() {
    const std::uint32_t count = 1U << n_;
    std::uint32_t best_word = 0;
    double best = -1.0;

    if (n_ <= kTableBits) {
        table_.resize(count);
        for (std::uint32_t w = 0; w < count; ++w) {
            const double f = compute_fitness(w);
            table_[w] = f;
            // Strict comparison keeps the smallest word on exact ties.
            if (f > best) {
                best = f;
                best_word = w;
            }
        }
    } else {
        // Gray-code walk: one bit changes per step, so only the k+1
        // components covering that bit need a fresh pattern lookup. The sum
        // is recomputed in component order to stay bit-identical to
        // compute_fitness().
        const std::size_t stride = patterns_per_component();
        std::vector<double> parts(static_cast<std::size_t>(n_));
        std::uint32_t word = 0;
        for (int i = 0; i < n_; ++i) {
            parts[static_cast<std::size_t>(i)] = contributions_[static_cast<std::size_t>(i) * stride + pattern(word, i)];
        }
        for (std::uint32_t step = 0;; ++step) {
            double sum = 0.0;
            for (double p : parts) sum += p;
            const double f = sum / n_;
            if (f > best || (f == best && word < best_word)) {
                best = f;
                best_word = word;
            }
            if (step + 1 == count) break;
            const int bit = std::countr_zero(step + 1);
            word ^= 1U << bit;
            const int flipped = n_ - 1 - bit;
            for (int d = 0; d <= k_; ++d) {
                const int comp = ((flipped - d) % n_ + n_) % n_;
                parts[static_cast<std::size_t>(comp)] =
                    contributions_[static_cast<std::size_t>(comp) * stride + pattern(word, comp)];
            }
        }
    }
    optimum_ = BitString(n_, best_word);
    optimum_fitness_ = best;
}

std::size_t Landscape::local_maxima_count() const {
    if (n_ > kTableBits) {
        throw ParameterError("local_maxima_count: requires n <= " + std::to_string(kTableBits));
    }
    const std::uint32_t count = 1U << n_;
    std::size_t maxima = 0;
    for (std::uint32_t w = 0; w < count; ++w) {
        const double f = table_[w];
        bool is_max = true;
        for (int b = 0; b < n_ && is_max; ++b) {
            is_max = f > table_[w ^ (1U << b)];
        }
        if (is_max) ++maxima;
    }
    return maxima;
}

void Landscape::dump(std::ostream& out) const {
    out << "NK " << n_ << ' ' << k_ << ' ' << seed_ << '\n';
    const std::size_t stride = patterns_per_component();
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (int i = 0; i < n_; ++i) {
        for (std::size_t p = 0; p < stride; ++p) {
            out << i << ' ' << p << ' ' << contributions_[static_cast<std::size_t>(i) * stride + p] << '\n';
        }
    }
}

void Landscape::dump(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    dump(out);
    if (!out) throw IoError("write to '" + path + "' failed");
}

Landscape Landscape::load(std::istream& in) {
    std::string tag;
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;
    if (!(in >> tag >> n >> k >> seed) || tag != "NK") {
        throw ParameterError("landscape dump: expected header 'NK n k seed'");
    }
    validate_nk(n, k);
    const std::size_t stride = std::size_t{1} << (k + 1);
    std::vector<double> table(static_cast<std::size_t>(n) * stride, -1.0);
    int i = 0;
    std::size_t p = 0;
    double v = 0.0;
    std::size_t lines = 0;
    while (in >> i >> p >> v) {
        if (i < 0 || i >= n || p >= stride) {
            throw ParameterError("landscape dump: entry index out of range at entry " + std::to_string(lines + 1));
        }
        table[static_cast<std::size_t>(i) * stride + p] = v;
        ++lines;
    }
    if (!in.eof()) throw ParameterError("landscape dump: malformed entry after line " + std::to_string(lines + 1));
    if (lines != table.size()) {
        throw ParameterError("landscape dump: expected " + std::to_string(table.size()) + " entries, read " +
                             std::to_string(lines));
    }
    return from_table(n, k, std::move(table), seed);
}

Landscape Landscape::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return load(in);
}

CorrelationEstimate neighbor_fitness_correlation(int n, int k, std::size_t samples, std::uint64_t seed) {
    validate_nk(n, k);
    if (samples < 1000) {
        throw ParameterError("neighbor_fitness_correlation: need at least 1000 samples");
    }
    // Every sample is a fresh landscape, a random string x and a random
    // one-flip neighbor y. Only the table entries read by x and y are drawn:
    // y shares x's entry for every component whose neighborhood misses the
    // flipped bit, and reads a distinct (fresh) entry for the k+1 that cover it.
    Rng rng(derive_seed(seed, Stream::kCorrelation));
    std::vector<double> parts(static_cast<std::size_t>(n));
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        double fx = 0.0;
        for (double& p : parts) {
            p = rng.uniform();
            fx += p;
        }
        const int flipped = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        for (int d = 0; d <= k; ++d) {
            parts[static_cast<std::size_t>(((flipped - d) % n + n) % n)] = rng.uniform();
        }
        double fy = 0.0;
        for (double p : parts) fy += p;
        fx /= n;
        fy /= n;
        sx += fx;
        sy += fy;
        sxx += fx * fx;
        syy += fy * fy;
        sxy += fx * fy;
    }
    const double m = static_cast<double>(samples);
    const double cov = sxy / m - (sx / m) * (sy / m);
    const double vx = sxx / m - (sx / m) * (sx / m);
    const double vy = syy / m - (sy / m) * (sy / m);
    CorrelationEstimate est;
    est.samples = samples;
    est.correlation = cov / std::sqrt(vx * vy);
    est.standard_error = (1.0 - est.correlation * est.correlation) / std::sqrt(m - 3.0);
    return est;
}

}  // namespace nkimit
