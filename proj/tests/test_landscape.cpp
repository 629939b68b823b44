#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "nkimit/bitstring.hpp"
#include "nkimit/error.hpp"
#include "nkimit/landscape.hpp"

using namespace nkimit;

namespace {

// Straight transcription of the definition: read the k+1 bits starting at
// position i (wrapping), most significant first, and average.
double naive_fitness(const Landscape& ls, const std::vector<int>& x) {
    const int n = ls.n();
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        std::uint32_t pattern = 0;
        for (int j = 0; j <= ls.k(); ++j) pattern = (pattern << 1) | static_cast<std::uint32_t>(x[(i + j) % n]);
        sum += ls.contribution(i, pattern);
    }
    return sum / n;
}

std::vector<int> bits_of(std::uint32_t word, int n) {
    std::vector<int> x(n);
    for (int i = 0; i < n; ++i) x[i] = static_cast<int>((word >> (n - 1 - i)) & 1U);
    return x;
}

std::size_t naive_local_maxima(const Landscape& ls) {
    const int n = ls.n();
    std::size_t count = 0;
    for (std::uint32_t w = 0; w < (1U << n); ++w) {
        const double f = naive_fitness(ls, bits_of(w, n));
        bool peak = true;
        for (int b = 0; b < n && peak; ++b) peak = naive_fitness(ls, bits_of(w ^ (1U << b), n)) < f;
        count += peak;
    }
    return count;
}

// Four components, K=2, table zero except the entries read by 0110.
Landscape worked_example() {
    std::vector<double> table(4 * 8, 0.0);
    table[0 * 8 + 3] = 0.3;  // x0 x1 x2 = 011
    table[1 * 8 + 6] = 0.2;  // x1 x2 x3 = 110
    table[2 * 8 + 4] = 0.5;  // x2 x3 x0 = 100
    table[3 * 8 + 1] = 0.1;  // x3 x0 x1 = 001
    return Landscape::from_table(4, 2, table);
}

}  // namespace

TEST(BitString, LayoutAndParsing) {
    const auto s = BitString::parse("0110");
    EXPECT_EQ(s.size(), 4);
    EXPECT_EQ(s.word(), 0b0110U);
    EXPECT_EQ(s[0], 0);
    EXPECT_EQ(s[1], 1);
    EXPECT_EQ(s[3], 0);
    EXPECT_EQ(s.to_string(), "0110");
    auto t = s;
    t.flip(0);
    EXPECT_EQ(t.to_string(), "1110");
    EXPECT_EQ(s.hamming_distance(t), 1);
    EXPECT_LT(s, t);
    const int raw[] = {1, 0, 1};
    EXPECT_EQ(BitString::from_bits(raw).to_string(), "101");
    EXPECT_THROW(BitString::parse("01x"), ParameterError);
    EXPECT_THROW(BitString::parse(""), ParameterError);
}

TEST(Landscape, WorkedExampleFitnessIsExact) {
    const auto ls = worked_example();
    EXPECT_EQ(ls.fitness(BitString::parse("0110")), 0.275);
    EXPECT_EQ(ls.pattern(0b0110U, 0), 3U);
    EXPECT_EQ(ls.pattern(0b0110U, 1), 6U);
    EXPECT_EQ(ls.pattern(0b0110U, 2), 4U);
    EXPECT_EQ(ls.pattern(0b0110U, 3), 1U);
    EXPECT_EQ(ls.global_optimum().to_string(), "0110");
}

TEST(Landscape, FitnessMatchesNaiveDefinition) {
    for (int k : {0, 1, 3, 7}) {
        const auto ls = Landscape::generate(8, k, 100 + k);
        for (std::uint32_t w = 0; w < 256; ++w) {
            const double expected = naive_fitness(ls, bits_of(w, 8));
            EXPECT_NEAR(ls.fitness(BitString(8, w)), expected, 1e-15);
            EXPECT_EQ(ls.fitness_of(w), ls.fitness(BitString(8, w)));
        }
    }
}

TEST(Landscape, GlobalOptimumIsArgmaxOfBruteForce) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto ls = Landscape::generate(10, 4, seed);
        double best = -1.0;
        std::uint32_t arg = 0;
        for (std::uint32_t w = 0; w < 1024; ++w) {
            const double f = naive_fitness(ls, bits_of(w, 10));
            if (f > best) {
                best = f;
                arg = w;
            }
        }
        EXPECT_EQ(ls.global_optimum().word(), arg);
        EXPECT_NEAR(ls.global_optimum_fitness(), best, 1e-15);
    }
}

TEST(Landscape, IndependentComponentsOptimumIsPerComponentBest) {
    const auto ls = Landscape::generate(12, 0, 5);
    for (int i = 0; i < 12; ++i) {
        const int best_bit = ls.contribution(i, 1) > ls.contribution(i, 0) ? 1 : 0;
        EXPECT_EQ(ls.global_optimum()[i], best_bit);
    }
}

TEST(Landscape, FitnessStaysInUnitInterval) {
    const auto ls = Landscape::generate(12, 4, 3);
    for (double f : ls.fitness_table()) {
        EXPECT_GE(f, 0.0);
        EXPECT_LT(f, 1.0);
    }
    EXPECT_EQ(ls.fitness_table().size(), 4096U);
    EXPECT_EQ(ls.contributions().size(), 12U * 32U);
}

TEST(Landscape, SameSeedSameTable) {
    const auto a = Landscape::generate(12, 4, 77);
    const auto b = Landscape::generate(12, 4, 77);
    const auto c = Landscape::generate(12, 4, 78);
    EXPECT_TRUE(std::equal(a.contributions().begin(), a.contributions().end(), b.contributions().begin()));
    EXPECT_FALSE(std::equal(a.contributions().begin(), a.contributions().end(), c.contributions().begin()));
}

TEST(Landscape, LocalMaximaMatchNaiveCount) {
    for (int k : {0, 2, 5, 9}) {
        const auto ls = Landscape::generate(10, k, 40 + k);
        EXPECT_EQ(ls.local_maxima_count(), naive_local_maxima(ls)) << "k=" << k;
    }
}

TEST(Landscape, SmoothLandscapeHasSingleMaximum) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) EXPECT_EQ(Landscape::generate(12, 0, seed).local_maxima_count(), 1U);
}

TEST(Landscape, WideStringsSkipTheTable) {
    const auto ls = Landscape::generate(21, 2, 9);
    EXPECT_TRUE(ls.fitness_table().empty());
    const auto opt = ls.global_optimum();
    const double f = ls.fitness(opt);
    EXPECT_EQ(f, ls.global_optimum_fitness());
    for (int b = 0; b < 21; ++b) {
        auto s = opt;
        s.flip(b);
        EXPECT_LE(ls.fitness(s), f);
    }
}

TEST(Landscape, DumpLoadRoundTrip) {
    const auto ls = Landscape::generate(6, 3, 11);
    std::stringstream buf;
    ls.dump(buf);
    const auto back = Landscape::load(buf);
    EXPECT_EQ(back.n(), 6);
    EXPECT_EQ(back.k(), 3);
    EXPECT_EQ(back.seed(), 11U);
    EXPECT_TRUE(std::equal(ls.contributions().begin(), ls.contributions().end(), back.contributions().begin()));
    EXPECT_EQ(back.global_optimum(), ls.global_optimum());
}

TEST(Landscape, RejectsBadParameters) {
    EXPECT_THROW(Landscape::generate(0, 0, 1), ParameterError);
    EXPECT_THROW(Landscape::generate(12, 12, 1), ParameterError);
    EXPECT_THROW(Landscape::generate(12, -1, 1), ParameterError);
    EXPECT_THROW(Landscape::generate(kMaxBits + 1, 0, 1), ParameterError);
    EXPECT_THROW(Landscape::from_table(4, 2, std::vector<double>(31, 0.0)), ParameterError);
    std::stringstream junk("NK 4 nope 1\n");
    EXPECT_THROW(Landscape::load(junk), ParameterError);
    EXPECT_THROW(Landscape::load(std::string("/nonexistent/nk.txt")), IoError);
}

TEST(Landscape, NeighborCorrelationTracksEpistasis) {
    // Expected 1 - (k+1)/n; loose sanity here, the tight check runs in the
    // acceptance suite.
    const auto smooth = neighbor_fitness_correlation(12, 0, 4000, 1);
    const auto rugged = neighbor_fitness_correlation(12, 11, 4000, 1);
    EXPECT_NEAR(smooth.correlation, 11.0 / 12.0, 5 * smooth.standard_error);
    EXPECT_NEAR(rugged.correlation, 0.0, 5 * rugged.standard_error);
    EXPECT_EQ(smooth.samples, 4000U);
    const auto again = neighbor_fitness_correlation(12, 0, 4000, 1);
    EXPECT_EQ(again.correlation, smooth.correlation);
}
