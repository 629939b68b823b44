#pragma once

#include <cstddef>
#include <vector>

namespace nkimit {

// Transition matrix of the number of bits a blind walker shares with the
// target string. Column j holds the outgoing probabilities of state j
// (column-stochastic): j -> j+1 with 1 - j/N, j -> j-1 with j/N; state 0
// always moves to 1 and state N is absorbing.
class TransitionMatrix {
public:
    explicit TransitionMatrix(int n);

    int n() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(n_) + 1; }
    double operator()(std::size_t row, std::size_t col) const { return entries_[row * dimension() + col]; }

private:
    int n_;
    std::vector<double> entries_;  // row-major
};

TransitionMatrix build_matrix(int n);

// Second largest real eigenvalue of T (the largest is 1), from a dense
// eigensolve of the full matrix. Throws NumericalError if the solver fails
// or the spectrum has imaginary parts above 1e-10.
double second_largest_eigenvalue(const TransitionMatrix& tm);

// Mean trials for a single blind walker, 1 / (1 - lambda_N).
double independent_mean_trials(int n);

// Mean rescaled cost of L independent walkers,
// L / (2^N [1 - lambda_N^L]).
double independent_cost(int n, std::size_t l);
double independent_cost(int n, std::size_t l, double lambda);

}  // namespace nkimit
