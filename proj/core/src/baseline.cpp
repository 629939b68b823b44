#include "nkimit/baseline.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "nkimit/error.hpp"

namespace nkimit {

TransitionMatrix::TransitionMatrix(int n) : n_(n) {
    if (n < 2 || n > 64) throw ParameterError("build_matrix: n must be in [2, 64], got " + std::to_string(n));
    const std::size_t dim = dimension();
    entries_.assign(dim * dim, 0.0);
    auto at = [&](std::size_t row, std::size_t col) -> double& { return entries_[row * dim + col]; };
    const double nd = n;
    for (std::size_t j = 1; j + 1 < dim; ++j) {
        at(j + 1, j) = 1.0 - static_cast<double>(j) / nd;
        at(j - 1, j) = static_cast<double>(j) / nd;
    }
    at(1, 0) = 1.0;
    at(dim - 1, dim - 1) = 1.0;
}

TransitionMatrix build_matrix(int n) { return TransitionMatrix(n); }

double second_largest_eigenvalue(const TransitionMatrix& tm) {
    const auto dim = static_cast<Eigen::Index>(tm.dimension());
    Eigen::MatrixXd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = tm(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("second_largest_eigenvalue: eigensolver did not converge for n=" +
                             std::to_string(tm.n()));
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(dim));
    for (const auto& z : solver.eigenvalues()) {
        if (std::abs(z.imag()) > 1e-10) {
            throw NumericalError("second_largest_eigenvalue: complex eigenvalue " + std::to_string(z.real()) + "+" +
                                 std::to_string(z.imag()) + "i");
        }
        values.push_back(z.real());
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    if (std::abs(values[0] - 1.0) > 1e-12) {
        throw NumericalError("second_largest_eigenvalue: leading eigenvalue " + std::to_string(values[0]) +
                             " is not 1");
    }
    return values[1];
}

double independent_mean_trials(int n) { return 1.0 / (1.0 - second_largest_eigenvalue(build_matrix(n))); }

double independent_cost(int n, std::size_t l) {
    return independent_cost(n, l, second_largest_eigenvalue(build_matrix(n)));
}

double independent_cost(int n, std::size_t l, double lambda) {
    if (l < 1) throw ParameterError("independent_cost: l must be >= 1");
    if (!(lambda > 0.0 && lambda < 1.0)) throw ParameterError("independent_cost: lambda must be in (0, 1)");
    // 1 - lambda^L = -expm1(L log lambda) avoids cancellation for small L(1-lambda).
    const double hit = -std::expm1(static_cast<double>(l) * std::log1p(lambda - 1.0));
    return static_cast<double>(l) / (std::ldexp(1.0, n) * hit);
}

}  // namespace nkimit
