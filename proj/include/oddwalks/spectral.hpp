#pragma once

#include <cstddef>
#include <vector>

#include "oddwalks/chain.hpp"

namespace oddwalks {

// Dense symmetric matrix, row-major.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    explicit DenseMatrix(std::size_t dim = 0) : n(dim), a(dim * dim, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct Spectrum {
    std::vector<double> eigenvalues;  // sorted descending, eigenvalues[0] ~= 1
    double max_residual = 0.0;        // max ||S v - lambda v||_2 over eigenpairs
};

struct SpectralSummary {
    double lambda_1 = 0.0;
    double lambda_min = 0.0;
    double lambda_star = 0.0;           // max(lambda_1, |lambda_min|)
    double relaxation_time_star = 0.0;  // 1 / (1 - lambda_star)
    double gap_upper_inverse = 0.0;     // 1 / (1 + lambda_min), +inf when at -1
};

// S[x][y] = Q(x,y) / sqrt(pi(x) pi(y)); bitwise symmetric because Q is
// evaluated exactly before the square roots.  Requires exact detailed
// balance.
DenseMatrix symmetrize(const TransitionKernel& kernel, const StationaryDistribution& pi);

// Full spectrum via cyclic Jacobi sweeps on the symmetrized kernel.
// Convergence: off-diagonal Frobenius norm <= 1e-12 * ||S||_F, at most 100
// sweeps; accepted results satisfy max_residual <= 1e-8 and lambda_0 = 1
// within 1e-9.
Spectrum eigenvalues(const TransitionKernel& kernel, const StationaryDistribution& pi,
                     long max_states = kDefaultMaxStates);

SpectralSummary summarize(const Spectrum& spectrum);

// (I + P) / 2 in exact arithmetic; same stationary distribution.
TransitionKernel lazy_transform(const TransitionKernel& kernel);

// (1 - lambda_star)^-1 * ln(1 / (epsilon * pi_min)).
double mixing_time_bound(const SpectralSummary& summary, const StationaryDistribution& pi,
                         double epsilon);

// Eigenvalues and eigenvectors (columns) of a symmetric matrix; exposed for
// tests and the power-iteration cross-check.
void jacobi_eigendecomposition(const DenseMatrix& s, std::vector<double>& values,
                               DenseMatrix& vectors);

}  // namespace oddwalks
