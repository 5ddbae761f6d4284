#include "oddwalks/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "oddwalks/errors.hpp"

namespace oddwalks {

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
    double sum = 0.0;
    for (std::size_t p = 0; p < a.n; ++p) {
        for (std::size_t q = p + 1; q < a.n; ++q) {
            sum += 2.0 * a.at(p, q) * a.at(p, q);
        }
    }
    return std::sqrt(sum);
}

double frobenius_norm(const DenseMatrix& a) {
    double sum = 0.0;
    for (double v : a.a) sum += v * v;
    return std::sqrt(sum);
}

}  // namespace

DenseMatrix symmetrize(const TransitionKernel& kernel, const StationaryDistribution& pi) {
    if (kernel.size() != pi.size()) throw Error("kernel and distribution size mismatch");
    const auto balance = check_detailed_balance(kernel, pi);
    if (!balance.ok) throw Error("symmetrize requires exact detailed balance");

    const std::size_t n = kernel.size();
    std::vector<double> pi_real(n);
    for (std::size_t i = 0; i < n; ++i) pi_real[i] = pi.pi[i].to_double();

    DenseMatrix s(n);
    for (StateIndex x = 0; x < n; ++x) {
        for (const auto& e : kernel.rows[x]) {
            if (e.target < x) continue;  // fill both halves from the exact flow
            const double q = (pi.pi[x] * e.prob).to_double();
            const double value = q / std::sqrt(pi_real[x] * pi_real[e.target]);
            s.at(x, e.target) = value;
            s.at(e.target, x) = value;
        }
    }
    return s;
}

void jacobi_eigendecomposition(const DenseMatrix& s, std::vector<double>& values,
                               DenseMatrix& vectors) {
    const std::size_t n = s.n;
    DenseMatrix a = s;
    vectors = DenseMatrix(n);
    for (std::size_t i = 0; i < n; ++i) vectors.at(i, i) = 1.0;

    const double threshold = 1e-12 * frobenius_norm(s);
    constexpr int kMaxSweeps = 100;

    bool converged = n < 2;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                const double scale = std::abs(a.at(p, p)) + std::abs(a.at(q, q));
                if (std::abs(apq) <= 1e-300 || std::abs(apq) <= 1e-18 * scale) {
                    continue;
                }
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);
                const double h = t * apq;

                a.at(p, p) -= h;
                a.at(q, q) += h;
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, q);
                    a.at(k, p) = akp - sn * (akq + tau * akp);
                    a.at(p, k) = a.at(k, p);
                    a.at(k, q) = akq + sn * (akp - tau * akq);
                    a.at(q, k) = a.at(k, q);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = vectors.at(k, p);
                    const double vkq = vectors.at(k, q);
                    vectors.at(k, p) = vkp - sn * (vkq + tau * vkp);
                    vectors.at(k, q) = vkq + sn * (vkp - tau * vkq);
                }
            }
        }
    }
    if (!converged && off_diagonal_norm(a) > threshold) {
        throw NumericError("Jacobi eigensolver did not converge in 100 sweeps");
    }

    values.resize(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a.at(i, i);
}

Spectrum eigenvalues(const TransitionKernel& kernel, const StationaryDistribution& pi,
                     long max_states) {
    const std::size_t n = kernel.size();
    if (n == 0) throw Error("empty kernel");
    if (max_states > 0 && n > static_cast<std::size_t>(max_states)) {
        throw StateCapError("state count " + std::to_string(n) + " exceeds cap " +
                            std::to_string(max_states));
    }

    const DenseMatrix s = symmetrize(kernel, pi);
    std::vector<double> values;
    DenseMatrix vectors(0);
    jacobi_eigendecomposition(s, values, vectors);

    // Residuals against the original symmetrized matrix.
    double max_residual = 0.0;
    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += s.at(i, k) * vectors.at(k, j);
            const double r = acc - values[j] * vectors.at(i, j);
            norm2 += r * r;
        }
        max_residual = std::max(max_residual, std::sqrt(norm2));
    }

    Spectrum spectrum;
    spectrum.eigenvalues = std::move(values);
    std::sort(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(), std::greater<>());
    spectrum.max_residual = max_residual;

    if (spectrum.max_residual > 1e-8) {
        throw NumericError("eigensolver residual exceeds 1e-8");
    }
    constexpr double kRangeTol = 1e-9;
    for (double v : spectrum.eigenvalues) {
        if (v < -1.0 - kRangeTol || v > 1.0 + kRangeTol) {
            throw NumericError("eigenvalue outside [-1, 1] tolerance band");
        }
    }
    if (std::abs(spectrum.eigenvalues.front() - 1.0) > kRangeTol) {
        throw NumericError("top eigenvalue is not 1 within 1e-9 (chain not stochastic?)");
    }
    return spectrum;
}

SpectralSummary summarize(const Spectrum& spectrum) {
    if (spectrum.eigenvalues.size() < 2) throw Error("summarize needs at least two eigenvalues");
    SpectralSummary summary;
    summary.lambda_1 = spectrum.eigenvalues[1];
    summary.lambda_min = spectrum.eigenvalues.back();
    summary.lambda_star = std::max(summary.lambda_1, std::abs(summary.lambda_min));
    summary.relaxation_time_star = summary.lambda_star < 1.0
                                       ? 1.0 / (1.0 - summary.lambda_star)
                                       : std::numeric_limits<double>::infinity();
    summary.gap_upper_inverse = summary.lambda_min <= -1.0 + 1e-12
                                    ? std::numeric_limits<double>::infinity()
                                    : 1.0 / (1.0 + summary.lambda_min);
    return summary;
}

TransitionKernel lazy_transform(const TransitionKernel& kernel) {
    const Rational half(1, 2);
    TransitionKernel lazy;
    lazy.rows.resize(kernel.size());
    for (StateIndex x = 0; x < kernel.size(); ++x) {
        const auto& row = kernel.rows[x];
        auto& out = lazy.rows[x];
        out.reserve(row.size() + 1);
        bool placed_diagonal = false;
        for (const auto& e : row) {
            if (e.target == x) {
                out.push_back({x, (Rational(1) + e.prob) * half});
                placed_diagonal = true;
            } else {
                if (!placed_diagonal && e.target > x) {
                    out.push_back({x, half});
                    placed_diagonal = true;
                }
                out.push_back({e.target, e.prob * half});
            }
        }
        if (!placed_diagonal) out.push_back({x, half});
    }
    return lazy;
}

double mixing_time_bound(const SpectralSummary& summary, const StationaryDistribution& pi,
                         double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("epsilon must lie in (0,1)");
    if (summary.lambda_star >= 1.0 - 1e-12) {
        throw Error("mixing-time bound is vacuous: lambda_star too close to 1");
    }
    const double pi_min = pi.min().to_double();
    return std::log(1.0 / (epsilon * pi_min)) / (1.0 - summary.lambda_star);
}

}  // namespace oddwalks
