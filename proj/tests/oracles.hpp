#pragma once

// Reference computations used only by the tests. None of these call into the
// library's numeric code paths.

#include "dimenfix/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

/// Phi(z) = 1/2 + integral_0^z phi(t) dt by composite Simpson in long double,
/// step about 2.5e-4.
inline long double normal_cdf_quadrature(long double z) {
    const int intervals = 2 * std::max(100, static_cast<int>(std::ceil(std::abs(z) * 2000.0L)));
    const long double h = z / intervals;
    auto phi = [](long double t) {
        return std::exp(-0.5L * t * t) / std::sqrt(2.0L * std::numbers::pi_v<long double>);
    };
    long double sum = phi(0.0L) + phi(z);
    for (int k = 1; k < intervals; ++k) {
        sum += (k % 2 ? 4.0L : 2.0L) * phi(k * h);
    }
    return 0.5L + sum * h / 3.0L;
}

/// Bisection on the quadrature CDF.
inline long double inverse_normal_cdf_bisection(long double p) {
    long double lo = -10.0L;
    long double hi = 10.0L;
    for (int it = 0; it < 200 && hi - lo > 1e-16L; ++it) {
        const long double mid = 0.5L * (lo + hi);
        if (normal_cdf_quadrature(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5L * (lo + hi);
}

/// Closed form through erfc, a second independent route.
inline long double normal_cdf_erf(long double z) {
    return 0.5L * std::erfc(-z / std::sqrt(2.0L));
}

inline long double moving_ratio_z(long double x, long double a, long double z) {
    const long double sigma = a / z;
    return std::exp(-(x * x) / (2.0L * sigma * sigma));
}

/// exp(-x^2 / (2 sigma^2)) with sigma = a / Phi^-1((1 + ci) / 2) from bisection.
inline long double moving_ratio(long double x, long double a, long double ci) {
    return moving_ratio_z(x, a, inverse_normal_cdf_bisection((1.0L + ci) / 2.0L));
}

/// Dense N x N Euclidean distances by the textbook double loop.
inline std::vector<std::vector<double>> dense_distances(const dimenfix::Matrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            long double s = 0.0L;
            for (std::size_t k = 0; k < m.cols(); ++k) {
                const long double diff = static_cast<long double>(m(i, k)) - m(j, k);
                s += diff * diff;
            }
            d[i][j] = static_cast<double>(std::sqrt(s));
        }
    }
    return d;
}

inline Eigen::MatrixXd to_eigen(const dimenfix::Matrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
        }
    }
    return out;
}

struct PcaReference {
    Eigen::VectorXd values; // descending
    Eigen::MatrixXd vectors; // columns, matching order
};

/// Covariance eigendecomposition via Eigen's self-adjoint solver.
inline PcaReference pca(const dimenfix::Matrix& m) {
    const Eigen::MatrixXd x = to_eigen(m);
    const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
    const Eigen::MatrixXd cov = centered.transpose() * centered / double(x.rows() - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    PcaReference ref;
    ref.values = solver.eigenvalues().reverse();
    ref.vectors = solver.eigenvectors().rowwise().reverse();
    return ref;
}

/// Largest principal angle (radians) between the column spans of a and b,
/// both with orthonormal columns, via sin(theta) = ||(I - B B^T) A||_2.
inline double largest_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const Eigen::MatrixXd residual = a - b * (b.transpose() * a);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
    const double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    return std::asin(std::min(1.0, s));
}

inline dimenfix::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                      double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    dimenfix::Matrix m(rows, cols);
    for (double& v : m.data()) {
        v = u(rng);
    }
    return m;
}

} // namespace oracle
