#include "dimenfix/init.hpp"

#include "dimenfix/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace dimenfix {

namespace {

constexpr int max_jacobi_sweeps = 100;

struct SymmetricEigen {
    std::vector<double> values; // unsorted
    Matrix vectors; // columns are eigenvectors
    int sweeps = 0;
};

// Cyclic Jacobi rotations on a dense symmetric matrix.
SymmetricEigen jacobi_eigen(Matrix a) {
    const std::size_t n = a.rows();
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        v(i, i) = 1.0;
    }

    double frobenius = 0.0;
    for (double x : a.data()) {
        frobenius += x * x;
    }
    const double tolerance = 1e-14 * std::sqrt(frobenius);

    int sweep = 0;
    for (; sweep < max_jacobi_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (std::sqrt(off) <= tolerance) {
            SymmetricEigen out{std::vector<double>(n), std::move(v), sweep};
            for (std::size_t i = 0; i < n; ++i) {
                out.values[i] = a(i, i);
            }
            return out;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    throw NumericalError("Jacobi eigensolver did not converge after " + std::to_string(sweep) +
                         " sweeps");
}

} // namespace

PcaResult principal_components(const Matrix& values, std::size_t k) {
    const std::size_t n = values.rows();
    const std::size_t f = values.cols();
    if (n < 2 || k == 0 || k > f) {
        throw InvalidArgument("PCA needs N >= 2 and 1 <= k <= F (N=" + std::to_string(n) +
                              ", F=" + std::to_string(f) + ", k=" + std::to_string(k) + ")");
    }

    PcaResult out;
    out.mean.assign(f, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < f; ++c) {
            out.mean[c] += values(r, c);
        }
    }
    for (double& m : out.mean) {
        m /= static_cast<double>(n);
    }

    Matrix cov(f, f);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t a = 0; a < f; ++a) {
            const double da = values(r, a) - out.mean[a];
            for (std::size_t b = a; b < f; ++b) {
                cov(a, b) += da * (values(r, b) - out.mean[b]);
            }
        }
    }
    for (std::size_t a = 0; a < f; ++a) {
        for (std::size_t b = a; b < f; ++b) {
            cov(a, b) /= static_cast<double>(n - 1);
            cov(b, a) = cov(a, b);
        }
    }

    SymmetricEigen eig = jacobi_eigen(std::move(cov));
    out.sweeps = eig.sweeps;

    std::vector<std::size_t> order(f);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return eig.values[x] > eig.values[y];
    });

    out.components = Matrix(k, f);
    out.variances.resize(k);
    for (std::size_t m = 0; m < k; ++m) {
        const std::size_t col = order[m];
        out.variances[m] = eig.values[col];
        std::size_t strongest = 0;
        for (std::size_t c = 1; c < f; ++c) {
            if (std::abs(eig.vectors(c, col)) > std::abs(eig.vectors(strongest, col))) {
                strongest = c;
            }
        }
        const double sign = eig.vectors(strongest, col) < 0.0 ? -1.0 : 1.0;
        for (std::size_t c = 0; c < f; ++c) {
            out.components(m, c) = sign * eig.vectors(c, col);
        }
    }
    return out;
}

Matrix project_onto(const Matrix& values, const PcaResult& pca) {
    const std::size_t k = pca.components.rows();
    Matrix out(values.rows(), k);
    for (std::size_t r = 0; r < values.rows(); ++r) {
        for (std::size_t m = 0; m < k; ++m) {
            double s = 0.0;
            for (std::size_t c = 0; c < values.cols(); ++c) {
                s += (values(r, c) - pca.mean[c]) * pca.components(m, c);
            }
            out(r, m) = s;
        }
    }
    return out;
}

Embedding init_embedding(const Dataset& d, std::size_t dims, const InitMode& mode,
                         const ScaleRange& range) {
    if (dims != 2 && dims != 3) {
        throw InvalidArgument("target dimensionality must be 2 or 3, got " + std::to_string(dims));
    }
    if (d.n_samples() < dims) {
        throw InvalidArgument("need at least " + std::to_string(dims) + " samples");
    }
    validate(range);

    Embedding e;
    if (const auto* random = std::get_if<RandomInit>(&mode)) {
        std::mt19937_64 rng(random->seed);
        std::uniform_real_distribution<double> uniform(range.low, range.high);
        e.coords = Matrix(d.n_samples(), dims);
        for (double& x : e.coords.data()) {
            x = uniform(rng);
        }
        return e;
    }

    // PCA scores; axes beyond the feature count stay at zero.
    const std::size_t k = std::min(dims, d.n_features());
    const PcaResult pca = principal_components(d.values(), k);
    const Matrix scores = project_onto(d.values(), pca);
    e.coords = Matrix(d.n_samples(), dims);
    for (std::size_t r = 0; r < d.n_samples(); ++r) {
        for (std::size_t m = 0; m < k; ++m) {
            e.coords(r, m) = scores(r, m);
        }
    }
    return e;
}

Embedding fix_axis(Embedding e, std::span<const double> values) {
    if (values.size() != e.n_points()) {
        throw InvalidArgument("fixed feature has " + std::to_string(values.size()) +
                              " values for " + std::to_string(e.n_points()) + " points");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("fixed feature contains a non-finite value");
        }
    }
    e.coords.set_column(e.fixed_axis(), values);
    e.fixed_origin.emplace(values.begin(), values.end());
    return e;
}

} // namespace dimenfix
