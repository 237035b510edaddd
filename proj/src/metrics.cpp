#include "dimenfix/metrics.hpp"

#include "dimenfix/error.hpp"
#include "dimenfix/kernels.hpp"

#include <cmath>
#include <map>

namespace dimenfix {

StressReport kruskal_stress(const CondensedDistanceMatrix& original,
                            const CondensedDistanceMatrix& projected) {
    if (original.n_points() != projected.n_points()) {
        throw InvalidArgument("stress needs matching point counts, got " +
                              std::to_string(original.n_points()) + " and " +
                              std::to_string(projected.n_points()));
    }
    const auto sums = kernels::parallel::stress_sums(original.entries(), projected.entries(),
                                                     original.n_points());
    if (sums.reference == 0.0) {
        throw InvalidArgument("stress is undefined when every original distance is zero");
    }
    return {std::sqrt(sums.residual / sums.reference), original.n_points(), {}};
}

StressReport stress_against(const CondensedDistanceMatrix& original, const Matrix& coords,
                            const ScaleRange& range) {
    const auto projected = build_distance_matrix(scale_columns(coords, range));
    StressReport r = kruskal_stress(original, projected);
    r.scale = range;
    return r;
}

StressReport stress_pipeline(const Dataset& d, const Embedding& e, const ScaleRange& range) {
    if (d.n_samples() != e.n_points()) {
        throw InvalidArgument("dataset has " + std::to_string(d.n_samples()) +
                              " rows, projection has " + std::to_string(e.n_points()));
    }
    const auto original = build_distance_matrix(scale_columns(d.values(), range));
    return stress_against(original, e.coords, range);
}

double knn_label_accuracy(const Matrix& coords, std::span<const std::string> labels,
                          std::size_t k) {
    const std::size_t n = coords.rows();
    if (labels.size() != n) {
        throw InvalidArgument("k-NN accuracy needs one label per point");
    }
    if (k == 0 || n < 2) {
        throw InvalidArgument("k-NN accuracy needs k >= 1 and at least 2 points");
    }
    const auto neighbors = kernels::parallel::nearest_neighbors(coords, k);
    k = std::min(k, n - 1);

    std::size_t hits = 0;
    std::map<std::string_view, std::size_t> votes;
    for (std::size_t i = 0; i < n; ++i) {
        votes.clear();
        const std::size_t* nb = neighbors.data() + i * k;
        for (std::size_t m = 0; m < k; ++m) {
            ++votes[labels[nb[m]]];
        }
        std::size_t best = 0;
        for (const auto& [label, count] : votes) {
            best = std::max(best, count);
        }
        // Among tied labels, take the one whose first neighbor is closest.
        std::string_view winner;
        for (std::size_t m = 0; m < k; ++m) {
            if (votes[labels[nb[m]]] == best) {
                winner = labels[nb[m]];
                break;
            }
        }
        if (winner == labels[i]) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

} // namespace dimenfix
