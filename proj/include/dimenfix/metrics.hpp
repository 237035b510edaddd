#pragma once

#include "dimenfix/data.hpp"
#include "dimenfix/geometry.hpp"
#include "dimenfix/init.hpp"

#include <cstddef>
#include <span>
#include <string>

namespace dimenfix {

struct StressReport {
    double stress = 0.0;
    std::size_t n_points = 0;
    ScaleRange scale{};
};

/// sqrt(sum (d - delta)^2 / sum d^2) over all pairs. Throws InvalidArgument on
/// a size mismatch or when every original distance is zero.
StressReport kruskal_stress(const CondensedDistanceMatrix& original,
                            const CondensedDistanceMatrix& projected);

/// Scales the dataset features and the embedding axes to `range`, then
/// compares their pairwise distances.
StressReport stress_pipeline(const Dataset& d, const Embedding& e, const ScaleRange& range);

/// Same as stress_pipeline with the original distances already computed
/// from the scaled dataset.
StressReport stress_against(const CondensedDistanceMatrix& original, const Matrix& coords,
                            const ScaleRange& range);

/// Leave-one-out k-NN label agreement in the embedding. Majority vote over
/// the k nearest other points; ties go to the label of the nearest one.
double knn_label_accuracy(const Matrix& coords, std::span<const std::string> labels,
                          std::size_t k = 1);

} // namespace dimenfix
