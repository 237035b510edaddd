#pragma once

#include "dimenfix/constraint.hpp"
#include "dimenfix/data.hpp"
#include "dimenfix/geometry.hpp"
#include "dimenfix/init.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dimenfix {

enum class InitKind { random, pca };

const char* init_name(InitKind k) noexcept;

struct ProjectionConfig {
    double learning_rate = 0.1;
    int max_iterations = 500;
    std::size_t target_dims = 2;
    std::uint64_t seed = 0;
    ConstraintPolicy policy = policy::Vanilla{};
    std::optional<std::string> fixed_feature;
    InitKind init = InitKind::random;
    ScaleRange scale{};
    double epsilon = 1e-9;
    /// Shrink the learning rate linearly towards zero over the run.
    bool lr_decay = false;
    /// Record stress every this many iterations (0 = only first and last).
    int trace_every = 0;
};

/// Throws InvalidArgument when the config breaks its invariants.
void validate(const ProjectionConfig& cfg);

struct StressSample {
    int iteration = 0;
    /// Both sides rescaled to the configured range, as in stress_pipeline.
    double stress = 0.0;
    /// Against the embedding as-is; this is what the optimizer descends on.
    double raw_stress = 0.0;
};

struct RunResult {
    Embedding embedding;
    std::vector<StressSample> stress_trace;
    double wall_time_total = 0.0; // seconds
    double wall_time_init = 0.0;
    int iterations_run = 0;
};

/// Force Scheme optimizer state. Distances are referenced, not copied.
class ForceScheme {
public:
    ForceScheme(const CondensedDistanceMatrix& targets, const ProjectionConfig& cfg);

    /// Moves point i once for every other point j by lr * (d - d') along the
    /// unit vector from j to i. Free axes move directly; the fixed axis goes
    /// through the constraint (except under the vanilla policy).
    void relax_point(Embedding& e, std::size_t i, double lr) const;

    /// One full sweep over all points in a freshly shuffled order.
    void step(Embedding& e, std::mt19937_64& rng, double lr) const;

private:
    const CondensedDistanceMatrix& targets_;
    AxisConstraint constraint_;
    bool fixing_;
    double epsilon_;
};

/// Single iteration with cfg.learning_rate; see ForceScheme::step.
void force_step(Embedding& e, const CondensedDistanceMatrix& m, const ProjectionConfig& cfg,
                std::mt19937_64& rng);

/// Full pipeline: scale, distances, init, fix axis, iterate.
RunResult run_projection(const Dataset& d, const ProjectionConfig& cfg);

/// RNG used for point traversal order, derived from the run seed.
std::mt19937_64 make_step_rng(std::uint64_t seed);

} // namespace dimenfix
