#include "dimenfix/engine.hpp"

#include "dimenfix/csv.hpp"
#include "dimenfix/error.hpp"
#include "dimenfix/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace dimenfix {

const char* init_name(InitKind k) noexcept {
    return k == InitKind::random ? "random" : "pca";
}

void validate(const ProjectionConfig& cfg) {
    if (!(cfg.learning_rate > 0.0 && cfg.learning_rate <= 1.0)) {
        throw InvalidArgument("learning rate must lie in (0, 1], got " +
                              csv::format_double(cfg.learning_rate));
    }
    if (cfg.max_iterations < 1) {
        throw InvalidArgument("max_iterations must be at least 1");
    }
    if (cfg.target_dims != 2 && cfg.target_dims != 3) {
        throw InvalidArgument("target dimensionality must be 2 or 3");
    }
    if (!(cfg.epsilon > 0.0)) {
        throw InvalidArgument("epsilon must be positive");
    }
    if (cfg.trace_every < 0) {
        throw InvalidArgument("trace_every must be non-negative");
    }
    validate(cfg.policy);
    validate(cfg.scale);
    if (is_fixing(cfg.policy) && !cfg.fixed_feature) {
        throw InvalidArgument(std::string("mode '") + mode_name(cfg.policy) +
                              "' needs a fixed feature");
    }
    if (!is_fixing(cfg.policy) && cfg.fixed_feature) {
        throw InvalidArgument("vanilla mode takes no fixed feature");
    }
}

ForceScheme::ForceScheme(const CondensedDistanceMatrix& targets, const ProjectionConfig& cfg)
    : targets_(targets), constraint_(cfg.policy), fixing_(is_fixing(cfg.policy)),
      epsilon_(cfg.epsilon) {}

void ForceScheme::relax_point(Embedding& e, std::size_t i, double lr) const {
    const std::size_t n = e.n_points();
    const std::size_t dims = e.dims();
    const std::size_t fixed = e.fixed_axis();
    const std::size_t free_axes = fixing_ ? dims - 1 : dims;
    const double* origin = fixing_ ? e.fixed_origin->data() : nullptr;

    auto xi = e.coords.row(i);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) {
            continue;
        }
        auto xj = e.coords.row(j);
        double current = 0.0;
        for (std::size_t k = 0; k < dims; ++k) {
            const double diff = xi[k] - xj[k];
            current += diff * diff;
        }
        current = std::max(std::sqrt(current), epsilon_);
        const double step = lr * (targets_.at_unchecked(i, j) - current) / current;

        for (std::size_t k = 0; k < free_axes; ++k) {
            xi[k] += step * (xi[k] - xj[k]);
        }
        if (fixing_) {
            const double delta = step * (xi[fixed] - xj[fixed]);
            xi[fixed] = constraint_.apply(origin[i], xi[fixed], delta);
        }
    }
}

void ForceScheme::step(Embedding& e, std::mt19937_64& rng, double lr) const {
    std::vector<std::size_t> order(e.n_points());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
        relax_point(e, i, lr);
    }
}

void force_step(Embedding& e, const CondensedDistanceMatrix& m, const ProjectionConfig& cfg,
                std::mt19937_64& rng) {
    if (m.n_points() != e.n_points()) {
        throw InvalidArgument("distance matrix covers " + std::to_string(m.n_points()) +
                              " points, embedding has " + std::to_string(e.n_points()));
    }
    if (is_fixing(cfg.policy) &&
        (!e.fixed_origin || e.fixed_origin->size() != e.n_points())) {
        throw InvalidArgument("fixing policy needs an embedding with a fixed-axis origin");
    }
    ForceScheme(m, cfg).step(e, rng, cfg.learning_rate);
}

std::mt19937_64 make_step_rng(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      0x5eedu};
    return std::mt19937_64(seq);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_finite(const Embedding& e, int iteration) {
    for (std::size_t r = 0; r < e.n_points(); ++r) {
        for (double v : e.coords.row(r)) {
            if (!std::isfinite(v)) {
                throw NumericalError("non-finite coordinate at iteration " +
                                     std::to_string(iteration) + ", point " + std::to_string(r));
            }
        }
    }
}

} // namespace

RunResult run_projection(const Dataset& d, const ProjectionConfig& cfg) {
    validate(cfg);
    const auto start = Clock::now();
    double untimed = 0.0;

    const Dataset scaled = scale_features(d, cfg.scale);
    std::vector<double> fixed_values;
    if (cfg.fixed_feature) {
        fixed_values = extract_feature(scaled, *cfg.fixed_feature);
    }
    const CondensedDistanceMatrix targets = build_distance_matrix(scaled);

    RunResult result;
    const auto init_start = Clock::now();
    const InitMode mode = cfg.init == InitKind::random ? InitMode{RandomInit{cfg.seed}}
                                                       : InitMode{PcaInit{}};
    Embedding e = init_embedding(scaled, cfg.target_dims, mode, cfg.scale);
    if (is_fixing(cfg.policy)) {
        e = fix_axis(std::move(e), fixed_values);
    }
    result.wall_time_init = seconds_since(init_start);

    auto record = [&](int iteration) {
        const auto t = Clock::now();
        result.stress_trace.push_back(
            {iteration, stress_against(targets, e.coords, cfg.scale).stress,
             kruskal_stress(targets, build_distance_matrix(e.coords)).stress});
        untimed += seconds_since(t);
    };
    record(0);

    const ForceScheme scheme(targets, cfg);
    std::mt19937_64 rng = make_step_rng(cfg.seed);
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        double lr = cfg.learning_rate;
        if (cfg.lr_decay) {
            lr *= 1.0 - static_cast<double>(it - 1) / cfg.max_iterations;
        }
        scheme.step(e, rng, lr);
        check_finite(e, it);
        result.iterations_run = it;
        if (it != cfg.max_iterations && cfg.trace_every > 0 && it % cfg.trace_every == 0) {
            record(it);
        }
    }
    record(result.iterations_run);

    result.embedding = std::move(e);
    result.wall_time_total = seconds_since(start) - untimed;
    return result;
}

} // namespace dimenfix
