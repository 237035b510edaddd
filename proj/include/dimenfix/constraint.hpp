#pragma once

#include <variant>

namespace dimenfix {

/// Standard normal CDF.
double normal_cdf(double z);

/// Quantile of the standard normal, |Phi(result) - p| well below 1e-9.
/// Throws InvalidArgument unless 0 < p < 1.
double inverse_normal_cdf(double p);

struct GaussianParams {
    double a = 0.0; // moving half-range
    double z = 0.0; // positive z-score of the two-sided confidence level
    double sigma = 0.0; // a / z
};

/// z = Phi^-1((1 + ci) / 2), sigma = a / z.
GaussianParams gaussian_params(double a, double ci);

/// Fraction of a proposed fixed-axis step that is applied at displacement
/// x from the origin: exp(-x^2 / (2 sigma^2)).
double moving_ratio(double x, const GaussianParams& params);

/// Which displacement the Gaussian ratio is evaluated at.
enum class GaussianDisplacement {
    post_move, // (current + delta) - origin
    pre_move, // current - origin
};

namespace policy {

struct Vanilla {};

/// The fixed axis never moves.
struct Strict {};

/// Steps that would leave [origin - a, origin + a] are dropped.
struct NormalRange {
    double a = 0.1;
};

/// Steps are attenuated by the Gaussian moving ratio.
struct GaussianRange {
    double a = 0.1;
    double ci = 0.95;
    GaussianDisplacement displacement = GaussianDisplacement::post_move;
};

} // namespace policy

using ConstraintPolicy =
    std::variant<policy::Vanilla, policy::Strict, policy::NormalRange, policy::GaussianRange>;

/// Throws InvalidArgument on a <= 0 or ci outside (0, 1).
void validate(const ConstraintPolicy& p);

bool is_fixing(const ConstraintPolicy& p) noexcept;

/// Short name used on the command line and in reports:
/// vanilla | strict | range | gauss.
const char* mode_name(const ConstraintPolicy& p) noexcept;

/// Precomputed form of a policy, built once per run.
class AxisConstraint {
public:
    explicit AxisConstraint(const ConstraintPolicy& p);

    /// New fixed-axis value after proposing `delta` at `current`.
    double apply(double origin, double current, double delta) const noexcept;

    const ConstraintPolicy& policy() const noexcept { return policy_; }

private:
    ConstraintPolicy policy_;
    GaussianParams gauss_{};
};

/// One-shot convenience wrapper around AxisConstraint.
double apply_constraint(const ConstraintPolicy& p, double origin, double current, double delta);

} // namespace dimenfix
