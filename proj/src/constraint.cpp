#include "dimenfix/constraint.hpp"

#include "dimenfix/csv.hpp"
#include "dimenfix/error.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <type_traits>

namespace dimenfix {

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidArgument("inverse normal CDF needs 0 < p < 1, got " + csv::format_double(p));
    }

    // Rational approximation (relative error about 1e-9), central region plus
    // two tails.
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                             -2.759285104469687e+02, 1.383577518672690e+02,
                                             -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                             -1.556989798598866e+02, 6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                             -2.400758277161838e+00, -2.549732539343734e+00,
                                             4.374664141464968e+00, 2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                             2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Newton step on Phi(x) - p.
    const double density = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    if (density > 0.0) {
        x -= (normal_cdf(x) - p) / density;
    }
    return x;
}

GaussianParams gaussian_params(double a, double ci) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw InvalidArgument("moving half-range must be positive, got " + csv::format_double(a));
    }
    if (!(ci > 0.0 && ci < 1.0)) {
        throw InvalidArgument("confidence level must lie in (0, 1), got " + csv::format_double(ci));
    }
    GaussianParams g;
    g.a = a;
    g.z = inverse_normal_cdf((1.0 + ci) / 2.0);
    g.sigma = a / g.z;
    return g;
}

double moving_ratio(double x, const GaussianParams& params) {
    return std::exp(-(x * x) / (2.0 * params.sigma * params.sigma));
}

void validate(const ConstraintPolicy& p) {
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, policy::NormalRange>) {
                if (!(v.a > 0.0) || !std::isfinite(v.a)) {
                    throw InvalidArgument("range mode needs a positive half-range, got " +
                                          csv::format_double(v.a));
                }
            } else if constexpr (std::is_same_v<T, policy::GaussianRange>) {
                (void)gaussian_params(v.a, v.ci);
            }
        },
        p);
}

bool is_fixing(const ConstraintPolicy& p) noexcept {
    return !std::holds_alternative<policy::Vanilla>(p);
}

const char* mode_name(const ConstraintPolicy& p) noexcept {
    static constexpr std::array<const char*, 4> names{"vanilla", "strict", "range", "gauss"};
    return names[p.index()];
}

AxisConstraint::AxisConstraint(const ConstraintPolicy& p) : policy_(p) {
    validate(policy_);
    if (const auto* g = std::get_if<policy::GaussianRange>(&policy_)) {
        gauss_ = gaussian_params(g->a, g->ci);
    }
}

double AxisConstraint::apply(double origin, double current, double delta) const noexcept {
    switch (policy_.index()) {
    case 0:
        return current + delta;
    case 1:
        return current;
    case 2: {
        const double a = std::get<policy::NormalRange>(policy_).a;
        const double proposed = current + delta;
        return std::abs(proposed - origin) <= a ? proposed : current;
    }
    default: {
        const auto& g = std::get<policy::GaussianRange>(policy_);
        const double x = g.displacement == GaussianDisplacement::post_move
                             ? (current + delta) - origin
                             : current - origin;
        return current + delta * moving_ratio(x, gauss_);
    }
    }
}

double apply_constraint(const ConstraintPolicy& p, double origin, double current, double delta) {
    return AxisConstraint(p).apply(origin, current, delta);
}

} // namespace dimenfix
