#pragma once

#include "wienerlab/drift.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace wienerlab {

// Builtin drifts. Densities are evaluated at the left endpoint t_i of
// [t_i, t_{i+1}) and W(t_i) = values()[i].

DriftPtr make_zero_drift();

/// density == c
DriftPtr make_constant_h(double c);

/// density_i = a * sum_{j<i} exp(-lambda (t_i - t_j)) dW_j
DriftPtr make_linear_volterra(double a, double lambda);

/// density_i = a * W(t_i). The inverse solves dV = -a V dt + dy.
DriftPtr make_ou(double a);

/// density_i = b * sin(W(t_i))
DriftPtr make_bounded_sin(double b);

/// density_i = kappa * t_i^{-alpha} * sin(W(t_i)), alpha in [0, 0.5).
/// At t_0 = 0 the factor is dt^{-alpha}.
DriftPtr make_singular_alpha(double kappa, double alpha);

/// Dyadic Tsirelson drift on levels t_k = 2^{-k}: on [t_{k+1}, t_k) the
/// density is the fractional part of
/// (W(t_{k+1}) - W(t_{k+2})) / (t_{k+1} - t_{k+2}).
/// Level k sits at grid index floor(n / 2^k); intervals whose reference
/// points coincide or fall below dt carry zero density.
DriftPtr make_tsirelson();

enum class PiecewiseBranch { dispatch, first, second };

/// Before the switch time the density is first's. From the first grid point
/// t_p >= switch_time on, it is first's when W(t_p) >= 0 and second's
/// otherwise. A forced branch ignores the predicate.
DriftPtr make_piecewise(double switch_time, DriftPtr first, DriftPtr second,
                        PiecewiseBranch branch = PiecewiseBranch::dispatch);

/// C^1 even bump: 1 on [-1, 1], 0 outside (-2, 2), piecewise quadratic in
/// between, sup |bump'| = kBumpSlope.
double smooth_bump(double x) noexcept;
double smooth_bump_derivative(double x) noexcept;
inline constexpr double kBumpSlope = 2.0;

/// density = bump(density / level) * density. Bounded by 2 * level.
DriftPtr truncate_smooth(DriftPtr inner, double level);

/// Drift frozen to zero once the running energy sum_{j<i} density_j^2 dt
/// exceeds level.
class StoppedDrift final : public AdaptedDrift {
public:
    StoppedDrift(DriftPtr inner, double level);

    std::string name() const override;
    double eval(const WienerPath& w, std::size_t i) const override;
    std::vector<double> eval_all(const WienerPath& w) const override;
    std::optional<Matrix> kernel(const WienerPath& w) const override;
    std::optional<double> density_bound() const override { return inner_->density_bound(); }
    bool smooth_in_path() const override { return inner_->smooth_in_path(); }

    /// First index i with sum_{j<i} density_j^2 dt > level; steps() if none.
    std::size_t stopping_index(const WienerPath& w) const;

    double level() const noexcept { return level_; }
    const DriftPtr& inner() const noexcept { return inner_; }

private:
    DriftPtr inner_;
    double level_;
};

/// Throws std::invalid_argument unless level > 0.
std::shared_ptr<const StoppedDrift> stop_at_level(DriftPtr inner, double level);

/// First-order cutoff density * theta(density^2), with theta = 1 on
/// [0, level] and 0 beyond level + 1 (C^1, piecewise quadratic).
DriftPtr truncate_theta(DriftPtr inner, double level);

/// First index i with density_i^2 > level along w; steps() if none. Before
/// it, truncate_theta(d, level) agrees with d.
std::size_t theta_exit_index(const AdaptedDrift& d, const WienerPath& w, double level);

/// Tags accepted by make_builtin, in documentation order.
const std::vector<std::string>& supported_drift_tags();

/// Builds a drift from its spec. Unknown tags, unknown params, missing
/// nested specs or parameters outside their ranges throw
/// std::invalid_argument; the unknown-tag message lists supported tags.
DriftPtr make_builtin(const DriftSpec& spec);

/// Representative spec for every tag, used by catalog-wide checks.
std::vector<DriftSpec> catalog_specs();

} // namespace wienerlab
