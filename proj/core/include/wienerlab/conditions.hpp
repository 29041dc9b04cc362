#pragma once

#include "wienerlab/drift.hpp"
#include "wienerlab/estimator.hpp"
#include "wienerlab/malliavin.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace wienerlab {

// Finiteness of an exponential moment cannot be decided from samples. Every
// report below carries the truncated estimate together with tail
// diagnostics, and "holds" means only that the sample mass is not carried
// by a handful of paths.

enum class ConditionVerdict { holds, inconclusive, fails };
std::string to_string(ConditionVerdict v);

struct ConditionReport {
    std::string id;
    std::optional<double> p;
    std::optional<double> q; ///< conjugate exponent, 1/p + 1/q = 1
    MCEstimate estimate;
    TailStats tails;
    ConditionVerdict verdict = ConditionVerdict::inconclusive;
    /// A finite bound the condition is known to satisfy for this drift.
    std::optional<double> claimed_bound;
    /// Condition-specific extras (quantiles, maxima, sample-size comparisons).
    std::map<std::string, double> details;
};

/// Mass share above which the largest 1% of samples make an estimate
/// untrustworthy.
inline constexpr double kTailShareLimit = 0.5;

/// E[exp(|u|_H^2 / 2)]. For drifts with a density bound B the bound
/// exp(B^2 / 2) is claimed. Requires N >= 2.
ConditionReport novikov_estimate(const AdaptedDrift& d, const TimeGrid& grid, std::size_t paths,
                                 const RandomSource& source);

/// E[exp(delta u / 2)], reported with the same verdict logic as Novikov.
ConditionReport kazamaki_estimate(const AdaptedDrift& d, const TimeGrid& grid, std::size_t paths,
                                  const RandomSource& source);

/// E[exp q(||grad u||_2^2 / 2 - delta u)] with q = p / (p - 1), p > 1.
ConditionReport cond_nice(const AdaptedDrift& d, const TimeGrid& grid, double p,
                          std::size_t paths, const RandomSource& source,
                          MatrixRoute route = MatrixRoute::automatic);

/// E[exp(q ||grad u||_2^2 + 2 q^2 |u|_H^2)] with q = p / (p - 1), p > 1.
ConditionReport cond_holder(const AdaptedDrift& d, const TimeGrid& grid, double p,
                            std::size_t paths, const RandomSource& source,
                            MatrixRoute route = MatrixRoute::automatic);

/// Samples ||grad u||_2 on paths 0 .. 2N-1. The estimate is the mean over
/// all 2N; details hold "max_N", "max_2N", "q999" and "max_hs_sq". The
/// verdict is holds when the two maxima agree within 5%.
ConditionReport cond_bounded_grad(const AdaptedDrift& d, const TimeGrid& grid, std::size_t paths,
                                  const RandomSource& source,
                                  MatrixRoute route = MatrixRoute::automatic);

struct LipschitzVsHs {
    /// Largest sup-norm Lipschitz constant of a single density row over
    /// the sampled paths.
    double row_lipschitz_sup = 0.0;
    /// Largest H-norm of a single row over the sampled paths.
    double row_h_norm_sup = 0.0;
    MCEstimate hs_norm;      ///< ||grad u||_2
    double hs_norm_max = 0.0;
};

/// Requires a drift with an analytic kernel or one smooth enough for
/// finite differences; N >= 1.
LipschitzVsHs lipschitz_vs_hs_report(const AdaptedDrift& d, const TimeGrid& grid,
                                     std::size_t paths, const RandomSource& source,
                                     MatrixRoute route = MatrixRoute::automatic);

struct ConvexInterpolation {
    MCEstimate lhs; ///< E |v_tau - v_kappa|_H
    MCEstimate rhs;
};

/// Both sides of the stability estimate for the inverses of two Mehler
/// smoothings u_tau and u_kappa of d, which share their auxiliary paths.
/// The segment integral over alpha uses the midpoint rule on alpha_steps
/// cells. Requires 0 <= kappa <= tau, alpha_steps >= 2, N >= 2.
ConvexInterpolation convex_interp_check(const DriftPtr& d, const TimeGrid& grid, double tau,
                                        double kappa, std::size_t alpha_steps, std::size_t paths,
                                        const RandomSource& source,
                                        std::size_t inner_paths = 64);

} // namespace wienerlab
