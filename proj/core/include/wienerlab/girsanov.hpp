#pragma once

#include "wienerlab/drift.hpp"
#include "wienerlab/estimator.hpp"

#include <cstddef>
#include <functional>
#include <string>

namespace wienerlab {

/// Left-endpoint Ito sum sum_i density_i * dW_i. For adapted integrands the
/// divergence and the Ito integral coincide, so this one sum serves both.
/// Throws std::invalid_argument on grid mismatch.
double ito_integral(const CameronMartinVector& u, const WienerPath& w);

/// Girsanov exponential rho = exp(-delta u - |u|_H^2 / 2), held in log form.
struct GirsanovWeight {
    double delta0_u = 0.0;
    double h_norm_sq = 0.0;
    double log_rho = 0.0;
    double rho = 1.0;
    /// Set when exp(log_rho) overflows; rho is then +inf.
    bool overflow = false;
};

GirsanovWeight girsanov_weight(const CameronMartinVector& u, const WienerPath& w);
GirsanovWeight girsanov_weight(const AdaptedDrift& d, const WienerPath& w);

/// Monte Carlo estimate of a positive exponential moment with heavy-tail
/// diagnostics.
struct MomentReport {
    MCEstimate estimate;
    TailStats tails;
};

/// E[rho(-delta u)] over paths source.path(0 .. N-1) on the grid.
/// Throws std::invalid_argument for N < 2.
MomentReport expect_rho(const AdaptedDrift& d, const TimeGrid& grid, std::size_t paths,
                        const RandomSource& source);

/// A sample mean cannot certify E[rho] = 1; this reads it as consistent
/// with 1 or as below 1 by more than z standard errors.
enum class NormalizationVerdict { consistent_with_one, below_one };
NormalizationVerdict normalization_verdict(const MCEstimate& e, double z = 3.0);
std::string to_string(NormalizationVerdict v);

struct EstimatePair {
    MCEstimate lhs;
    MCEstimate rhs;
};

/// lhs = E[rho log rho], rhs = E[rho |u|_H^2] / 2 under the reference measure.
EstimatePair entropy_identity_check(const AdaptedDrift& d, const TimeGrid& grid,
                                    std::size_t paths, const RandomSource& source);

using PathFunctional = std::function<double(const WienerPath&)>;

/// lhs = E[f(U(w)) rho(w)] ("weighted"), rhs = E[f(w)] ("plain").
EstimatePair change_of_var_check(const AdaptedDrift& d, const PathFunctional& f,
                                 const TimeGrid& grid, std::size_t paths,
                                 const RandomSource& source);

} // namespace wienerlab
