#pragma once

#include "wienerlab/drift.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wienerlab {

// On a grid, an adapted drift makes U = I + u lower triangular in the
// increments, so U is always a bijection of R^n solved by forward
// substitution. That is a statement about the discretization only; whether
// the continuum map is invertible is what the cross-resolution diagnostic
// and the sufficient conditions address.

/// U(w): increments w_i + density_i(w) * dt.
WienerPath forward_map(const AdaptedDrift& d, const WienerPath& w);

struct InversionResult {
    WienerPath inverse;                 ///< V(y)
    CameronMartinVector inverse_drift;  ///< v(y), so V = I + v
    double residual_left = 0.0;         ///< sup |V(U(y)) - y|
    double residual_right = 0.0;        ///< sup |U(V(y)) - y|
    std::size_t iterations = 0;         ///< Picard iterations; 0 for the explicit solver
    bool converged = true;
};

/// Forward substitution dw_i = dy_i - density_i(w prefix) * dt, with
/// v = -u o V. Throws std::runtime_error naming the step when the drift
/// returns a non-finite value.
InversionResult invert_explicit(const AdaptedDrift& d, const WienerPath& y);

/// Fixed point V <- y - int u(V) ds started at V = y; stops once successive
/// iterates are within tol in sup norm. Non-convergence is reported through
/// converged = false. Throws std::invalid_argument for max_iter < 1 or
/// tol <= 0.
InversionResult invert_picard(const AdaptedDrift& d, const WienerPath& y, std::size_t max_iter,
                              double tol);

struct RoundtripResiduals {
    double left = 0.0;   ///< sup |V(U(w)) - w|
    double right = 0.0;  ///< sup |U(V(w)) - w|
    /// Set for drifts that are not smooth along the path: discrete exactness
    /// says nothing about invertibility of the continuum map there.
    bool continuum_not_implied = false;
};

RoundtripResiduals roundtrip_residuals(const AdaptedDrift& d, const WienerPath& w);

struct InverseDriftResiduals {
    double v_plus_u_of_v = 0.0;  ///< sup_i |v_i(w) + u_i(V(w))|
    double u_plus_v_of_u = 0.0;  ///< sup_i |u_i(w) + v_i(U(w))|
};

InverseDriftResiduals inverse_drift_identities(const AdaptedDrift& d, const WienerPath& w);

/// |rho(-delta v)(U(w)) * rho(-delta u)(w) - 1| with v from invert_explicit.
double rho_inverse_identity_check(const AdaptedDrift& d, const WienerPath& w);

/// levels must be ascending, each twice the previous, and each must divide
/// w_fine.steps(); otherwise std::invalid_argument. The path coarsened to
/// each level is inverted; entry k is the sup distance between the
/// inverses at levels k and k+1 on the coarser grid.
std::vector<double> cross_resolution_error(const AdaptedDrift& d, const WienerPath& w_fine,
                                           const std::vector<std::size_t>& levels);

using PathPredicate = std::function<bool(const WienerPath&)>;

struct GluePiece {
    PathPredicate contains; ///< membership of a candidate pre-image
    DriftPtr drift;
};

class CoverageViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InconsistentPieces : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inverts y with every piece and accepts the candidates whose pre-image
/// lies in the piece's own set. Throws CoverageViolation when none is
/// accepted and InconsistentPieces when accepted candidates differ by more
/// than 1e-10.
InversionResult piecewise_glue(const std::vector<GluePiece>& pieces, const WienerPath& y);

struct StoppedConsistency {
    double distance = 0.0;        ///< sup_{i <= stop} |V_m(t_i) - V_n(t_i)|
    std::size_t stop_index = 0;   ///< stopping index of the level-m drift along V_m
};

/// Inverts w with d stopped at energy levels m < n and compares the two
/// inverses up to the stopping index of the lower level.
StoppedConsistency stopped_consistency(const DriftPtr& d, double level_m, double level_n,
                                       const WienerPath& w);

} // namespace wienerlab
