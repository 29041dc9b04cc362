#pragma once

#include "wienerlab/drift.hpp"
#include "wienerlab/estimator.hpp"
#include "wienerlab/malliavin.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wienerlab {

/// f(w) = phi(W(t_1), ..., W(t_d)) with a closed-form gradient of phi.
struct CylindricalFunction {
    std::string name;
    std::vector<double> times;
    std::function<double(std::span<const double>)> phi;
    std::function<std::vector<double>(std::span<const double>)> grad;
};

struct CylindricalValue {
    double value = 0.0;
    /// |grad f|_H^2 = sum_{i,j} d_i phi * d_j phi * min(t_i, t_j)
    double grad_h_norm_sq = 0.0;
};

/// Throws std::invalid_argument when an evaluation time is not a grid point.
CylindricalValue grad_cylindrical(const CylindricalFunction& f, const WienerPath& w);

class DegenerateFunction : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct LsiRecord {
    std::string function;
    MCEstimate entropy;  ///< E_nu[f^2 log(f^2 / E_nu f^2)]
    MCEstimate energy;   ///< E_nu |grad f|_H^2
    MCEstimate variance; ///< Var_nu f
    double K = 0.0;      ///< 2 exp(1 + largest sampled ||grad u||_2^2)
    double entropy_ratio = 0.0;  ///< entropy / energy
    double poincare_ratio = 0.0; ///< variance / energy
};

/// Expectations under nu = rho(-delta u) mu are rho-weighted averages over
/// paths from source. Standard errors of the entropy and variance come from
/// the delta method. Throws DegenerateFunction when E_nu f^2 is not positive.
std::vector<LsiRecord> lsi_check(const AdaptedDrift& d, const TimeGrid& grid,
                                 const std::vector<CylindricalFunction>& functions,
                                 std::size_t paths, const RandomSource& source,
                                 MatrixRoute route = MatrixRoute::automatic);

/// Five test functions of W at 0.25, 0.5, 0.75 and 1; the grid must contain
/// those times.
std::vector<CylindricalFunction> cylindrical_battery();

} // namespace wienerlab
