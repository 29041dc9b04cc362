#pragma once

#include "wienerlab/path.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wienerlab {

using Matrix = Eigen::MatrixXd;

/// Serializable description of a drift: a type tag, numeric parameters
/// and nested specs for wrapper drifts.
struct DriftSpec {
    std::string type;
    std::map<std::string, double> params;
    std::vector<DriftSpec> inner;

    bool operator==(const DriftSpec&) const = default;
};

/// Adapted drift density: a path functional whose value at step i reads
/// only the prefix increments()[0..i-1] (equivalently values()[0..i]).
///
/// Implementations must be immutable; evaluation is pure and safe to call
/// concurrently.
class AdaptedDrift {
public:
    virtual ~AdaptedDrift() = default;

    virtual std::string name() const = 0;

    /// Density at t_i. No range check; see eval_drift.
    virtual double eval(const WienerPath& w, std::size_t i) const = 0;

    /// Densities at every step. Overridden where a recursion is cheaper
    /// than repeated eval().
    virtual std::vector<double> eval_all(const WienerPath& w) const;

    /// Exact derivative kernel K[i][j] = d density_i / d increment_j, when
    /// the drift provides one.
    virtual std::optional<Matrix> kernel(const WienerPath& w) const;

    /// Deterministic bound on |density|, when known.
    virtual std::optional<double> density_bound() const { return std::nullopt; }

    /// False for drifts that are not differentiable along the path, where a
    /// finite-difference derivative has no continuum counterpart.
    virtual bool smooth_in_path() const { return true; }

    /// Spec this drift was built from, when it came from make_builtin.
    const std::optional<DriftSpec>& spec() const noexcept { return spec_; }
    void set_spec(DriftSpec s) { spec_ = std::move(s); }

private:
    std::optional<DriftSpec> spec_;
};

using DriftPtr = std::shared_ptr<const AdaptedDrift>;

/// Checked evaluation; throws std::invalid_argument when i >= steps.
double eval_drift(const AdaptedDrift& d, const WienerPath& w, std::size_t i);

/// density[i] = drift at t_i along w.
CameronMartinVector drift_to_cm(const AdaptedDrift& d, const WienerPath& w);

} // namespace wienerlab
