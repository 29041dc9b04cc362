#pragma once

#include "wienerlab/drift.hpp"
#include "wienerlab/estimator.hpp"
#include "wienerlab/girsanov.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace wienerlab {

enum class KernelProvenance { finite_difference, analytic };

/// entries(i, j) = d density_i / d increment_j along one path. The operator
/// on H it represents, in increment coordinates, is A = entries * dt, so
/// Hilbert-Schmidt and operator norms of A discretize those of the kernel.
struct MalliavinMatrix {
    TimeGrid grid;
    Matrix entries;
    KernelProvenance provenance = KernelProvenance::finite_difference;

    Matrix operator_matrix() const { return entries * grid.dt(); }
};

inline constexpr double kDefaultFdStep = 1e-4;

/// Central differences in each increment. Throws std::runtime_error naming
/// (i, j) when the drift returns a non-finite value; std::invalid_argument
/// for eps <= 0.
MalliavinMatrix malliavin_matrix_fd(const AdaptedDrift& d, const WienerPath& w,
                                    double eps = kDefaultFdStep);

/// Exact kernel; throws std::invalid_argument if the drift has none.
MalliavinMatrix malliavin_matrix_analytic(const AdaptedDrift& d, const WienerPath& w);

enum class MatrixRoute { automatic, finite_difference };

/// Analytic kernel when available (automatic route), else finite differences.
MalliavinMatrix malliavin_matrix(const AdaptedDrift& d, const WienerPath& w,
                                 MatrixRoute route = MatrixRoute::automatic,
                                 double eps = kDefaultFdStep);

/// sum_{i,j} entries^2 * dt^2
double hs_norm_sq(const MalliavinMatrix& m);

/// max_{j >= i} |entries(i, j)|; zero for an adapted drift.
double adaptedness_defect(const MalliavinMatrix& m);

/// det(I + A) exp(-trace A) by LU; 0 when I + A is singular.
double det2(const Matrix& a);
double det2(const MalliavinMatrix& m);

struct OperatorStats {
    double hs_norm_sq = 0.0;
    double op_norm = 0.0; ///< largest singular value of A
    double det2 = 1.0;
    double trace = 0.0;
};

OperatorStats operator_stats(const MalliavinMatrix& m);

struct CarlemanResult {
    double lhs = 0.0; ///< |det2(I + A)| * ||(I + A)^{-1}||
    double rhs = 0.0; ///< exp((||A||_2^2 + 1) / 2)
    bool ok = true;
};

/// Both sides of the Carleman bound for a square operator matrix A.
CarlemanResult carleman_check(const Matrix& a);

/// Largest sup-norm Lipschitz constant of a row: for row i, the change of
/// density_i per unit sup-norm perturbation of the path values,
/// sum_k |entries(i, k-1) - entries(i, k)| with entries(i, n) = 0.
double row_lipschitz_sup(const MalliavinMatrix& m);

/// max_i |row i|_H = max_i sqrt(sum_j entries(i, j)^2 dt).
double row_h_norm_sup(const MalliavinMatrix& m);

/// Monte Carlo estimate of the Ornstein-Uhlenbeck semigroup
/// P_tau f(w) = E_y[f(e^{-tau} w + sqrt(1 - e^{-2 tau}) y)] over inner_paths
/// auxiliary paths source.path(m). tau = 0 returns f(w) exactly.
MCEstimate mehler_apply(const PathFunctional& f, const WienerPath& w, double tau,
                        std::size_t inner_paths, const RandomSource& source);

/// e^{-tau} P_tau u with a fixed set of auxiliary paths: the same inner_paths
/// paths serve every output index and every evaluation, so the result is a
/// deterministic adapted path functional.
class MehlerSmoothedDrift final : public AdaptedDrift {
public:
    MehlerSmoothedDrift(DriftPtr inner, double tau, std::size_t inner_paths, RandomSource source);

    std::string name() const override;
    double eval(const WienerPath& w, std::size_t i) const override;
    std::vector<double> eval_all(const WienerPath& w) const override;
    std::optional<Matrix> kernel(const WienerPath& w) const override;
    std::optional<double> density_bound() const override;
    bool smooth_in_path() const override { return inner_->smooth_in_path(); }

    struct Evaluation {
        std::vector<double> mean;
        /// Standard error of the inner average, per index.
        std::vector<double> std_error;
    };
    Evaluation eval_with_stderr(const WienerPath& w) const;

    double tau() const noexcept { return tau_; }
    std::size_t inner_paths() const noexcept { return inner_paths_; }
    const DriftPtr& inner() const noexcept { return inner_; }

private:
    std::vector<WienerPath> mixed_paths(const WienerPath& w) const;
    const std::vector<std::vector<double>>& auxiliary(const TimeGrid& grid) const;

    DriftPtr inner_;
    double tau_;
    std::size_t inner_paths_;
    RandomSource source_;
    double outer_scale_;
    double noise_scale_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::size_t, std::vector<std::vector<double>>> cache_;
};

/// Throws std::invalid_argument for tau < 0 or inner_paths < 1.
std::shared_ptr<const MehlerSmoothedDrift> mehler_smooth(DriftPtr d, double tau,
                                                         std::size_t inner_paths,
                                                         const RandomSource& source);

} // namespace wienerlab
