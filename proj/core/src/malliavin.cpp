#include "wienerlab/malliavin.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wienerlab {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

Eigen::VectorXd singular_values(const Matrix& a)
{
    Eigen::BDCSVD<Matrix> svd(a);
    return svd.singularValues();
}

} // namespace

MalliavinMatrix malliavin_matrix_fd(const AdaptedDrift& d, const WienerPath& w, double eps)
{
    if (!(eps > 0.0)) {
        throw std::invalid_argument("malliavin_matrix_fd: step must be positive");
    }
    const std::size_t n = w.steps();
    MalliavinMatrix m{w.grid(), Matrix::Zero(idx(n), idx(n)), KernelProvenance::finite_difference};
    for (std::size_t j = 0; j < n; ++j) {
        const std::vector<double> up = d.eval_all(w.shifted(j, eps));
        const std::vector<double> down = d.eval_all(w.shifted(j, -eps));
        for (std::size_t i = 0; i < n; ++i) {
            const double value = (up[i] - down[i]) / (2.0 * eps);
            if (!std::isfinite(value)) {
                throw std::runtime_error("malliavin_matrix_fd: non-finite drift derivative at (i=" +
                                         std::to_string(i) + ", j=" + std::to_string(j) +
                                         ") for " + d.name());
            }
            m.entries(idx(i), idx(j)) = value;
        }
    }
    return m;
}

MalliavinMatrix malliavin_matrix_analytic(const AdaptedDrift& d, const WienerPath& w)
{
    auto k = d.kernel(w);
    if (!k) {
        throw std::invalid_argument("drift " + d.name() + " has no analytic kernel");
    }
    return {w.grid(), std::move(*k), KernelProvenance::analytic};
}

MalliavinMatrix malliavin_matrix(const AdaptedDrift& d, const WienerPath& w, MatrixRoute route,
                                 double eps)
{
    if (route == MatrixRoute::automatic) {
        if (auto k = d.kernel(w)) {
            return {w.grid(), std::move(*k), KernelProvenance::analytic};
        }
    }
    return malliavin_matrix_fd(d, w, eps);
}

double hs_norm_sq(const MalliavinMatrix& m)
{
    const double dt = m.grid.dt();
    return m.entries.squaredNorm() * dt * dt;
}

double adaptedness_defect(const MalliavinMatrix& m)
{
    double worst = 0.0;
    const Eigen::Index n = m.entries.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            worst = std::max(worst, std::abs(m.entries(i, j)));
        }
    }
    return worst;
}

double det2(const Matrix& a)
{
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("det2: matrix must be square");
    }
    const Matrix b = Matrix::Identity(a.rows(), a.cols()) + a;
    const double det = Eigen::PartialPivLU<Matrix>(b).determinant();
    if (det == 0.0) {
        return 0.0;
    }
    return det * std::exp(-a.trace());
}

double det2(const MalliavinMatrix& m)
{
    return det2(m.operator_matrix());
}

OperatorStats operator_stats(const MalliavinMatrix& m)
{
    const Matrix a = m.operator_matrix();
    OperatorStats s;
    s.hs_norm_sq = a.squaredNorm();
    s.trace = a.trace();
    s.det2 = det2(a);
    s.op_norm = a.size() == 0 ? 0.0 : singular_values(a).maxCoeff();
    return s;
}

CarlemanResult carleman_check(const Matrix& a)
{
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("carleman_check: matrix must be square");
    }
    CarlemanResult r;
    r.rhs = std::exp(0.5 * (a.squaredNorm() + 1.0));
    const Matrix b = Matrix::Identity(a.rows(), a.cols()) + a;
    const Eigen::PartialPivLU<Matrix> lu(b);
    const Matrix& packed = lu.matrixLU();
    double log_abs_det = 0.0;
    for (Eigen::Index i = 0; i < packed.rows(); ++i) {
        const double pivot = std::abs(packed(i, i));
        if (pivot == 0.0) {
            r.lhs = 0.0;
            r.ok = true;
            return r;
        }
        log_abs_det += std::log(pivot);
    }
    const double sigma_min = singular_values(b).minCoeff();
    if (sigma_min == 0.0) {
        r.lhs = 0.0;
        r.ok = true;
        return r;
    }
    r.lhs = std::exp(log_abs_det - a.trace() - std::log(sigma_min));
    r.ok = r.lhs <= r.rhs * (1.0 + 1e-10);
    return r;
}

double row_lipschitz_sup(const MalliavinMatrix& m)
{
    const Eigen::Index n = m.entries.rows();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double variation = 0.0;
        for (Eigen::Index k = 1; k <= n; ++k) {
            const double next = k < n ? m.entries(i, k) : 0.0;
            variation += std::abs(m.entries(i, k - 1) - next);
        }
        worst = std::max(worst, variation);
    }
    return worst;
}

double row_h_norm_sup(const MalliavinMatrix& m)
{
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
        worst = std::max(worst, m.entries.row(i).squaredNorm());
    }
    return std::sqrt(worst * m.grid.dt());
}

namespace {

WienerPath mix(const WienerPath& w, std::span<const double> aux, double outer, double noise)
{
    std::vector<double> inc(w.steps());
    for (std::size_t k = 0; k < inc.size(); ++k) {
        inc[k] = outer * w.increment(k) + noise * aux[k];
    }
    return WienerPath(w.grid(), std::move(inc));
}

void require_tau(double tau, std::size_t inner_paths)
{
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("Mehler smoothing: tau must be >= 0");
    }
    if (inner_paths < 1) {
        throw std::invalid_argument("Mehler smoothing: need at least one inner path");
    }
}

} // namespace

MCEstimate mehler_apply(const PathFunctional& f, const WienerPath& w, double tau,
                        std::size_t inner_paths, const RandomSource& source)
{
    require_tau(tau, inner_paths);
    if (tau == 0.0) {
        return {f(w), 0.0, 1};
    }
    const double outer = std::exp(-tau);
    const double noise = std::sqrt(-std::expm1(-2.0 * tau));
    MomentAccumulator acc;
    for (std::size_t m = 0; m < inner_paths; ++m) {
        const WienerPath y = sample_path(w.grid(), source.path(m));
        acc.add(f(mix(w, y.increments(), outer, noise)));
    }
    return acc.estimate();
}

MehlerSmoothedDrift::MehlerSmoothedDrift(DriftPtr inner, double tau, std::size_t inner_paths,
                                         RandomSource source)
    : inner_(std::move(inner)), tau_(tau), inner_paths_(inner_paths), source_(source),
      outer_scale_(std::exp(-tau)), noise_scale_(std::sqrt(-std::expm1(-2.0 * tau)))
{
    require_tau(tau, inner_paths);
}

std::string MehlerSmoothedDrift::name() const
{
    std::ostringstream os;
    os << "mehler(tau=" << tau_ << ",inner=" << inner_paths_ << "," << inner_->name() << ")";
    return os.str();
}

const std::vector<std::vector<double>>& MehlerSmoothedDrift::auxiliary(const TimeGrid& grid) const
{
    std::scoped_lock lock(cache_mutex_);
    auto it = cache_.find(grid.steps());
    if (it == cache_.end()) {
        std::vector<std::vector<double>> paths;
        paths.reserve(inner_paths_);
        for (std::size_t m = 0; m < inner_paths_; ++m) {
            const WienerPath y = sample_path(grid, source_.path(m));
            paths.emplace_back(y.increments().begin(), y.increments().end());
        }
        it = cache_.emplace(grid.steps(), std::move(paths)).first;
    }
    return it->second;
}

std::vector<WienerPath> MehlerSmoothedDrift::mixed_paths(const WienerPath& w) const
{
    const auto& aux = auxiliary(w.grid());
    std::vector<WienerPath> out;
    out.reserve(aux.size());
    for (const auto& y : aux) {
        out.push_back(mix(w, y, outer_scale_, noise_scale_));
    }
    return out;
}

double MehlerSmoothedDrift::eval(const WienerPath& w, std::size_t i) const
{
    if (tau_ == 0.0) {
        return inner_->eval(w, i);
    }
    double sum = 0.0;
    for (const WienerPath& z : mixed_paths(w)) {
        sum += inner_->eval(z, i);
    }
    return outer_scale_ * sum / static_cast<double>(inner_paths_);
}

std::vector<double> MehlerSmoothedDrift::eval_all(const WienerPath& w) const
{
    if (tau_ == 0.0) {
        return inner_->eval_all(w);
    }
    return eval_with_stderr(w).mean;
}

MehlerSmoothedDrift::Evaluation MehlerSmoothedDrift::eval_with_stderr(const WienerPath& w) const
{
    const std::size_t n = w.steps();
    if (tau_ == 0.0) {
        return {inner_->eval_all(w), std::vector<double>(n, 0.0)};
    }
    std::vector<MomentAccumulator> acc(n);
    for (const WienerPath& z : mixed_paths(w)) {
        const std::vector<double> u = inner_->eval_all(z);
        for (std::size_t i = 0; i < n; ++i) {
            acc[i].add(outer_scale_ * u[i]);
        }
    }
    Evaluation e{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const MCEstimate est = acc[i].estimate();
        e.mean[i] = est.mean;
        e.std_error[i] = est.std_error;
    }
    return e;
}

std::optional<Matrix> MehlerSmoothedDrift::kernel(const WienerPath& w) const
{
    if (tau_ == 0.0) {
        return inner_->kernel(w);
    }
    const auto n = idx(w.steps());
    Matrix sum = Matrix::Zero(n, n);
    for (const WienerPath& z : mixed_paths(w)) {
        auto k = inner_->kernel(z);
        if (!k) {
            return std::nullopt;
        }
        sum += *k;
    }
    // chain rule: d(mixed increment)/d(increment) = e^{-tau}
    return sum * (outer_scale_ * outer_scale_ / static_cast<double>(inner_paths_));
}

std::optional<double> MehlerSmoothedDrift::density_bound() const
{
    if (auto b = inner_->density_bound()) {
        return outer_scale_ * *b;
    }
    return std::nullopt;
}

std::shared_ptr<const MehlerSmoothedDrift> mehler_smooth(DriftPtr d, double tau,
                                                         std::size_t inner_paths,
                                                         const RandomSource& source)
{
    return std::make_shared<MehlerSmoothedDrift>(std::move(d), tau, inner_paths, source);
}

} // namespace wienerlab
