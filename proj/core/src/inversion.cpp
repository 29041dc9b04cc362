#include "wienerlab/inversion.hpp"

#include "wienerlab/drifts.hpp"
#include "wienerlab/girsanov.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace wienerlab {

namespace {

struct Solution {
    WienerPath path;
    std::vector<double> drift; // v = -u o V
};

Solution solve(const AdaptedDrift& d, const WienerPath& y)
{
    const double dt = y.grid().dt();
    PathBuilder builder(y.grid());
    std::vector<double> v(y.steps());
    for (std::size_t i = 0; i < y.steps(); ++i) {
        const double u = d.eval(builder.path(), i);
        if (!std::isfinite(u)) {
            throw std::runtime_error("invert_explicit: non-finite drift value at step " +
                                     std::to_string(i) + " for " + d.name());
        }
        v[i] = -u;
        builder.push(y.increment(i) - u * dt);
    }
    return {std::move(builder).finish(), std::move(v)};
}

void fill_residuals(const AdaptedDrift& d, const WienerPath& y, InversionResult& r)
{
    r.residual_right = sup_distance(forward_map(d, r.inverse), y);
    r.residual_left = sup_distance(solve(d, forward_map(d, y)).path, y);
}

double sup_abs_sum(const std::vector<double>& a, const std::vector<double>& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] + b[i]));
    }
    return worst;
}

} // namespace

WienerPath forward_map(const AdaptedDrift& d, const WienerPath& w)
{
    const double dt = w.grid().dt();
    const std::vector<double> u = d.eval_all(w);
    std::vector<double> inc(w.steps());
    for (std::size_t i = 0; i < inc.size(); ++i) {
        inc[i] = w.increment(i) + u[i] * dt;
    }
    return WienerPath(w.grid(), std::move(inc));
}

InversionResult invert_explicit(const AdaptedDrift& d, const WienerPath& y)
{
    Solution s = solve(d, y);
    InversionResult r{std::move(s.path), CameronMartinVector(y.grid(), std::move(s.drift))};
    fill_residuals(d, y, r);
    return r;
}

InversionResult invert_picard(const AdaptedDrift& d, const WienerPath& y, std::size_t max_iter,
                              double tol)
{
    if (max_iter < 1) {
        throw std::invalid_argument("invert_picard: max_iter must be >= 1");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("invert_picard: tol must be positive");
    }
    const double dt = y.grid().dt();
    WienerPath current = y;
    std::size_t iterations = 0;
    bool converged = false;
    while (iterations < max_iter) {
        const std::vector<double> u = d.eval_all(current);
        std::vector<double> inc(y.steps());
        for (std::size_t i = 0; i < inc.size(); ++i) {
            inc[i] = y.increment(i) - u[i] * dt;
        }
        WienerPath next(y.grid(), std::move(inc));
        ++iterations;
        const double step = sup_distance(next, current);
        current = std::move(next);
        if (step < tol) {
            converged = true;
            break;
        }
    }
    std::vector<double> v = d.eval_all(current);
    for (double& x : v) {
        x = -x;
    }
    InversionResult r{current, CameronMartinVector(y.grid(), std::move(v))};
    r.iterations = iterations;
    r.converged = converged;
    r.residual_right = sup_distance(forward_map(d, r.inverse), y);
    r.residual_left = sup_distance(solve(d, forward_map(d, y)).path, y);
    return r;
}

RoundtripResiduals roundtrip_residuals(const AdaptedDrift& d, const WienerPath& w)
{
    RoundtripResiduals r;
    r.left = sup_distance(solve(d, forward_map(d, w)).path, w);
    r.right = sup_distance(forward_map(d, solve(d, w).path), w);
    r.continuum_not_implied = !d.smooth_in_path();
    return r;
}

InverseDriftResiduals inverse_drift_identities(const AdaptedDrift& d, const WienerPath& w)
{
    InverseDriftResiduals r;
    const Solution inverse = solve(d, w);
    r.v_plus_u_of_v = sup_abs_sum(inverse.drift, d.eval_all(inverse.path));
    const Solution at_image = solve(d, forward_map(d, w));
    r.u_plus_v_of_u = sup_abs_sum(d.eval_all(w), at_image.drift);
    return r;
}

double rho_inverse_identity_check(const AdaptedDrift& d, const WienerPath& w)
{
    const WienerPath y = forward_map(d, w);
    const Solution inverse = solve(d, y);
    const GirsanovWeight of_v =
        girsanov_weight(CameronMartinVector(y.grid(), inverse.drift), y);
    const GirsanovWeight of_u = girsanov_weight(d, w);
    return std::abs(std::expm1(of_v.log_rho + of_u.log_rho));
}

std::vector<double> cross_resolution_error(const AdaptedDrift& d, const WienerPath& w_fine,
                                           const std::vector<std::size_t>& levels)
{
    if (levels.size() < 2) {
        throw std::invalid_argument("cross_resolution_error: need at least two levels");
    }
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] == 0 || w_fine.steps() % levels[k] != 0) {
            throw std::invalid_argument("cross_resolution_error: level " +
                                        std::to_string(levels[k]) + " does not divide " +
                                        std::to_string(w_fine.steps()));
        }
        if (k > 0 && levels[k] != 2 * levels[k - 1]) {
            throw std::invalid_argument(
                "cross_resolution_error: levels must double from one to the next");
        }
    }
    std::vector<WienerPath> inverses;
    inverses.reserve(levels.size());
    for (std::size_t level : levels) {
        inverses.push_back(solve(d, coarsen(w_fine, level)).path);
    }
    std::vector<double> errors;
    for (std::size_t k = 0; k + 1 < inverses.size(); ++k) {
        const WienerPath& coarse = inverses[k];
        const WienerPath& fine = inverses[k + 1];
        double worst = 0.0;
        for (std::size_t i = 0; i <= coarse.steps(); ++i) {
            worst = std::max(worst, std::abs(coarse.value(i) - fine.value(2 * i)));
        }
        errors.push_back(worst);
    }
    return errors;
}

InversionResult piecewise_glue(const std::vector<GluePiece>& pieces, const WienerPath& y)
{
    std::vector<std::pair<std::size_t, Solution>> accepted;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        Solution candidate = solve(*pieces[k].drift, y);
        if (pieces[k].contains(candidate.path)) {
            accepted.emplace_back(k, std::move(candidate));
        }
    }
    if (accepted.empty()) {
        throw CoverageViolation("piecewise_glue: no piece contains its candidate pre-image");
    }
    for (std::size_t k = 1; k < accepted.size(); ++k) {
        const double gap = sup_distance(accepted[0].second.path, accepted[k].second.path);
        if (gap > 1e-10) {
            throw InconsistentPieces("piecewise_glue: pieces " +
                                     std::to_string(accepted[0].first) + " and " +
                                     std::to_string(accepted[k].first) +
                                     " accept pre-images " + std::to_string(gap) + " apart");
        }
    }
    const AdaptedDrift& d = *pieces[accepted[0].first].drift;
    Solution& s = accepted[0].second;
    InversionResult r{std::move(s.path), CameronMartinVector(y.grid(), std::move(s.drift))};
    fill_residuals(d, y, r);
    return r;
}

StoppedConsistency stopped_consistency(const DriftPtr& d, double level_m, double level_n,
                                       const WienerPath& w)
{
    if (!(level_m < level_n)) {
        throw std::invalid_argument("stopped_consistency: need level_m < level_n");
    }
    const auto lower = stop_at_level(d, level_m);
    const auto upper = stop_at_level(d, level_n);
    const WienerPath vm = solve(*lower, w).path;
    const WienerPath vn = solve(*upper, w).path;
    StoppedConsistency c;
    c.stop_index = lower->stopping_index(vm);
    for (std::size_t i = 0; i <= std::min(c.stop_index, w.steps()); ++i) {
        c.distance = std::max(c.distance, std::abs(vm.value(i) - vn.value(i)));
    }
    return c;
}

} // namespace wienerlab
