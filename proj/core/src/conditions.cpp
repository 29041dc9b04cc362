#include "wienerlab/conditions.hpp"

#include "wienerlab/girsanov.hpp"
#include "wienerlab/inversion.hpp"
#include "wienerlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace wienerlab {

namespace {

constexpr double kMaxLog = 709.0;

double safe_exp(double x)
{
    return x > kMaxLog ? std::numeric_limits<double>::infinity() : std::exp(x);
}

void require_paths(std::size_t paths, const char* what)
{
    if (paths < 2) {
        throw std::invalid_argument(std::string(what) + ": need at least 2 paths");
    }
}

double conjugate(double p, const char* what)
{
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw std::invalid_argument(std::string(what) + ": p must be a finite number > 1");
    }
    return p / (p - 1.0);
}

ConditionReport summarize(std::string id, const std::vector<double>& samples,
                          std::optional<double> claimed)
{
    ConditionReport r;
    r.id = std::move(id);
    r.estimate = estimate_of(samples);
    r.tails = tail_stats(samples);
    r.claimed_bound = claimed;
    const bool finite = std::isfinite(r.estimate.mean) && std::isfinite(r.estimate.std_error);
    if (claimed && finite && r.estimate.mean > *claimed + 3.0 * r.estimate.std_error) {
        r.verdict = ConditionVerdict::fails;
    } else if (finite && r.tails.top1_share < kTailShareLimit) {
        r.verdict = ConditionVerdict::holds;
    } else {
        r.verdict = ConditionVerdict::inconclusive;
    }
    return r;
}

struct PathTerms {
    double hs_sq = 0.0;
    double delta = 0.0;
    double h_sq = 0.0;
};

template <class Fn>
std::vector<double> per_path(std::size_t paths, const TimeGrid& grid, const RandomSource& source,
                             Fn fn)
{
    std::vector<double> out(paths);
    parallel_for(paths, [&](std::size_t k) { out[k] = fn(sample_path(grid, source.path(k))); });
    return out;
}

PathTerms terms(const AdaptedDrift& d, const WienerPath& w, bool need_matrix, MatrixRoute route)
{
    const CameronMartinVector u = drift_to_cm(d, w);
    PathTerms t;
    t.delta = ito_integral(u, w);
    t.h_sq = h_norm_sq(u);
    if (need_matrix) {
        t.hs_sq = hs_norm_sq(malliavin_matrix(d, w, route));
    }
    return t;
}

} // namespace

std::string to_string(ConditionVerdict v)
{
    switch (v) {
    case ConditionVerdict::holds:
        return "holds";
    case ConditionVerdict::fails:
        return "fails";
    case ConditionVerdict::inconclusive:
        break;
    }
    return "inconclusive";
}

ConditionReport novikov_estimate(const AdaptedDrift& d, const TimeGrid& grid, std::size_t paths,
                                 const RandomSource& source)
{
    require_paths(paths, "novikov_estimate");
    const auto samples = per_path(paths, grid, source, [&](const WienerPath& w) {
        return safe_exp(0.5 * h_norm_sq(drift_to_cm(d, w)));
    });
    std::optional<double> claimed;
    if (auto b = d.density_bound()) {
        claimed = std::exp(0.5 * *b * *b);
    }
    return summarize("novikov", samples, claimed);
}

ConditionReport kazamaki_estimate(const AdaptedDrift& d, const TimeGrid& grid, std::size_t paths,
                                  const RandomSource& source)
{
    require_paths(paths, "kazamaki_estimate");
    const auto samples = per_path(paths, grid, source, [&](const WienerPath& w) {
        return safe_exp(0.5 * ito_integral(drift_to_cm(d, w), w));
    });
    return summarize("kazamaki", samples, std::nullopt);
}

ConditionReport cond_nice(const AdaptedDrift& d, const TimeGrid& grid, double p,
                          std::size_t paths, const RandomSource& source, MatrixRoute route)
{
    require_paths(paths, "cond_nice");
    const double q = conjugate(p, "cond_nice");
    const auto samples = per_path(paths, grid, source, [&](const WienerPath& w) {
        const PathTerms t = terms(d, w, true, route);
        return safe_exp(q * (0.5 * t.hs_sq - t.delta));
    });
    ConditionReport r = summarize("nice", samples, std::nullopt);
    r.p = p;
    r.q = q;
    return r;
}

ConditionReport cond_holder(const AdaptedDrift& d, const TimeGrid& grid, double p,
                            std::size_t paths, const RandomSource& source, MatrixRoute route)
{
    require_paths(paths, "cond_holder");
    const double q = conjugate(p, "cond_holder");
    const auto samples = per_path(paths, grid, source, [&](const WienerPath& w) {
        const PathTerms t = terms(d, w, true, route);
        return safe_exp(q * t.hs_sq + 2.0 * q * q * t.h_sq);
    });
    ConditionReport r = summarize("holder", samples, std::nullopt);
    r.p = p;
    r.q = q;
    return r;
}

ConditionReport cond_bounded_grad(const AdaptedDrift& d, const TimeGrid& grid, std::size_t paths,
                                  const RandomSource& source, MatrixRoute route)
{
    require_paths(paths, "cond_bounded_grad");
    const auto samples = per_path(2 * paths, grid, source, [&](const WienerPath& w) {
        return std::sqrt(hs_norm_sq(malliavin_matrix(d, w, route)));
    });
    const double max_n = *std::max_element(samples.begin(), samples.begin() + paths);
    const double max_2n = *std::max_element(samples.begin(), samples.end());

    ConditionReport r;
    r.id = "bounded-grad";
    r.estimate = estimate_of(samples);
    r.tails = tail_stats(samples);
    r.details["max_N"] = max_n;
    r.details["max_2N"] = max_2n;
    r.details["q999"] = quantile(samples, 0.999);
    r.details["max_hs_sq"] = max_2n * max_2n;
    const bool stable = max_2n == 0.0 || (max_2n - max_n) <= 0.05 * max_2n;
    r.verdict = stable && std::isfinite(max_2n) ? ConditionVerdict::holds
                                                : ConditionVerdict::inconclusive;
    return r;
}

LipschitzVsHs lipschitz_vs_hs_report(const AdaptedDrift& d, const TimeGrid& grid,
                                     std::size_t paths, const RandomSource& source,
                                     MatrixRoute route)
{
    if (paths < 1) {
        throw std::invalid_argument("lipschitz_vs_hs_report: need at least one path");
    }
    std::vector<double> lipschitz(paths);
    std::vector<double> row_h(paths);
    std::vector<double> hs(paths);
    parallel_for(paths, [&](std::size_t k) {
        const MalliavinMatrix m = malliavin_matrix(d, sample_path(grid, source.path(k)), route);
        lipschitz[k] = row_lipschitz_sup(m);
        row_h[k] = row_h_norm_sup(m);
        hs[k] = std::sqrt(hs_norm_sq(m));
    });
    LipschitzVsHs r;
    r.row_lipschitz_sup = *std::max_element(lipschitz.begin(), lipschitz.end());
    r.row_h_norm_sup = *std::max_element(row_h.begin(), row_h.end());
    r.hs_norm = estimate_of(hs);
    r.hs_norm_max = *std::max_element(hs.begin(), hs.end());
    return r;
}

ConvexInterpolation convex_interp_check(const DriftPtr& d, const TimeGrid& grid, double tau,
                                        double kappa, std::size_t alpha_steps, std::size_t paths,
                                        const RandomSource& source, std::size_t inner_paths)
{
    if (!(kappa >= 0.0 && kappa <= tau)) {
        throw std::invalid_argument("convex_interp_check: need 0 <= kappa <= tau");
    }
    if (alpha_steps < 2) {
        throw std::invalid_argument("convex_interp_check: alpha_steps must be >= 2");
    }
    require_paths(paths, "convex_interp_check");

    const RandomSource aux = source.split(0x6d65686c6572ULL);
    const RandomSource outer = source.split(0x6f75746572ULL);
    const auto u_tau = mehler_smooth(d, tau, inner_paths, aux);
    const auto u_kappa = mehler_smooth(d, kappa, inner_paths, aux);
    const double dt = grid.dt();

    std::vector<double> lhs(paths);
    std::vector<double> rhs(paths);
    parallel_for(paths, [&](std::size_t k) {
        const WienerPath w = sample_path(grid, outer.path(k));
        const InversionResult v_tau = invert_explicit(*u_tau, w);
        const InversionResult v_kappa = invert_explicit(*u_kappa, w);
        lhs[k] = h_distance(v_tau.inverse_drift, v_kappa.inverse_drift);

        const std::vector<double> a = u_tau->eval_all(w);
        const std::vector<double> b = u_kappa->eval_all(w);
        const Matrix ka = malliavin_matrix(*u_tau, w).entries;
        const Matrix kb = malliavin_matrix(*u_kappa, w).entries;
        double gap_sq = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            gap_sq += (a[i] - b[i]) * (a[i] - b[i]) * dt;
        }
        double segment = 0.0;
        std::vector<double> mixed(a.size());
        for (std::size_t s = 0; s < alpha_steps; ++s) {
            const double alpha = (static_cast<double>(s) + 0.5) / static_cast<double>(alpha_steps);
            for (std::size_t i = 0; i < a.size(); ++i) {
                mixed[i] = alpha * a[i] + (1.0 - alpha) * b[i];
            }
            const double hs = (alpha * ka + (1.0 - alpha) * kb).squaredNorm() * dt * dt;
            const GirsanovWeight g = girsanov_weight(CameronMartinVector(grid, mixed), w);
            segment += std::exp(0.5 * (hs + 1.0) + g.log_rho);
        }
        rhs[k] = std::sqrt(gap_sq) * segment / static_cast<double>(alpha_steps);
    });
    return {estimate_of(lhs), estimate_of(rhs)};
}

} // namespace wienerlab
