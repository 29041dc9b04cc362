#include "wienerlab/harness/checks.hpp"

#include <wienerlab/conditions.hpp>
#include <wienerlab/drifts.hpp>
#include <wienerlab/girsanov.hpp>
#include <wienerlab/inversion.hpp>
#include <wienerlab/lsi.hpp>
#include <wienerlab/malliavin.hpp>
#include <wienerlab/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace wienerlab::harness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    return h;
}

// Each check draws from its own stream so adding or reordering checks does
// not change the numbers of the others.
RandomSource source_for(const CheckContext& ctx, const std::string& id)
{
    return RandomSource{ctx.seed, 0}.split(fnv1a(id));
}

MatrixRoute route_of(const CheckContext& ctx)
{
    return ctx.option("finite_difference", 0.0) != 0.0 ? MatrixRoute::finite_difference
                                                        : MatrixRoute::automatic;
}

CheckResult row(const std::string& id)
{
    CheckResult r;
    r.check_id = id;
    return r;
}

CheckResult threshold_row(const std::string& id, double observed, double threshold)
{
    CheckResult r = row(id);
    r.observed = observed;
    r.threshold = threshold;
    r.status = compare(observed, threshold);
    return r;
}

// Largest value of a per-path statistic over the pathwise battery.
double max_over_paths(const CheckContext& ctx, const std::string& id,
                      const std::function<double(const WienerPath&)>& stat)
{
    const std::size_t paths = ctx.pathwise_paths();
    const RandomSource source = source_for(ctx, id);
    std::vector<double> values(paths);
    parallel_for(paths, [&](std::size_t k) {
        values[k] = stat(sample_path(ctx.grid, source.path(k)));
    });
    double worst = 0.0;
    for (double v : values) {
        worst = std::isnan(v) ? kInf : std::max(worst, v);
    }
    return worst;
}

std::vector<CheckResult> check_det2(const CheckContext& ctx)
{
    const AdaptedDrift& d = *ctx.drift;
    const MatrixRoute route = route_of(ctx);
    const double worst = max_over_paths(ctx, "det2", [&](const WienerPath& w) {
        return std::abs(det2(malliavin_matrix(d, w, route)) - 1.0);
    });
    return {threshold_row("det2", worst, ctx.tolerance("det2", 1e-8))};
}

std::vector<CheckResult> check_adaptedness(const CheckContext& ctx)
{
    const AdaptedDrift& d = *ctx.drift;
    const double worst = max_over_paths(ctx, "adaptedness", [&](const WienerPath& w) {
        return adaptedness_defect(malliavin_matrix_fd(d, w));
    });
    return {threshold_row("adaptedness", worst, ctx.tolerance("adaptedness", 1e-8))};
}

std::vector<CheckResult> check_carleman(const CheckContext& ctx)
{
    const AdaptedDrift& d = *ctx.drift;
    const MatrixRoute route = route_of(ctx);
    const std::size_t paths = ctx.pathwise_paths();
    const RandomSource source = source_for(ctx, "carleman");
    std::vector<double> ratio(paths);
    std::vector<int> violated(paths);
    parallel_for(paths, [&](std::size_t k) {
        const MalliavinMatrix m = malliavin_matrix(d, sample_path(ctx.grid, source.path(k)), route);
        const CarlemanResult c = carleman_check(m.operator_matrix());
        ratio[k] = c.lhs / c.rhs;
        violated[k] = c.ok ? 0 : 1;
    });
    CheckResult r = threshold_row(
        "carleman", static_cast<double>(std::count(violated.begin(), violated.end(), 1)),
        ctx.tolerance("carleman", 0.0));
    r.estimate = *std::max_element(ratio.begin(), ratio.end());
    r.note = "observed = number of violations; estimate = largest lhs/rhs";
    return {r};
}

std::vector<CheckResult> check_hs_norm(const CheckContext& ctx)
{
    const AdaptedDrift& d = *ctx.drift;
    const MatrixRoute route = route_of(ctx);
    const std::size_t paths = ctx.pathwise_paths();
    const RandomSource source = source_for(ctx, "hs-norm");
    std::vector<double> hs(paths);
    parallel_for(paths, [&](std::size_t k) {
        hs[k] = hs_norm_sq(malliavin_matrix(d, sample_path(ctx.grid, source.path(k)), route));
    });
    CheckResult r = row("hs-norm");
    const MCEstimate e = estimate_of(hs);
    r.estimate = e.mean;
    r.std_error = e.std_error;
    r.observed = *std::max_element(hs.begin(), hs.end());
    r.note = "estimate = mean ||grad u||_2^2; observed = sample max";
    return {r};
}

CheckResult mc_comparison(const std::string& id, const EstimatePair& p, double z)
{
    CheckResult r = threshold_row(id, std::abs(p.lhs.mean - p.rhs.mean),
                                  z * combined_stderr(p.lhs, p.rhs));
    r.estimate = p.lhs.mean;
    r.std_error = p.lhs.std_error;
    return r;
}

std::vector<CheckResult> check_normalization(const CheckContext& ctx)
{
    const MomentReport m =
        expect_rho(*ctx.drift, ctx.grid, ctx.paths, source_for(ctx, "normalization"));
    CheckResult r = threshold_row("normalization", std::abs(m.estimate.mean - 1.0),
                                  ctx.z() * m.estimate.std_error);
    r.estimate = m.estimate.mean;
    r.std_error = m.estimate.std_error;
    r.note = to_string(normalization_verdict(m.estimate, ctx.z()));
    return {r};
}

std::vector<CheckResult> check_entropy(const CheckContext& ctx)
{
    const EstimatePair p = entropy_identity_check(*ctx.drift, ctx.grid, ctx.paths,
                                                  source_for(ctx, "entropy-identity"));
    return {mc_comparison("entropy-identity", p, ctx.z())};
}

std::vector<CheckResult> check_change_of_variables(const CheckContext& ctx)
{
    const std::size_t last = ctx.grid.steps();
    const PathFunctional f = [last](const WienerPath& w) { return std::cos(w.value(last)); };
    const EstimatePair p = change_of_var_check(*ctx.drift, f, ctx.grid, ctx.paths,
                                               source_for(ctx, "change-of-variables"));
    CheckResult r = mc_comparison("change-of-variables", p, ctx.z());
    r.note = "f(w) = cos(W(1))";
    return {r};
}

std::vector<CheckResult> check_roundtrip(const CheckContext& ctx)
{
    const AdaptedDrift& d = *ctx.drift;
    const double worst = max_over_paths(ctx, "roundtrip", [&](const WienerPath& w) {
        const RoundtripResiduals r = roundtrip_residuals(d, w);
        return std::max(r.left, r.right);
    });
    CheckResult r = threshold_row("roundtrip", worst, ctx.tolerance("roundtrip", 1e-10));
    if (!d.smooth_in_path()) {
        r.note = "discrete exactness only; says nothing about the continuum map";
    }
    return {r};
}

std::vector<CheckResult> check_inverse_drift(const CheckContext& ctx)
{
    const AdaptedDrift& d = *ctx.drift;
    const double worst = max_over_paths(ctx, "inverse-drift", [&](const WienerPath& w) {
        const InverseDriftResiduals r = inverse_drift_identities(d, w);
        return std::max(r.v_plus_u_of_v, r.u_plus_v_of_u);
    });
    return {threshold_row("inverse-drift", worst, ctx.tolerance("inverse-drift", 1e-10))};
}

std::vector<CheckResult> check_rho_identity(const CheckContext& ctx)
{
    const AdaptedDrift& d = *ctx.drift;
    const double worst = max_over_paths(ctx, "rho-identity", [&](const WienerPath& w) {
        return rho_inverse_identity_check(d, w);
    });
    return {threshold_row("rho-identity", worst, ctx.tolerance("rho-identity", 1e-8))};
}

std::vector<CheckResult> check_picard(const CheckContext& ctx)
{
    const AdaptedDrift& d = *ctx.drift;
    const auto max_iter = static_cast<std::size_t>(ctx.option("max_iter", 50.0));
    const double tol = ctx.option("picard_tol", 1e-12);
    const double worst = max_over_paths(ctx, "picard", [&](const WienerPath& y) {
        const InversionResult p = invert_picard(d, y, max_iter, tol);
        if (!p.converged) {
            return kInf;
        }
        return sup_distance(p.inverse, invert_explicit(d, y).inverse);
    });
    CheckResult r = threshold_row("picard", worst, ctx.tolerance("picard", 1e-8));
    r.note = "observed = sup distance to forward substitution; inf when Picard did not converge";
    return {r};
}

std::vector<CheckResult> check_cross_resolution(const CheckContext& ctx)
{
    const AdaptedDrift& d = *ctx.drift;
    const std::size_t n = ctx.grid.steps();
    const std::vector<std::size_t> levels{n / 8, n / 4, n / 2, n};
    const std::size_t paths = ctx.pathwise_paths();
    const RandomSource source = source_for(ctx, "cross-resolution");
    std::vector<double> finest(paths);
    std::vector<int> not_decreasing(paths);
    parallel_for(paths, [&](std::size_t k) {
        const auto e = cross_resolution_error(d, sample_path(ctx.grid, source.path(k)), levels);
        finest[k] = e.back();
        const bool negligible = e.front() <= 1e-14 && e.back() <= 1e-14;
        not_decreasing[k] = !negligible && !(e.back() < e.front());
    });
    const double share = static_cast<double>(std::count(not_decreasing.begin(),
                                                        not_decreasing.end(), 1)) /
                         static_cast<double>(paths);
    const MCEstimate e = estimate_of(finest);
    CheckResult r;
    if (d.smooth_in_path()) {
        r = threshold_row("cross-resolution", share, ctx.tolerance("cross-resolution", 0.1));
    } else {
        r = row("cross-resolution");
        r.observed = share;
        r.note = "informational: continuum invertibility is not decidable at finite n";
    }
    r.estimate = e.mean;
    r.std_error = e.std_error;
    if (r.note.empty()) {
        r.note = "observed = share of paths whose error does not decrease from n/8 to n";
    }
    return {r};
}

std::vector<GluePiece> glue_pieces(const AdaptedDrift& d, const DriftPtr& ptr,
                                   const TimeGrid& grid)
{
    const auto& spec = d.spec();
    if (spec && spec->type == "piecewise") {
        const double time = spec->params.count("time") ? spec->params.at("time") : 0.5;
        const DriftPtr first = make_builtin(spec->inner.at(0));
        const DriftPtr second = make_builtin(spec->inner.at(1));
        const auto p = static_cast<std::size_t>(
            std::ceil(time * static_cast<double>(grid.steps()) - 1e-9));
        return {
            {[p](const WienerPath& v) { return v.value(p) >= 0.0; },
             make_piecewise(time, first, second, PiecewiseBranch::first)},
            {[p](const WienerPath& v) { return v.value(p) < 0.0; },
             make_piecewise(time, first, second, PiecewiseBranch::second)},
        };
    }
    const std::size_t half = grid.steps() / 2;
    return {
        {[half](const WienerPath& v) { return v.value(half) >= 0.0; }, ptr},
        {[half](const WienerPath& v) { return v.value(half) < 0.0; }, ptr},
    };
}

std::vector<CheckResult> check_localization(const CheckContext& ctx)
{
    const AdaptedDrift& d = *ctx.drift;
    const double level_m = ctx.option("level_m", 1.0);
    const double level_n = ctx.option("level_n", 4.0);
    const double tol = ctx.tolerance("localization", 1e-10);

    const double stopped = max_over_paths(ctx, "localization:stopped", [&](const WienerPath& w) {
        return stopped_consistency(ctx.drift, level_m, level_n, w).distance;
    });
    const std::vector<GluePiece> pieces = glue_pieces(d, ctx.drift, ctx.grid);
    const double glued = max_over_paths(ctx, "localization:glue", [&](const WienerPath& y) {
        try {
            return sup_distance(piecewise_glue(pieces, y).inverse, invert_explicit(d, y).inverse);
        } catch (const CoverageViolation&) {
            return kInf;
        } catch (const InconsistentPieces&) {
            return kInf;
        }
    });
    CheckResult a = threshold_row("localization:stopped", stopped, tol);
    a.note = "levels " + std::to_string(level_m) + " < " + std::to_string(level_n);
    CheckResult b = threshold_row("localization:glue", glued, tol);
    b.note = "two-piece split of the pre-image; distance to the global inverse";
    return {a, b};
}

std::vector<CheckResult> check_mehler(const CheckContext& ctx)
{
    const auto inner = static_cast<std::size_t>(ctx.option("inner_paths", 64.0));
    const RandomSource source = source_for(ctx, "mehler");
    const RandomSource aux = source.split(1);
    const std::size_t paths = std::min<std::size_t>(ctx.pathwise_paths(), 20);
    const std::vector<double> taus{0.5, 0.1, 0.01};
    std::vector<double> distance;
    for (double tau : taus) {
        const auto smoothed = mehler_smooth(ctx.drift, tau, inner, aux);
        std::vector<double> per_path(paths);
        parallel_for(paths, [&](std::size_t k) {
            const WienerPath w = sample_path(ctx.grid, source.path(k));
            per_path[k] = h_distance(drift_to_cm(*smoothed, w), drift_to_cm(*ctx.drift, w));
        });
        distance.push_back(estimate_of(per_path).mean);
    }
    double violations = 0.0;
    for (std::size_t k = 1; k < distance.size(); ++k) {
        if (!(distance[k] < distance[k - 1]) && distance[k - 1] > 1e-14) {
            violations += 1.0;
        }
    }
    CheckResult r = threshold_row("mehler", violations, ctx.tolerance("mehler", 0.0));
    r.estimate = distance.back();
    r.N = paths;
    r.note = "observed = monotonicity violations of |u_tau - u|_H over tau = 0.5, 0.1, 0.01";
    return {r};
}

CheckResult condition_row(const ConditionReport& c, double z)
{
    CheckResult r = row(c.id);
    r.estimate = c.estimate.mean;
    r.std_error = c.estimate.std_error;
    r.observed = c.estimate.mean;
    if (c.claimed_bound) {
        r.threshold = *c.claimed_bound + z * c.estimate.std_error;
    }
    switch (c.verdict) {
    case ConditionVerdict::holds:
        r.status = CheckStatus::pass;
        break;
    case ConditionVerdict::fails:
        r.status = CheckStatus::fail;
        break;
    case ConditionVerdict::inconclusive:
        r.status = CheckStatus::info;
        break;
    }
    r.note = to_string(c.verdict);
    return r;
}

std::vector<CheckResult> check_condition(const std::string& id, const CheckContext& ctx)
{
    const AdaptedDrift& d = *ctx.drift;
    const RandomSource source = source_for(ctx, id);
    const MatrixRoute route = route_of(ctx);
    const double p = ctx.option("p", 2.0);
    ConditionReport c;
    if (id == "novikov") {
        c = novikov_estimate(d, ctx.grid, ctx.paths, source);
    } else if (id == "kazamaki") {
        c = kazamaki_estimate(d, ctx.grid, ctx.paths, source);
    } else if (id == "nice") {
        c = cond_nice(d, ctx.grid, p, ctx.paths, source, route);
    } else if (id == "holder") {
        c = cond_holder(d, ctx.grid, p, ctx.paths, source, route);
    } else {
        c = cond_bounded_grad(d, ctx.grid, ctx.paths, source, route);
    }
    return {condition_row(c, ctx.z())};
}

std::vector<CheckResult> check_lipschitz_vs_hs(const CheckContext& ctx)
{
    const LipschitzVsHs l = lipschitz_vs_hs_report(*ctx.drift, ctx.grid, ctx.pathwise_paths(),
                                                   source_for(ctx, "lipschitz-vs-hs"),
                                                   route_of(ctx));
    CheckResult a = row("lipschitz-vs-hs:row-sup");
    a.estimate = l.row_lipschitz_sup;
    a.observed = l.row_h_norm_sup;
    a.note = "estimate = sup-norm Lipschitz proxy of the density rows; observed = largest row H-norm";
    CheckResult b = row("lipschitz-vs-hs:hs");
    b.estimate = l.hs_norm.mean;
    b.std_error = l.hs_norm.std_error;
    b.observed = l.hs_norm_max;
    b.note = "||grad u||_2: mean and sample max";
    return {a, b};
}

std::vector<CheckResult> check_convex_interp(const CheckContext& ctx)
{
    const double tau = ctx.option("tau", 0.1);
    const double kappa = ctx.option("kappa", 0.01);
    const auto steps = static_cast<std::size_t>(ctx.option("alpha_steps", 8.0));
    const auto inner = static_cast<std::size_t>(ctx.option("inner_paths", 64.0));
    const auto paths = std::min<std::size_t>(
        ctx.paths, static_cast<std::size_t>(ctx.option("convex_paths", 1000.0)));
    const ConvexInterpolation c = convex_interp_check(ctx.drift, ctx.grid, tau, kappa, steps,
                                                      paths, source_for(ctx, "convex-interp"),
                                                      inner);
    CheckResult r = threshold_row("convex-interp", c.lhs.mean - c.rhs.mean,
                                  ctx.z() * combined_stderr(c.lhs, c.rhs));
    r.estimate = c.lhs.mean;
    r.std_error = c.lhs.std_error;
    r.N = paths;
    r.note = "observed = lhs - rhs";
    return {r};
}

std::vector<CheckResult> check_lsi(const CheckContext& ctx)
{
    const auto records = lsi_check(*ctx.drift, ctx.grid, cylindrical_battery(), ctx.paths,
                                   source_for(ctx, "lsi"), route_of(ctx));
    std::vector<CheckResult> out;
    for (const LsiRecord& rec : records) {
        const double lsi_se = std::hypot(rec.entropy.std_error, rec.K * rec.energy.std_error);
        CheckResult a = threshold_row("lsi:" + rec.function, rec.entropy.mean - rec.K * rec.energy.mean,
                                      ctx.z() * lsi_se);
        a.estimate = rec.entropy.mean;
        a.std_error = rec.entropy.std_error;
        a.note = "observed = entropy - K energy, K = " + std::to_string(rec.K);
        const double half = 0.5 * rec.K;
        const double p_se = std::hypot(rec.variance.std_error, half * rec.energy.std_error);
        CheckResult b = threshold_row("poincare:" + rec.function,
                                      rec.variance.mean - half * rec.energy.mean, ctx.z() * p_se);
        b.estimate = rec.poincare_ratio;
        b.note = "observed = variance - (K/2) energy; estimate = variance / energy";
        out.push_back(a);
        out.push_back(b);
    }
    return out;
}

using CheckFn = std::function<std::vector<CheckResult>(const CheckContext&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry()
{
    static const std::vector<std::pair<std::string, CheckFn>> checks{
        {"det2", check_det2},
        {"adaptedness", check_adaptedness},
        {"carleman", check_carleman},
        {"hs-norm", check_hs_norm},
        {"normalization", check_normalization},
        {"entropy-identity", check_entropy},
        {"change-of-variables", check_change_of_variables},
        {"roundtrip", check_roundtrip},
        {"inverse-drift", check_inverse_drift},
        {"rho-identity", check_rho_identity},
        {"picard", check_picard},
        {"cross-resolution", check_cross_resolution},
        {"localization", check_localization},
        {"mehler", check_mehler},
        {"novikov", [](const CheckContext& c) { return check_condition("novikov", c); }},
        {"kazamaki", [](const CheckContext& c) { return check_condition("kazamaki", c); }},
        {"nice", [](const CheckContext& c) { return check_condition("nice", c); }},
        {"holder", [](const CheckContext& c) { return check_condition("holder", c); }},
        {"bounded-grad", [](const CheckContext& c) { return check_condition("bounded-grad", c); }},
        {"lipschitz-vs-hs", check_lipschitz_vs_hs},
        {"convex-interp", check_convex_interp},
        {"lsi", check_lsi},
    };
    return checks;
}

} // namespace

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    case CheckStatus::info:
        break;
    }
    return "info";
}

CheckStatus compare(double observed, double threshold)
{
    return observed <= threshold ? CheckStatus::pass : CheckStatus::fail;
}

const std::vector<std::string>& supported_checks()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& entry : registry()) {
            out.push_back(entry.first);
        }
        return out;
    }();
    return ids;
}

std::optional<std::string> grid_problem(const std::string& check, std::size_t steps)
{
    if (check == "lsi" && steps % 4 != 0) {
        return "lsi evaluates W at 0.25, 0.5, 0.75 and 1, so n must be a multiple of 4";
    }
    if (check == "cross-resolution" && steps % 8 != 0) {
        return "cross-resolution coarsens to n/8, so n must be a multiple of 8";
    }
    return std::nullopt;
}

double CheckContext::option(const std::string& key, double fallback) const
{
    const auto it = options.find(key);
    return it == options.end() ? fallback : it->second;
}

double CheckContext::tolerance(const std::string& key, double fallback) const
{
    const auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
}

std::size_t CheckContext::pathwise_paths() const
{
    const auto cap = static_cast<std::size_t>(option("pathwise_paths", 100.0));
    return std::max<std::size_t>(1, std::min(paths, cap));
}

std::vector<CheckResult> run_check(const std::string& id, const CheckContext& ctx)
{
    for (const auto& [name, fn] : registry()) {
        if (name == id) {
            static const std::vector<std::string> pathwise{
                "det2",   "adaptedness",      "carleman",     "hs-norm",
                "roundtrip", "inverse-drift", "rho-identity", "picard",
                "cross-resolution", "localization", "lipschitz-vs-hs"};
            const bool is_pathwise =
                std::find(pathwise.begin(), pathwise.end(), id) != pathwise.end();
            std::vector<CheckResult> rows = fn(ctx);
            for (CheckResult& r : rows) {
                r.n = ctx.grid.steps();
                if (r.N == 0) {
                    r.N = is_pathwise ? ctx.pathwise_paths() : ctx.paths;
                }
                r.seed = ctx.seed;
            }
            return rows;
        }
    }
    throw std::invalid_argument("unknown check id: " + id);
}

} // namespace wienerlab::harness
