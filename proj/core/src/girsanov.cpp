#include "wienerlab/girsanov.hpp"

#include "wienerlab/inversion.hpp"
#include "wienerlab/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace wienerlab {

namespace {

// exp overflows double beyond this
constexpr double kMaxLog = 709.0;

void require_paths(std::size_t paths, const char* what)
{
    if (paths < 2) {
        throw std::invalid_argument(std::string(what) + ": need at least 2 paths");
    }
}

} // namespace

double ito_integral(const CameronMartinVector& u, const WienerPath& w)
{
    if (!(u.grid == w.grid())) {
        throw std::invalid_argument("ito_integral: integrand and path live on different grids");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < u.density.size(); ++i) {
        sum += u.density[i] * w.increment(i);
    }
    return sum;
}

GirsanovWeight girsanov_weight(const CameronMartinVector& u, const WienerPath& w)
{
    GirsanovWeight g;
    g.delta0_u = ito_integral(u, w);
    g.h_norm_sq = h_norm_sq(u);
    g.log_rho = -g.delta0_u - 0.5 * g.h_norm_sq;
    if (g.log_rho > kMaxLog) {
        g.overflow = true;
        g.rho = std::numeric_limits<double>::infinity();
    } else {
        g.rho = std::exp(g.log_rho);
    }
    return g;
}

GirsanovWeight girsanov_weight(const AdaptedDrift& d, const WienerPath& w)
{
    return girsanov_weight(drift_to_cm(d, w), w);
}

MomentReport expect_rho(const AdaptedDrift& d, const TimeGrid& grid, std::size_t paths,
                        const RandomSource& source)
{
    require_paths(paths, "expect_rho");
    std::vector<double> samples(paths);
    parallel_for(paths, [&](std::size_t k) {
        const WienerPath w = sample_path(grid, source.path(k));
        samples[k] = girsanov_weight(d, w).rho;
    });
    return {estimate_of(samples), tail_stats(samples)};
}

NormalizationVerdict normalization_verdict(const MCEstimate& e, double z)
{
    return e.mean < 1.0 - z * e.std_error ? NormalizationVerdict::below_one
                                          : NormalizationVerdict::consistent_with_one;
}

std::string to_string(NormalizationVerdict v)
{
    return v == NormalizationVerdict::below_one ? "below-one" : "consistent-with-one";
}

EstimatePair entropy_identity_check(const AdaptedDrift& d, const TimeGrid& grid,
                                    std::size_t paths, const RandomSource& source)
{
    require_paths(paths, "entropy_identity_check");
    std::vector<double> lhs(paths);
    std::vector<double> rhs(paths);
    parallel_for(paths, [&](std::size_t k) {
        const WienerPath w = sample_path(grid, source.path(k));
        const GirsanovWeight g = girsanov_weight(d, w);
        lhs[k] = g.rho * g.log_rho;
        rhs[k] = 0.5 * g.rho * g.h_norm_sq;
    });
    return {estimate_of(lhs), estimate_of(rhs)};
}

EstimatePair change_of_var_check(const AdaptedDrift& d, const PathFunctional& f,
                                 const TimeGrid& grid, std::size_t paths,
                                 const RandomSource& source)
{
    require_paths(paths, "change_of_var_check");
    std::vector<double> weighted(paths);
    std::vector<double> plain(paths);
    parallel_for(paths, [&](std::size_t k) {
        const WienerPath w = sample_path(grid, source.path(k));
        const GirsanovWeight g = girsanov_weight(d, w);
        weighted[k] = f(forward_map(d, w)) * g.rho;
        plain[k] = f(w);
    });
    return {estimate_of(weighted), estimate_of(plain)};
}

} // namespace wienerlab
