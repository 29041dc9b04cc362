#include "wienerlab/lsi.hpp"

#include "wienerlab/girsanov.hpp"
#include "wienerlab/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace wienerlab {

namespace {

double x_log_x(double x)
{
    return x > 0.0 ? x * std::log(x) : 0.0;
}

MCEstimate linearized(const std::vector<double>& a, const std::vector<double>& b, double cb,
                      double mean)
{
    MomentAccumulator z;
    for (std::size_t k = 0; k < a.size(); ++k) {
        z.add(a[k] + cb * b[k]);
    }
    MCEstimate e = z.estimate();
    e.mean = mean;
    return e;
}

} // namespace

CylindricalValue grad_cylindrical(const CylindricalFunction& f, const WienerPath& w)
{
    const std::size_t d = f.times.size();
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) {
        x[i] = w.value(w.grid().index_of(f.times[i]));
    }
    CylindricalValue out;
    out.value = f.phi(x);
    const std::vector<double> g = f.grad(x);
    if (g.size() != d) {
        throw std::invalid_argument("grad_cylindrical: gradient of " + f.name +
                                    " has the wrong dimension");
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            out.grad_h_norm_sq += g[i] * g[j] * std::min(f.times[i], f.times[j]);
        }
    }
    return out;
}

std::vector<LsiRecord> lsi_check(const AdaptedDrift& d, const TimeGrid& grid,
                                 const std::vector<CylindricalFunction>& functions,
                                 std::size_t paths, const RandomSource& source,
                                 MatrixRoute route)
{
    if (paths < 2) {
        throw std::invalid_argument("lsi_check: need at least 2 paths");
    }
    const std::size_t m = functions.size();
    std::vector<double> rho(paths);
    std::vector<double> hs(paths);
    // value and gradient norm per (function, path)
    std::vector<double> value(m * paths);
    std::vector<double> energy(m * paths);
    parallel_for(paths, [&](std::size_t k) {
        const WienerPath w = sample_path(grid, source.path(k));
        rho[k] = girsanov_weight(d, w).rho;
        hs[k] = hs_norm_sq(malliavin_matrix(d, w, route));
        for (std::size_t f = 0; f < m; ++f) {
            const CylindricalValue c = grad_cylindrical(functions[f], w);
            value[f * paths + k] = c.value;
            energy[f * paths + k] = c.grad_h_norm_sq;
        }
    });
    const double K = 2.0 * std::exp(1.0 + *std::max_element(hs.begin(), hs.end()));

    std::vector<LsiRecord> out;
    out.reserve(m);
    std::vector<double> a(paths), b(paths), c(paths), e(paths);
    for (std::size_t f = 0; f < m; ++f) {
        for (std::size_t k = 0; k < paths; ++k) {
            const double x = value[f * paths + k];
            a[k] = rho[k] * x_log_x(x * x);
            b[k] = rho[k] * x * x;
            c[k] = rho[k] * x;
            e[k] = rho[k] * energy[f * paths + k];
        }
        const double mean_b = estimate_of(b).mean;
        if (!(mean_b > 0.0)) {
            throw DegenerateFunction("lsi_check: E[f^2] is not positive for " +
                                     functions[f].name);
        }
        const double mean_a = estimate_of(a).mean;
        const double mean_c = estimate_of(c).mean;

        LsiRecord r;
        r.function = functions[f].name;
        r.K = K;
        // entropy = A - B log B, gradient (1, -(log B + 1))
        r.entropy = linearized(a, b, -(std::log(mean_b) + 1.0), mean_a - mean_b * std::log(mean_b));
        // variance = B - C^2, gradient in (B, C) is (1, -2C)
        r.variance = linearized(b, c, -2.0 * mean_c, mean_b - mean_c * mean_c);
        r.energy = estimate_of(e);
        r.entropy_ratio = r.energy.mean > 0.0 ? r.entropy.mean / r.energy.mean : 0.0;
        r.poincare_ratio = r.energy.mean > 0.0 ? r.variance.mean / r.energy.mean : 0.0;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CylindricalFunction> cylindrical_battery()
{
    using V = std::vector<double>;
    using S = std::span<const double>;
    std::vector<CylindricalFunction> fs;
    fs.push_back({"W(1)", {1.0}, [](S x) { return x[0]; }, [](S) { return V{1.0}; }});
    fs.push_back({"W(0.5)*W(1)", {0.5, 1.0}, [](S x) { return x[0] * x[1]; },
                  [](S x) { return V{x[1], x[0]}; }});
    fs.push_back({"1+W(0.5)^2", {0.5}, [](S x) { return 1.0 + x[0] * x[0]; },
                  [](S x) { return V{2.0 * x[0]}; }});
    fs.push_back({"sin(W(0.25))+cos(W(0.75))", {0.25, 0.75},
                  [](S x) { return std::sin(x[0]) + std::cos(x[1]); },
                  [](S x) { return V{std::cos(x[0]), -std::sin(x[1])}; }});
    fs.push_back({"exp(W(0.25)-W(1)/2)", {0.25, 1.0},
                  [](S x) { return std::exp(x[0] - 0.5 * x[1]); },
                  [](S x) {
                      const double v = std::exp(x[0] - 0.5 * x[1]);
                      return V{v, -0.5 * v};
                  }});
    return fs;
}

} // namespace wienerlab
