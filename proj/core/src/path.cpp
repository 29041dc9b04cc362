#include "wienerlab/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace wienerlab {

namespace {

std::vector<double> cumulate(std::span<const double> increments)
{
    std::vector<double> values(increments.size() + 1, 0.0);
    for (std::size_t i = 0; i < increments.size(); ++i) {
        values[i + 1] = values[i] + increments[i];
    }
    return values;
}

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* what)
{
    if (!(a == b)) {
        throw std::invalid_argument(std::string(what) + ": grid mismatch (" +
                                    std::to_string(a.steps()) + " vs " +
                                    std::to_string(b.steps()) + " steps)");
    }
}

} // namespace

WienerPath::WienerPath(TimeGrid grid, std::vector<double> increments)
    : grid_(std::move(grid)), increments_(std::move(increments))
{
    if (increments_.size() != grid_.steps()) {
        throw std::invalid_argument("WienerPath: expected " + std::to_string(grid_.steps()) +
                                    " increments, got " + std::to_string(increments_.size()));
    }
    values_ = cumulate(increments_);
}

WienerPath::WienerPath(TimeGrid grid)
    : grid_(std::move(grid)), increments_(grid_.steps(), 0.0), values_(grid_.steps() + 1, 0.0)
{}

WienerPath WienerPath::shifted(std::size_t j, double delta) const
{
    std::vector<double> inc = increments_;
    inc.at(j) += delta;
    return WienerPath(grid_, std::move(inc));
}

WienerPath WienerPath::scaled(double factor) const
{
    std::vector<double> inc = increments_;
    for (double& x : inc) {
        x *= factor;
    }
    return WienerPath(grid_, std::move(inc));
}

void PathBuilder::push(double increment)
{
    if (filled_ >= path_.steps()) {
        throw std::logic_error("PathBuilder: path already complete");
    }
    path_.increments_[filled_] = increment;
    path_.values_[filled_ + 1] = path_.values_[filled_] + increment;
    ++filled_;
}

WienerPath PathBuilder::finish() &&
{
    if (filled_ != path_.steps()) {
        throw std::logic_error("PathBuilder: path incomplete");
    }
    return std::move(path_);
}

CameronMartinVector::CameronMartinVector(TimeGrid g, std::vector<double> d)
    : grid(std::move(g)), density(std::move(d))
{
    if (density.size() != grid.steps()) {
        throw std::invalid_argument("CameronMartinVector: density length does not match grid");
    }
}

WienerPath sample_path(const TimeGrid& grid, const RandomSource& source)
{
    CounterRng rng(source);
    const double scale = std::sqrt(grid.dt());
    std::vector<double> inc(grid.steps());
    for (double& x : inc) {
        x = scale * rng.next_normal();
    }
    return WienerPath(grid, std::move(inc));
}

double h_norm_sq(const CameronMartinVector& h)
{
    double sum = 0.0;
    for (double x : h.density) {
        sum += x * x;
    }
    return sum * h.grid.dt();
}

double h_distance(const CameronMartinVector& a, const CameronMartinVector& b)
{
    require_same_grid(a.grid, b.grid, "h_distance");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.density.size(); ++i) {
        const double d = a.density[i] - b.density[i];
        sum += d * d;
    }
    return std::sqrt(sum * a.grid.dt());
}

std::vector<double> cumulative_integral(const CameronMartinVector& h)
{
    std::vector<double> out(h.density.size() + 1, 0.0);
    const double dt = h.grid.dt();
    for (std::size_t i = 0; i < h.density.size(); ++i) {
        out[i + 1] = out[i] + h.density[i] * dt;
    }
    return out;
}

WienerPath coarsen(const WienerPath& fine, std::size_t coarse_steps)
{
    const std::size_t n = fine.steps();
    if (coarse_steps == 0 || n % coarse_steps != 0) {
        throw std::invalid_argument("coarsen: " + std::to_string(coarse_steps) +
                                    " does not divide " + std::to_string(n));
    }
    const std::size_t ratio = n / coarse_steps;
    std::vector<double> inc(coarse_steps, 0.0);
    for (std::size_t i = 0; i < coarse_steps; ++i) {
        for (std::size_t k = 0; k < ratio; ++k) {
            inc[i] += fine.increment(i * ratio + k);
        }
    }
    return WienerPath(TimeGrid(coarse_steps), std::move(inc));
}

double sup_distance(const WienerPath& a, const WienerPath& b)
{
    require_same_grid(a.grid(), b.grid(), "sup_distance");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) {
        worst = std::max(worst, std::abs(a.value(i) - b.value(i)));
    }
    return worst;
}

} // namespace wienerlab
