#include "wienerlab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wienerlab {

TimeGrid::TimeGrid(std::size_t steps) : steps_(steps), dt_(0.0)
{
    if (steps == 0) {
        throw std::invalid_argument("time grid needs at least one step");
    }
    dt_ = 1.0 / static_cast<double>(steps);
    times_.resize(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        times_[i] = static_cast<double>(i) / static_cast<double>(steps);
    }
}

std::size_t TimeGrid::index_of(double t) const
{
    const double pos = t * static_cast<double>(steps_);
    const double nearest = std::round(pos);
    if (!(t >= 0.0 && t <= 1.0) || std::abs(pos - nearest) > 1e-9) {
        throw std::invalid_argument("time " + std::to_string(t) + " is not a point of the " +
                                    std::to_string(steps_) + "-step grid");
    }
    return static_cast<std::size_t>(nearest);
}

TimeGrid make_grid(long long n)
{
    if (n < 1) {
        throw std::invalid_argument("make_grid: step count must be >= 1, got " + std::to_string(n));
    }
    return TimeGrid(static_cast<std::size_t>(n));
}

} // namespace wienerlab
