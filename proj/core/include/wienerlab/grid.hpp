#pragma once

#include <cstddef>
#include <vector>

namespace wienerlab {

/// Uniform partition of [0, 1] into n steps.
class TimeGrid {
public:
    explicit TimeGrid(std::size_t steps);

    std::size_t steps() const noexcept { return steps_; }
    double dt() const noexcept { return dt_; }
    double time(std::size_t i) const noexcept { return times_[i]; }
    const std::vector<double>& times() const noexcept { return times_; }

    /// Grid index of t when t lies on the grid (within 1e-9 in index units).
    /// Throws std::invalid_argument otherwise.
    std::size_t index_of(double t) const;

    bool operator==(const TimeGrid& other) const noexcept { return steps_ == other.steps_; }

private:
    std::size_t steps_;
    double dt_;
    std::vector<double> times_;
};

/// Throws std::invalid_argument for n < 1.
TimeGrid make_grid(long long n);

} // namespace wienerlab
