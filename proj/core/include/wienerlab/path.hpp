#pragma once

#include "wienerlab/grid.hpp"
#include "wienerlab/random.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace wienerlab {

/// Discretized Brownian (or shifted) path stored by its increments.
/// values()[i] = W(t_i) is the cumulative sum of increments()[0..i-1].
class WienerPath {
public:
    WienerPath(TimeGrid grid, std::vector<double> increments);

    /// All-zero path on the grid.
    explicit WienerPath(TimeGrid grid);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::size_t steps() const noexcept { return grid_.steps(); }

    std::span<const double> increments() const noexcept { return increments_; }
    std::span<const double> values() const noexcept { return values_; }
    double increment(std::size_t i) const noexcept { return increments_[i]; }
    double value(std::size_t i) const noexcept { return values_[i]; }

    /// Copy with increments()[j] replaced by increments()[j] + delta.
    WienerPath shifted(std::size_t j, double delta) const;

    /// Copy with every increment multiplied by factor.
    WienerPath scaled(double factor) const;

private:
    friend class PathBuilder;

    TimeGrid grid_;
    std::vector<double> increments_;
    std::vector<double> values_;
};

/// Fills a path one increment at a time. While step i is pending, only the
/// prefix increments()[0..i-1] and values()[0..i] of path() are meaningful,
/// which is all an adapted functional may read at step i.
class PathBuilder {
public:
    explicit PathBuilder(const TimeGrid& grid) : path_(grid) {}

    std::size_t filled() const noexcept { return filled_; }
    const WienerPath& path() const noexcept { return path_; }

    void push(double increment);

    /// Completed path; all values consistent. Requires filled() == steps.
    WienerPath finish() &&;

private:
    WienerPath path_;
    std::size_t filled_ = 0;
};

/// Element of the Cameron-Martin space: a density piecewise constant on
/// [t_i, t_{i+1}).
struct CameronMartinVector {
    TimeGrid grid;
    std::vector<double> density;

    CameronMartinVector(TimeGrid g, std::vector<double> d);
    explicit CameronMartinVector(TimeGrid g) : grid(g), density(g.steps(), 0.0) {}
};

WienerPath sample_path(const TimeGrid& grid, const RandomSource& source);

/// |h|_H^2 = sum of density^2 * dt.
double h_norm_sq(const CameronMartinVector& h);

/// H-norm of the difference of two vectors on the same grid.
double h_distance(const CameronMartinVector& a, const CameronMartinVector& b);

/// Left-endpoint cumulative integral h(t_i) = sum_{j<i} density_j * dt, n+1 values.
std::vector<double> cumulative_integral(const CameronMartinVector& h);

/// Sum of consecutive fine increments onto a coarser grid. coarse_steps must
/// divide the fine step count; throws std::invalid_argument otherwise.
WienerPath coarsen(const WienerPath& fine, std::size_t coarse_steps);

/// max_i |a(t_i) - b(t_i)| over the shared grid.
double sup_distance(const WienerPath& a, const WienerPath& b);

} // namespace wienerlab
