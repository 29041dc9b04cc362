#pragma once

#include <cstddef>
#include <span>

namespace wienerlab {

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0; ///< sample standard deviation / sqrt(count)
    std::size_t count = 0;
};

/// Mergeable running moments (count, mean, centered sum of squares).
/// Merging disjoint partials reproduces the estimate over their union.
class MomentAccumulator {
public:
    void add(double x) noexcept;
    void merge(const MomentAccumulator& other) noexcept;

    std::size_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    /// Unbiased sample variance; 0 when count < 2.
    double variance() const noexcept;

    MCEstimate estimate() const noexcept;

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

MCEstimate estimate_of(std::span<const double> samples) noexcept;

/// Heavy-tail diagnostics for estimates of positive moments.
struct TailStats {
    double max_sample = 0.0;
    /// Share of the total sample mass carried by the largest 1% of samples
    /// (at least one sample). 0 when the total is not positive.
    double top1_share = 0.0;
};

TailStats tail_stats(std::span<const double> samples);

/// Empirical q-quantile (nearest rank), q in [0, 1].
double quantile(std::span<const double> samples, double q);

/// sqrt(a.std_error^2 + b.std_error^2)
double combined_stderr(const MCEstimate& a, const MCEstimate& b) noexcept;

} // namespace wienerlab
