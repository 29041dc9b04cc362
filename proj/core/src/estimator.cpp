#include "wienerlab/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wienerlab {

void MomentAccumulator::add(double x) noexcept
{
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

void MomentAccumulator::merge(const MomentAccumulator& other) noexcept
{
    if (other.count_ == 0) {
        return;
    }
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double n = na + nb;
    const double delta = other.mean_ - mean_;
    mean_ += delta * nb / n;
    m2_ += other.m2_ + delta * delta * na * nb / n;
    count_ += other.count_;
}

double MomentAccumulator::variance() const noexcept
{
    if (count_ < 2) {
        return 0.0;
    }
    return std::max(0.0, m2_ / static_cast<double>(count_ - 1));
}

MCEstimate MomentAccumulator::estimate() const noexcept
{
    MCEstimate e;
    e.mean = mean_;
    e.count = count_;
    e.std_error = count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
    return e;
}

MCEstimate estimate_of(std::span<const double> samples) noexcept
{
    MomentAccumulator acc;
    for (double x : samples) {
        acc.add(x);
    }
    return acc.estimate();
}

TailStats tail_stats(std::span<const double> samples)
{
    TailStats t;
    if (samples.empty()) {
        return t;
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    t.max_sample = sorted.front();
    const std::size_t top = std::max<std::size_t>(1, sorted.size() / 100);
    double total = 0.0;
    double head = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        total += sorted[i];
        if (i < top) {
            head += sorted[i];
        }
    }
    t.top1_share = total > 0.0 ? head / total : 0.0;
    return t;
}

double quantile(std::span<const double> samples, double q)
{
    if (samples.empty()) {
        throw std::invalid_argument("quantile of an empty sample");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double clamped = std::clamp(q, 0.0, 1.0);
    auto rank = static_cast<std::size_t>(std::ceil(clamped * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

double combined_stderr(const MCEstimate& a, const MCEstimate& b) noexcept
{
    return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

} // namespace wienerlab
