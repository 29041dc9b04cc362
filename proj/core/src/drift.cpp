#include "wienerlab/drift.hpp"

#include <stdexcept>
#include <string>

namespace wienerlab {

std::vector<double> AdaptedDrift::eval_all(const WienerPath& w) const
{
    std::vector<double> out(w.steps());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = eval(w, i);
    }
    return out;
}

std::optional<Matrix> AdaptedDrift::kernel(const WienerPath&) const
{
    return std::nullopt;
}

double eval_drift(const AdaptedDrift& d, const WienerPath& w, std::size_t i)
{
    if (i >= w.steps()) {
        throw std::invalid_argument("eval_drift: step index " + std::to_string(i) +
                                    " out of range for " + std::to_string(w.steps()) + " steps");
    }
    return d.eval(w, i);
}

CameronMartinVector drift_to_cm(const AdaptedDrift& d, const WienerPath& w)
{
    return CameronMartinVector(w.grid(), d.eval_all(w));
}

} // namespace wienerlab
