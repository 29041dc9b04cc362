#include "wienerlab/drifts.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace wienerlab {

namespace {

std::string format_params(const std::string& tag,
                          std::initializer_list<std::pair<const char*, double>> params)
{
    std::ostringstream os;
    os << tag << '(';
    bool first = true;
    for (const auto& [key, value] : params) {
        os << (first ? "" : ",") << key << '=' << value;
        first = false;
    }
    os << ')';
    return os.str();
}

// C^1 quadratic ramp from 1 at s = 0 down to 0 at s = 1, flat at both ends.
double ramp(double s) noexcept
{
    if (s <= 0.0) {
        return 1.0;
    }
    if (s >= 1.0) {
        return 0.0;
    }
    if (s <= 0.5) {
        return 1.0 - 2.0 * s * s;
    }
    return 2.0 * (1.0 - s) * (1.0 - s);
}

double ramp_derivative(double s) noexcept
{
    if (s <= 0.0 || s >= 1.0) {
        return 0.0;
    }
    return s <= 0.5 ? -4.0 * s : -4.0 * (1.0 - s);
}

Matrix lower_constant_rows(std::size_t n, const std::vector<double>& row_value)
{
    Matrix k = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row_value[i];
        }
    }
    return k;
}

class ZeroDrift final : public AdaptedDrift {
public:
    std::string name() const override { return "zero"; }
    double eval(const WienerPath&, std::size_t) const override { return 0.0; }
    std::optional<Matrix> kernel(const WienerPath& w) const override
    {
        const auto n = static_cast<Eigen::Index>(w.steps());
        return Matrix::Zero(n, n);
    }
    std::optional<double> density_bound() const override { return 0.0; }
};

class ConstantDrift final : public AdaptedDrift {
public:
    explicit ConstantDrift(double c) : c_(c) {}
    std::string name() const override { return format_params("constant-h", {{"c", c_}}); }
    double eval(const WienerPath&, std::size_t) const override { return c_; }
    std::optional<Matrix> kernel(const WienerPath& w) const override
    {
        const auto n = static_cast<Eigen::Index>(w.steps());
        return Matrix::Zero(n, n);
    }
    std::optional<double> density_bound() const override { return std::abs(c_); }

private:
    double c_;
};

class LinearVolterraDrift final : public AdaptedDrift {
public:
    LinearVolterraDrift(double a, double lambda) : a_(a), lambda_(lambda) {}

    std::string name() const override
    {
        return format_params("linear-volterra", {{"a", a_}, {"lambda", lambda_}});
    }

    double eval(const WienerPath& w, std::size_t i) const override
    {
        const double ti = w.grid().time(i);
        double sum = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            sum += std::exp(-lambda_ * (ti - w.grid().time(j))) * w.increment(j);
        }
        return a_ * sum;
    }

    std::vector<double> eval_all(const WienerPath& w) const override
    {
        const double decay = std::exp(-lambda_ * w.grid().dt());
        std::vector<double> out(w.steps());
        double state = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = a_ * state;
            state = decay * (state + w.increment(i));
        }
        return out;
    }

    std::optional<Matrix> kernel(const WienerPath& w) const override
    {
        const std::size_t n = w.steps();
        Matrix k = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    a_ * std::exp(-lambda_ * (w.grid().time(i) - w.grid().time(j)));
            }
        }
        return k;
    }

private:
    double a_;
    double lambda_;
};

class OuDrift final : public AdaptedDrift {
public:
    explicit OuDrift(double a) : a_(a) {}
    std::string name() const override { return format_params("ou", {{"a", a_}}); }
    double eval(const WienerPath& w, std::size_t i) const override { return a_ * w.value(i); }
    std::optional<Matrix> kernel(const WienerPath& w) const override
    {
        return lower_constant_rows(w.steps(), std::vector<double>(w.steps(), a_));
    }

private:
    double a_;
};

class BoundedSinDrift final : public AdaptedDrift {
public:
    explicit BoundedSinDrift(double b) : b_(b) {}
    std::string name() const override { return format_params("bounded-sin", {{"b", b_}}); }
    double eval(const WienerPath& w, std::size_t i) const override
    {
        return b_ * std::sin(w.value(i));
    }
    std::optional<Matrix> kernel(const WienerPath& w) const override
    {
        std::vector<double> rows(w.steps());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i] = b_ * std::cos(w.value(i));
        }
        return lower_constant_rows(w.steps(), rows);
    }
    std::optional<double> density_bound() const override { return std::abs(b_); }

private:
    double b_;
};

class SingularAlphaDrift final : public AdaptedDrift {
public:
    SingularAlphaDrift(double kappa, double alpha) : kappa_(kappa), alpha_(alpha) {}

    std::string name() const override
    {
        return format_params("singular-alpha", {{"kappa", kappa_}, {"alpha", alpha_}});
    }

    double eval(const WienerPath& w, std::size_t i) const override
    {
        return factor(w.grid(), i) * std::sin(w.value(i));
    }

    std::optional<Matrix> kernel(const WienerPath& w) const override
    {
        std::vector<double> rows(w.steps());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i] = factor(w.grid(), i) * std::cos(w.value(i));
        }
        return lower_constant_rows(w.steps(), rows);
    }

private:
    double factor(const TimeGrid& grid, std::size_t i) const
    {
        const double t = i == 0 ? grid.dt() : grid.time(i);
        return kappa_ * std::pow(t, -alpha_);
    }

    double kappa_;
    double alpha_;
};

class TsirelsonDrift final : public AdaptedDrift {
public:
    std::string name() const override { return "tsirelson"; }

    double eval(const WienerPath& w, std::size_t i) const override
    {
        const std::size_t n = w.steps();
        // levels[k] = grid index of 2^{-k}
        std::vector<std::size_t> levels;
        for (std::size_t m = n; m >= 1; m /= 2) {
            levels.push_back(m);
        }
        for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
            if (levels[k + 1] <= i && i < levels[k]) {
                if (k + 2 >= levels.size()) {
                    return 0.0;
                }
                const std::size_t a = levels[k + 1];
                const std::size_t b = levels[k + 2];
                const double x =
                    (w.value(a) - w.value(b)) / (w.grid().time(a) - w.grid().time(b));
                return x - std::floor(x);
            }
        }
        return 0.0;
    }

    std::optional<double> density_bound() const override { return 1.0; }
    bool smooth_in_path() const override { return false; }
};

class PiecewiseDrift final : public AdaptedDrift {
public:
    PiecewiseDrift(double switch_time, DriftPtr first, DriftPtr second, PiecewiseBranch branch)
        : switch_time_(switch_time), first_(std::move(first)), second_(std::move(second)),
          branch_(branch)
    {}

    std::string name() const override
    {
        std::ostringstream os;
        os << "piecewise(time=" << switch_time_ << "," << first_->name() << ","
           << second_->name() << ")";
        if (branch_ != PiecewiseBranch::dispatch) {
            os << (branch_ == PiecewiseBranch::first ? "[first]" : "[second]");
        }
        return os.str();
    }

    double eval(const WienerPath& w, std::size_t i) const override
    {
        return pick(w, i).eval(w, i);
    }

    std::vector<double> eval_all(const WienerPath& w) const override
    {
        std::vector<double> a = first_->eval_all(w);
        const std::size_t p = switch_index(w.grid());
        if (p < w.steps() && !use_first(w, p)) {
            const std::vector<double> b = second_->eval_all(w);
            std::copy(b.begin() + static_cast<std::ptrdiff_t>(p), b.end(),
                      a.begin() + static_cast<std::ptrdiff_t>(p));
        }
        return a;
    }

    std::optional<Matrix> kernel(const WienerPath& w) const override
    {
        auto a = first_->kernel(w);
        if (!a) {
            return std::nullopt;
        }
        const std::size_t p = switch_index(w.grid());
        if (p < w.steps() && !use_first(w, p)) {
            auto b = second_->kernel(w);
            if (!b) {
                return std::nullopt;
            }
            const auto rows = static_cast<Eigen::Index>(w.steps() - p);
            a->bottomRows(rows) = b->bottomRows(rows);
        }
        return a;
    }

    std::optional<double> density_bound() const override
    {
        auto a = first_->density_bound();
        auto b = second_->density_bound();
        if (a && b) {
            return std::max(*a, *b);
        }
        return std::nullopt;
    }

    bool smooth_in_path() const override
    {
        return first_->smooth_in_path() && second_->smooth_in_path();
    }

private:
    std::size_t switch_index(const TimeGrid& grid) const
    {
        const double pos = std::ceil(switch_time_ * static_cast<double>(grid.steps()) - 1e-9);
        return static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(grid.steps())));
    }

    bool use_first(const WienerPath& w, std::size_t p) const
    {
        switch (branch_) {
        case PiecewiseBranch::first:
            return true;
        case PiecewiseBranch::second:
            return false;
        case PiecewiseBranch::dispatch:
            break;
        }
        return w.value(p) >= 0.0;
    }

    const AdaptedDrift& pick(const WienerPath& w, std::size_t i) const
    {
        const std::size_t p = switch_index(w.grid());
        if (i < p || use_first(w, p)) {
            return *first_;
        }
        return *second_;
    }

    double switch_time_;
    DriftPtr first_;
    DriftPtr second_;
    PiecewiseBranch branch_;
};

class SmoothTruncatedDrift final : public AdaptedDrift {
public:
    SmoothTruncatedDrift(DriftPtr inner, double level) : inner_(std::move(inner)), level_(level) {}

    std::string name() const override
    {
        std::ostringstream os;
        os << "truncated(level=" << level_ << "," << inner_->name() << ")";
        return os.str();
    }

    double eval(const WienerPath& w, std::size_t i) const override
    {
        return apply(inner_->eval(w, i));
    }

    std::vector<double> eval_all(const WienerPath& w) const override
    {
        std::vector<double> out = inner_->eval_all(w);
        for (double& x : out) {
            x = apply(x);
        }
        return out;
    }

    std::optional<Matrix> kernel(const WienerPath& w) const override
    {
        auto k = inner_->kernel(w);
        if (!k) {
            return std::nullopt;
        }
        const std::vector<double> u = inner_->eval_all(w);
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double x = u[i] / level_;
            k->row(static_cast<Eigen::Index>(i)) *= smooth_bump(x) + x * smooth_bump_derivative(x);
        }
        return k;
    }

    std::optional<double> density_bound() const override { return 2.0 * level_; }
    bool smooth_in_path() const override { return inner_->smooth_in_path(); }

private:
    double apply(double u) const noexcept { return smooth_bump(u / level_) * u; }

    DriftPtr inner_;
    double level_;
};

class ThetaTruncatedDrift final : public AdaptedDrift {
public:
    ThetaTruncatedDrift(DriftPtr inner, double level) : inner_(std::move(inner)), level_(level) {}

    std::string name() const override
    {
        std::ostringstream os;
        os << "theta(level=" << level_ << "," << inner_->name() << ")";
        return os.str();
    }

    double eval(const WienerPath& w, std::size_t i) const override
    {
        const double u = inner_->eval(w, i);
        return u * ramp(u * u - level_);
    }

    std::optional<Matrix> kernel(const WienerPath& w) const override
    {
        auto k = inner_->kernel(w);
        if (!k) {
            return std::nullopt;
        }
        const std::vector<double> u = inner_->eval_all(w);
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double x = u[i] * u[i];
            k->row(static_cast<Eigen::Index>(i)) *=
                ramp(x - level_) + 2.0 * x * ramp_derivative(x - level_);
        }
        return k;
    }

    std::optional<double> density_bound() const override { return std::sqrt(level_ + 1.0); }
    bool smooth_in_path() const override { return inner_->smooth_in_path(); }

private:
    DriftPtr inner_;
    double level_;
};

struct ParamTable {
    const DriftSpec& spec;
    std::map<std::string, double> values;

    ParamTable(const DriftSpec& s, std::initializer_list<std::pair<const char*, double>> defaults)
        : spec(s)
    {
        for (const auto& [key, value] : defaults) {
            values[key] = value;
        }
        for (const auto& [key, value] : s.params) {
            if (!values.contains(key)) {
                std::string allowed;
                for (const auto& [k, v] : values) {
                    allowed += (allowed.empty() ? "" : ", ") + k;
                }
                throw std::invalid_argument("drift '" + s.type + "': unknown parameter '" + key +
                                            "' (allowed: " + (allowed.empty() ? "none" : allowed) +
                                            ")");
            }
            if (!std::isfinite(value)) {
                throw std::invalid_argument("drift '" + s.type + "': parameter '" + key +
                                            "' must be finite");
            }
            values[key] = value;
        }
    }

    double operator[](const std::string& key) const { return values.at(key); }
};

void require_inner(const DriftSpec& spec, std::size_t count)
{
    if (spec.inner.size() != count) {
        throw std::invalid_argument("drift '" + spec.type + "' needs exactly " +
                                    std::to_string(count) + " nested spec(s) in \"inner\", got " +
                                    std::to_string(spec.inner.size()));
    }
}

void require_no_inner(const DriftSpec& spec)
{
    if (!spec.inner.empty()) {
        throw std::invalid_argument("drift '" + spec.type + "' takes no nested specs");
    }
}

void require_positive_level(const std::string& what, double level)
{
    if (!(level > 0.0) || !std::isfinite(level)) {
        throw std::invalid_argument(what + ": level must be a positive finite number");
    }
}

template <class T, class... Args>
DriftPtr build(DriftSpec spec, Args&&... args)
{
    auto d = std::make_shared<T>(std::forward<Args>(args)...);
    d->set_spec(std::move(spec));
    return d;
}

} // namespace

double smooth_bump(double x) noexcept
{
    return ramp(std::abs(x) - 1.0);
}

double smooth_bump_derivative(double x) noexcept
{
    const double slope = ramp_derivative(std::abs(x) - 1.0);
    return x < 0.0 ? -slope : slope;
}

DriftPtr make_zero_drift() { return std::make_shared<ZeroDrift>(); }
DriftPtr make_constant_h(double c) { return std::make_shared<ConstantDrift>(c); }
DriftPtr make_linear_volterra(double a, double lambda)
{
    return std::make_shared<LinearVolterraDrift>(a, lambda);
}
DriftPtr make_ou(double a) { return std::make_shared<OuDrift>(a); }
DriftPtr make_bounded_sin(double b) { return std::make_shared<BoundedSinDrift>(b); }

DriftPtr make_singular_alpha(double kappa, double alpha)
{
    if (!(alpha >= 0.0 && alpha < 0.5)) {
        throw std::invalid_argument("singular-alpha: alpha must lie in [0, 0.5)");
    }
    return std::make_shared<SingularAlphaDrift>(kappa, alpha);
}

DriftPtr make_tsirelson() { return std::make_shared<TsirelsonDrift>(); }

DriftPtr make_piecewise(double switch_time, DriftPtr first, DriftPtr second,
                        PiecewiseBranch branch)
{
    if (!(switch_time >= 0.0 && switch_time <= 1.0)) {
        throw std::invalid_argument("piecewise: switch time must lie in [0, 1]");
    }
    return std::make_shared<PiecewiseDrift>(switch_time, std::move(first), std::move(second),
                                            branch);
}

DriftPtr truncate_smooth(DriftPtr inner, double level)
{
    require_positive_level("truncate_smooth", level);
    return std::make_shared<SmoothTruncatedDrift>(std::move(inner), level);
}

StoppedDrift::StoppedDrift(DriftPtr inner, double level) : inner_(std::move(inner)), level_(level)
{
    require_positive_level("stop_at_level", level);
}

std::string StoppedDrift::name() const
{
    std::ostringstream os;
    os << "stopped(level=" << level_ << "," << inner_->name() << ")";
    return os.str();
}

double StoppedDrift::eval(const WienerPath& w, std::size_t i) const
{
    const double dt = w.grid().dt();
    double energy = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
        const double u = inner_->eval(w, j);
        energy += u * u * dt;
        if (energy > level_) {
            return 0.0;
        }
    }
    return inner_->eval(w, i);
}

std::vector<double> StoppedDrift::eval_all(const WienerPath& w) const
{
    std::vector<double> out = inner_->eval_all(w);
    const double dt = w.grid().dt();
    double energy = 0.0;
    bool stopped = false;
    for (double& u : out) {
        if (stopped) {
            u = 0.0;
            continue;
        }
        energy += u * u * dt;
        stopped = energy > level_;
    }
    return out;
}

std::optional<Matrix> StoppedDrift::kernel(const WienerPath& w) const
{
    auto k = inner_->kernel(w);
    if (!k) {
        return std::nullopt;
    }
    const std::size_t stop = stopping_index(w);
    const auto n = static_cast<Eigen::Index>(w.steps());
    const auto s = static_cast<Eigen::Index>(stop);
    k->bottomRows(n - s).setZero();
    return k;
}

std::size_t StoppedDrift::stopping_index(const WienerPath& w) const
{
    const std::vector<double> u = inner_->eval_all(w);
    const double dt = w.grid().dt();
    double energy = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        energy += u[i] * u[i] * dt;
        if (energy > level_) {
            return i + 1;
        }
    }
    return u.size();
}

std::shared_ptr<const StoppedDrift> stop_at_level(DriftPtr inner, double level)
{
    return std::make_shared<StoppedDrift>(std::move(inner), level);
}

DriftPtr truncate_theta(DriftPtr inner, double level)
{
    require_positive_level("truncate_theta", level);
    return std::make_shared<ThetaTruncatedDrift>(std::move(inner), level);
}

std::size_t theta_exit_index(const AdaptedDrift& d, const WienerPath& w, double level)
{
    const std::vector<double> u = d.eval_all(w);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] * u[i] > level) {
            return i;
        }
    }
    return u.size();
}

const std::vector<std::string>& supported_drift_tags()
{
    static const std::vector<std::string> tags = {
        "zero",          "constant-h", "linear-volterra", "ou",      "bounded-sin",
        "singular-alpha", "tsirelson", "truncated",       "stopped", "piecewise"};
    return tags;
}

DriftPtr make_builtin(const DriftSpec& spec)
{
    const std::string& t = spec.type;
    if (t == "zero") {
        ParamTable p(spec, {});
        require_no_inner(spec);
        return build<ZeroDrift>(spec);
    }
    if (t == "constant-h") {
        ParamTable p(spec, {{"c", 1.0}});
        require_no_inner(spec);
        return build<ConstantDrift>(spec, p["c"]);
    }
    if (t == "linear-volterra") {
        ParamTable p(spec, {{"a", 1.0}, {"lambda", 1.0}});
        require_no_inner(spec);
        return build<LinearVolterraDrift>(spec, p["a"], p["lambda"]);
    }
    if (t == "ou") {
        ParamTable p(spec, {{"a", 1.0}});
        require_no_inner(spec);
        return build<OuDrift>(spec, p["a"]);
    }
    if (t == "bounded-sin") {
        ParamTable p(spec, {{"b", 1.0}});
        require_no_inner(spec);
        return build<BoundedSinDrift>(spec, p["b"]);
    }
    if (t == "singular-alpha") {
        ParamTable p(spec, {{"kappa", 1.0}, {"alpha", 0.4}});
        require_no_inner(spec);
        const double alpha = p["alpha"];
        if (!(alpha >= 0.0 && alpha < 0.5)) {
            throw std::invalid_argument("drift 'singular-alpha': alpha must lie in [0, 0.5), got " +
                                        std::to_string(alpha));
        }
        return build<SingularAlphaDrift>(spec, p["kappa"], alpha);
    }
    if (t == "tsirelson") {
        ParamTable p(spec, {});
        require_no_inner(spec);
        return build<TsirelsonDrift>(spec);
    }
    if (t == "truncated") {
        ParamTable p(spec, {{"level", 1.0}});
        require_inner(spec, 1);
        require_positive_level("drift 'truncated'", p["level"]);
        return build<SmoothTruncatedDrift>(spec, make_builtin(spec.inner[0]), p["level"]);
    }
    if (t == "stopped") {
        ParamTable p(spec, {{"level", 1.0}});
        require_inner(spec, 1);
        require_positive_level("drift 'stopped'", p["level"]);
        return build<StoppedDrift>(spec, make_builtin(spec.inner[0]), p["level"]);
    }
    if (t == "piecewise") {
        ParamTable p(spec, {{"time", 0.5}});
        require_inner(spec, 2);
        const double time = p["time"];
        if (!(time >= 0.0 && time <= 1.0)) {
            throw std::invalid_argument("drift 'piecewise': time must lie in [0, 1]");
        }
        return build<PiecewiseDrift>(spec, time, make_builtin(spec.inner[0]),
                                     make_builtin(spec.inner[1]), PiecewiseBranch::dispatch);
    }
    std::string tags;
    for (const auto& tag : supported_drift_tags()) {
        tags += (tags.empty() ? "" : ", ") + tag;
    }
    throw std::invalid_argument("unknown drift type '" + t + "'; supported: " + tags);
}

std::vector<DriftSpec> catalog_specs()
{
    const DriftSpec ou1{"ou", {{"a", 1.0}}, {}};
    return {
        {"zero", {}, {}},
        {"constant-h", {{"c", 1.0}}, {}},
        {"linear-volterra", {{"a", 1.0}, {"lambda", 2.0}}, {}},
        ou1,
        {"bounded-sin", {{"b", 1.0}}, {}},
        {"singular-alpha", {{"kappa", 1.0}, {"alpha", 0.4}}, {}},
        {"tsirelson", {}, {}},
        {"truncated", {{"level", 1.0}}, {ou1}},
        {"stopped", {{"level", 1.0}}, {ou1}},
        {"piecewise",
         {{"time", 0.5}},
         {DriftSpec{"ou", {{"a", 0.5}}, {}}, DriftSpec{"bounded-sin", {{"b", 1.0}}, {}}}},
    };
}

} // namespace wienerlab
