#include "orlicz/measure_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orlicz {

MeasureSpace::MeasureSpace(std::vector<long double> weights) : weights_{std::move(weights)} {
    if (weights_.empty())
        throw std::invalid_argument("MeasureSpace: need at least one atom");
    for (long double w : weights_)
        if (std::isnan(w) || !(w > 0))
            throw std::invalid_argument("MeasureSpace: atom weights must be positive");
}

std::shared_ptr<const MeasureSpace> MeasureSpace::counting(std::size_t n) {
    return make(std::vector<long double>(n, 1.0L));
}

std::shared_ptr<const MeasureSpace> MeasureSpace::make(std::vector<long double> weights) {
    return std::make_shared<const MeasureSpace>(std::move(weights));
}

bool MeasureSpace::is_infinite(std::size_t atom) const { return std::isinf(weights_.at(atom)); }

bool MeasureSpace::has_infinite_atom() const noexcept {
    return std::any_of(weights_.begin(), weights_.end(),
                       [](long double w) { return std::isinf(w); });
}

bool MeasureSpace::is_counting() const noexcept {
    return std::all_of(weights_.begin(), weights_.end(), [](long double w) { return w == 1.0L; });
}

SimpleFunction::SimpleFunction(std::shared_ptr<const MeasureSpace> space, std::vector<double> values)
    : space_{std::move(space)}, values_{std::move(values)} {
    if (!space_)
        throw std::invalid_argument("SimpleFunction: null space");
    if (values_.size() != space_->size())
        throw std::invalid_argument("SimpleFunction: one value per atom required");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("SimpleFunction: values must be finite");
}

SimpleFunction::SimpleFunction(std::shared_ptr<const MeasureSpace> space)
    : SimpleFunction(space, std::vector<double>(space ? space->size() : 0, 0.0)) {}

bool SimpleFunction::is_zero() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0; });
}

double SimpleFunction::sup_abs() const noexcept {
    double m = 0;
    for (double v : values_)
        m = std::max(m, std::abs(v));
    return m;
}

bool SimpleFunction::touches_infinite_atom() const noexcept {
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] != 0 && space_->is_infinite(i))
            return true;
    return false;
}

SimpleFunction SimpleFunction::abs() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](double v) { return std::abs(v); });
    return {space_, std::move(out)};
}

SimpleFunction SimpleFunction::scaled(double factor) const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [factor](double v) { return factor * v; });
    return {space_, std::move(out)};
}

void require_same_space(const SimpleFunction &x, const SimpleFunction &y) {
    if (x.space() != y.space())
        throw ContractError("simple functions live on different measure spaces");
}

SimpleFunction operator+(const SimpleFunction &x, const SimpleFunction &y) {
    require_same_space(x, y);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = x[i] + y[i];
    return {x.space(), std::move(out)};
}

SimpleFunction operator-(const SimpleFunction &x, const SimpleFunction &y) {
    require_same_space(x, y);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = x[i] - y[i];
    return {x.space(), std::move(out)};
}

bool operator==(const SimpleFunction &x, const SimpleFunction &y) {
    return x.space() == y.space() && std::equal(x.values().begin(), x.values().end(),
                                                y.values().begin(), y.values().end());
}

ExtendedReal modular(const OrliczFunction &phi, const SimpleFunction &x) {
    const auto &space = *x.space();
    long double sum = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0)
            continue;
        const long double value = phi.wide(x[i]);
        if (value == 0)
            continue;
        if (space.is_infinite(i))
            return ExtendedReal::infinity();
        sum += space.weight(i) * value;
    }
    const auto as_double = static_cast<double>(sum);
    return std::isfinite(as_double) ? ExtendedReal{as_double} : ExtendedReal::infinity();
}

bool leq(const SimpleFunction &x, const SimpleFunction &y) {
    require_same_space(x, y);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > y[i])
            return false;
    return true;
}

SimpleFunction sup(const SimpleFunction &x, const SimpleFunction &y) {
    require_same_space(x, y);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::max(x[i], y[i]);
    return {x.space(), std::move(out)};
}

SimpleFunction dominated_difference(const SimpleFunction &x, const SimpleFunction &y) {
    if (!leq(x, y))
        throw ContractError("dominated_difference: x is not dominated by y");
    return y - x;
}

OrderOps order_ops(const SimpleFunction &x, const SimpleFunction &y) {
    const bool dominated = leq(x, y);
    OrderOps ops{dominated, sup(x, y), std::nullopt};
    if (dominated)
        ops.diff_if_dominated = y - x;
    return ops;
}

namespace {

std::vector<std::size_t> finite_atoms(const MeasureSpace &space) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < space.size(); ++i)
        if (!space.is_infinite(i))
            out.push_back(i);
    if (out.empty())
        throw ContractError("measure space has no finite atom to sample on");
    return out;
}

} // namespace

SimpleFunction random_simple_function(const std::shared_ptr<const MeasureSpace> &space,
                                      std::mt19937_64 &rng, double max_value, double sparsity) {
    const auto atoms = finite_atoms(*space);
    std::uniform_real_distribution<double> value{-max_value, max_value};
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    std::vector<double> values(space->size(), 0.0);
    bool nonzero = false;
    for (std::size_t i : atoms) {
        const double draw = value(rng);
        if (unit(rng) >= sparsity) {
            values[i] = draw;
            nonzero = nonzero || draw != 0;
        }
    }
    if (!nonzero)
        values[atoms[std::uniform_int_distribution<std::size_t>{0, atoms.size() - 1}(rng)]] =
            max_value / 2;
    return {space, std::move(values)};
}

DominatedPair dominated_pair_sample(const std::shared_ptr<const MeasureSpace> &space,
                                    std::mt19937_64 &rng, const PairSampling &options) {
    SimpleFunction y = random_simple_function(space, rng, options.max_value, options.sparsity).abs();
    std::vector<double> x(space->size(), 0.0);
    switch (options.mode) {
    case DominationMode::Zero:
        break;
    case DominationMode::Half:
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = y[i] / 2;
        break;
    case DominationMode::Random: {
        std::uniform_real_distribution<double> unit{0.0, 1.0};
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = y[i] * unit(rng);
        double gap = 0;
        std::size_t widest = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            gap = std::max(gap, y[i] - x[i]);
            if (y[i] > y[widest])
                widest = i;
        }
        if (gap < options.min_gap * y.sup_abs())
            x[widest] = 0;
        break;
    }
    }
    return {SimpleFunction{space, std::move(x)}, std::move(y)};
}

} // namespace orlicz
