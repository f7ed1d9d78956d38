#pragma once

#include "orlicz/extended_real.hpp"
#include "orlicz/orlicz_function.hpp"

#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace orlicz {

/// Thrown when an operation is called outside its contract
/// (e.g. subtracting a non-dominated element).
class ContractError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// A purely atomic measure space. Atom weights are positive and may be +inf;
/// non-atomic parts are modelled by many small finite atoms. Weights are kept
/// in extended precision so atoms far below the double range can carry
/// modular mass.
class MeasureSpace {
  public:
    explicit MeasureSpace(std::vector<long double> weights);

    /// n atoms of measure one (counting measure).
    static std::shared_ptr<const MeasureSpace> counting(std::size_t n);
    static std::shared_ptr<const MeasureSpace> make(std::vector<long double> weights);

    std::size_t size() const noexcept { return weights_.size(); }
    long double weight(std::size_t atom) const { return weights_.at(atom); }
    bool is_infinite(std::size_t atom) const;
    std::span<const long double> weights() const noexcept { return weights_; }

    bool has_infinite_atom() const noexcept;
    /// Every atom has weight exactly one.
    bool is_counting() const noexcept;

  private:
    std::vector<long double> weights_;
};

/// A simple function: one finite real value per atom of a shared space.
class SimpleFunction {
  public:
    SimpleFunction(std::shared_ptr<const MeasureSpace> space, std::vector<double> values);
    /// The zero function.
    explicit SimpleFunction(std::shared_ptr<const MeasureSpace> space);

    const std::shared_ptr<const MeasureSpace> &space() const noexcept { return space_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t atom) const { return values_.at(atom); }
    std::size_t size() const noexcept { return values_.size(); }

    bool is_zero() const noexcept;
    /// Largest |value|.
    double sup_abs() const noexcept;
    /// Nonzero on some atom of infinite measure.
    bool touches_infinite_atom() const noexcept;

    SimpleFunction abs() const;
    SimpleFunction scaled(double factor) const;

    friend SimpleFunction operator+(const SimpleFunction &x, const SimpleFunction &y);
    friend SimpleFunction operator-(const SimpleFunction &x, const SimpleFunction &y);
    friend SimpleFunction operator*(double factor, const SimpleFunction &x) {
        return x.scaled(factor);
    }
    friend bool operator==(const SimpleFunction &x, const SimpleFunction &y);

  private:
    std::shared_ptr<const MeasureSpace> space_;
    std::vector<double> values_;
};

/// Throws ContractError unless both functions live on the same space.
void require_same_space(const SimpleFunction &x, const SimpleFunction &y);

/// I_Phi(x): sum over finite atoms of weight·Phi(value); an infinite atom
/// contributes 0 when Phi(value) = 0 and +inf otherwise. Values beyond the
/// double range saturate to +inf.
ExtendedReal modular(const OrliczFunction &phi, const SimpleFunction &x);

/// Componentwise x <= y.
bool leq(const SimpleFunction &x, const SimpleFunction &y);
/// Componentwise maximum.
SimpleFunction sup(const SimpleFunction &x, const SimpleFunction &y);
/// y - x for x <= y; throws ContractError otherwise.
SimpleFunction dominated_difference(const SimpleFunction &x, const SimpleFunction &y);

struct OrderOps {
    bool leq;
    SimpleFunction sup;
    std::optional<SimpleFunction> diff_if_dominated;
};
OrderOps order_ops(const SimpleFunction &x, const SimpleFunction &y);

enum class DominationMode {
    Random, ///< x = t ⊙ y with t uniform in [0,1] per atom
    Half,   ///< x = y / 2
    Zero,   ///< x = 0
};

struct DominatedPair {
    SimpleFunction x;
    SimpleFunction y;
};

struct PairSampling {
    DominationMode mode = DominationMode::Random;
    double max_value = 2.0;
    /// Minimum sup-distance between x and y relative to sup|y| (Random mode).
    double min_gap = 0.0;
    /// Probability that an atom of y is zero.
    double sparsity = 0.0;
};

/// 0 <= x <= y, both supported on finite atoms, y != 0.
DominatedPair dominated_pair_sample(const std::shared_ptr<const MeasureSpace> &space,
                                    std::mt19937_64 &rng, const PairSampling &options = {});

/// Random signed simple function supported on finite atoms with values in
/// [-max_value, max_value]; never identically zero.
SimpleFunction random_simple_function(const std::shared_ptr<const MeasureSpace> &space,
                                      std::mt19937_64 &rng, double max_value = 2.0,
                                      double sparsity = 0.0);

} // namespace orlicz
