#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>
#include <string>

namespace orlicz {

/// A value in [0, +inf]. +inf absorbs addition and multiplication by a
/// positive scalar; 0 * inf is 0 (measure-theoretic convention).
class ExtendedReal {
  public:
    constexpr ExtendedReal() = default;
    /// Finite nonnegative value. Values beyond the double range saturate to +inf.
    explicit ExtendedReal(double value) : value_{value} {
        if (std::isnan(value) || value < 0)
            throw std::domain_error("ExtendedReal: value must be nonnegative");
    }

    static constexpr ExtendedReal infinity() {
        ExtendedReal r;
        r.value_ = std::numeric_limits<double>::infinity();
        return r;
    }

    constexpr bool is_finite() const noexcept {
        return value_ != std::numeric_limits<double>::infinity();
    }
    constexpr bool is_infinite() const noexcept { return !is_finite(); }
    /// Finite value; throws on +inf.
    double value() const {
        if (!is_finite())
            throw std::domain_error("ExtendedReal: value() on +inf");
        return value_;
    }
    /// The value as a double, +inf mapped to std::numeric_limits<double>::infinity().
    constexpr double as_double() const noexcept { return value_; }

    friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
        ExtendedReal r;
        r.value_ = a.value_ + b.value_;
        return r;
    }
    ExtendedReal &operator+=(ExtendedReal other) { return *this = *this + other; }

    /// Multiplication by a nonnegative scalar.
    friend ExtendedReal operator*(double s, ExtendedReal a) {
        if (std::isnan(s) || s < 0)
            throw std::domain_error("ExtendedReal: scaling factor must be nonnegative");
        ExtendedReal r;
        r.value_ = (s == 0) ? 0.0 : s * a.value_;
        return r;
    }

    friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) = default;
    friend constexpr auto operator<=>(ExtendedReal a, ExtendedReal b) {
        return a.value_ <=> b.value_;
    }
    friend constexpr bool operator<=(ExtendedReal a, double b) { return a.value_ <= b; }
    friend constexpr bool operator>=(ExtendedReal a, double b) { return a.value_ >= b; }

    std::string to_string() const;

  private:
    double value_ = 0;
};

inline std::string ExtendedReal::to_string() const {
    return is_finite() ? std::to_string(value_) : std::string{"inf"};
}

} // namespace orlicz
