#pragma once

#include <limits>
#include <string>

namespace rbmlab {

// Value on [0, +inf] used for rate functions. Infinity is an explicit
// marker so serializers never have to deal with floating-point inf.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr ExtendedReal(double v) : value_(v) {}

    static constexpr ExtendedReal infinity() {
        ExtendedReal e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    // Finite value; +inf as a double when the marker is set.
    constexpr double value() const {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    std::string to_string() const;

    friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

// Shortest round-trip decimal for finite values, "inf"/"-inf"/"nan" otherwise.
std::string format_double(double x);

}  // namespace rbmlab
