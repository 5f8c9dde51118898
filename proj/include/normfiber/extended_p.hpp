#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace normfiber {

/// An exponent p in [1, inf]. p = inf is a first-class value with its own
/// max-type evaluation branches.
class ExtendedP {
public:
    explicit ExtendedP(double p) : value_(p) {
        if (std::isnan(p) || p < 1.0)
            throw std::invalid_argument("ExtendedP: p must satisfy p >= 1");
    }

    static ExtendedP infinity() { return ExtendedP(std::numeric_limits<double>::infinity()); }

    bool is_infinite() const { return std::isinf(value_); }
    double value() const { return value_; }

    bool operator==(const ExtendedP& o) const { return value_ == o.value_; }
    bool operator!=(const ExtendedP& o) const { return !(*this == o); }

    /// |p - q| for finiteness-compatible comparison; inf vs inf is 0,
    /// inf vs finite is +inf.
    double distance(const ExtendedP& o) const {
        if (is_infinite() && o.is_infinite()) return 0.0;
        if (is_infinite() || o.is_infinite()) return std::numeric_limits<double>::infinity();
        return std::fabs(value_ - o.value_);
    }

private:
    double value_;
};

}  // namespace normfiber
