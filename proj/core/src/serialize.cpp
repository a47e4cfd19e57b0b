#include "rbmlab/extended_real.hpp"

#include <charconv>
#include <cmath>

namespace rbmlab {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string ExtendedReal::to_string() const { return infinite_ ? "inf" : format_double(value_); }

}  // namespace rbmlab
