#include "least/geometry.hpp"

#include <cmath>

namespace least {

// Plain sqrt of the sum of squares: IEEE-exact on every platform, unlike
// std::hypot whose rounding differs between libm implementations.
double distance(const Point& a, const Point& b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

} // namespace least
