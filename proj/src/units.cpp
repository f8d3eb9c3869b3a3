#include "slitdiff/units.hpp"

#include <numbers>

namespace slitdiff {

double PhysicalUnits::h() const { return 2.0 * std::numbers::pi * hbar; }

} // namespace slitdiff
