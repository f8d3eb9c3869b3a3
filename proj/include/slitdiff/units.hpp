#pragma once

#include "slitdiff/errors.hpp"

namespace slitdiff {

/// Unit system for a run. hbar is configurable so SI values work; default 1.
struct PhysicalUnits {
    double hbar = 1.0;

    /// Planck constant h = 2*pi*hbar.
    double h() const;

    void validate() const {
        if (!(hbar > 0.0)) throw InvalidInputError("hbar must be positive");
    }
};

} // namespace slitdiff
