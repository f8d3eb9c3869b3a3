#pragma once

#include <stdexcept>
#include <string>

namespace slitdiff {

/// Bad argument to an operation (empty grid, zero vector, malformed config).
struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A state with (numerically) zero norm where a normalized one is required.
struct DegenerateStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The restriction of the incoming state to the slit has no mass.
struct ZeroOverlapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The two sigma_p routes disagree beyond tolerance on an admissible state.
struct RouteInconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fit window cannot hold the required number of oscillation periods.
struct InvalidWindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Position grid too coarse to resolve a feature; carries the grid size that would.
struct ResolutionError : std::runtime_error {
    ResolutionError(const std::string& what, long required_points)
        : std::runtime_error(what), required_points(required_points) {}
    long required_points;
};

} // namespace slitdiff
