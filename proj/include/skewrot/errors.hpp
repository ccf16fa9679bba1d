#pragma once

#include <stdexcept>
#include <string>

namespace skewrot {

// thrown when a map or frame is evaluated too close to its center
struct DegenerateCenterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// inverse-polar radius must be strictly positive
struct NonPositiveRadiusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// fewer usable samples than a fit needs
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// adaptive curve refinement exceeded its vertex budget
struct RefinementLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// no separatrix crossings found along an orbit
struct NoCrossingsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// orbit radial variation too large for a rotation-number estimate
struct UnboundedOrbitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// growth-exponent fit asked for on a constant series
struct DegenerateSeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// strip recurrence called outside its validity domain; carries the state
struct OutOfRegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad experiment configuration (unknown name, missing/unparsable parameter)
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace skewrot
