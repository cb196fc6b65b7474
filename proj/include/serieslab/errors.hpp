#pragma once

#include <stdexcept>
#include <string>

namespace serieslab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed CLI/set/series specifications. CLI exit code 2.
struct ParseError : Error {
    using Error::Error;
};

// horizon == 0 where a trace was requested.
struct EmptyHorizonError : Error {
    using Error::Error;
};

// Query past a computed/declared horizon, or a scan exhausted its bound.
struct HorizonError : Error {
    using Error::Error;
};

// Enumeration scan ran out before the requested element was found.
struct PossiblyFiniteError : HorizonError {
    using HorizonError::HorizonError;
};

// A declared property (injectivity, infinite/co-infinite, term bound,
// cofinite-image size) failed its audit.
struct AuditError : Error {
    using Error::Error;
};

// A split witness is too weak to drive the oscillation derivation.
struct WitnessTooWeakError : Error {
    using Error::Error;
};

} // namespace serieslab
