#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wardowski {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A constructor or operation argument violates its stated constraint.
struct InvalidParameter : Error {
    using Error::Error;
};

/// A documented precondition does not hold for the given inputs.
struct PreconditionViolated : Error {
    using Error::Error;
};

/// phi_series did not converge where a convergent series was required.
struct SeriesNotConvergent : Error {
    using Error::Error;
};

/// tail_bound_regular found no rank from which the bound holds.
struct RankNotFound : Error {
    using Error::Error;
};

/// Witness extraction ran out of recorded prefix at the given rank.
struct PrefixTooShort : Error {
    explicit PrefixTooShort(std::size_t j)
        : Error("witness extraction: A(j) empty on the recorded prefix at j=" + std::to_string(j)),
          rank(j) {}
    std::size_t rank;
};

/// eta coincides with a declared discontinuity point.
struct EtaInDelta : Error {
    using Error::Error;
};

/// Config file is syntactically malformed.
struct ConfigParseError : Error {
    using Error::Error;
};

/// Config file parses but names unknown keys or invalid values.
struct ConfigSemanticError : Error {
    using Error::Error;
};

/// Report or data file could not be read or written.
struct IoError : Error {
    using Error::Error;
};

} // namespace wardowski
