#pragma once

#include <stdexcept>
#include <string>

namespace cohsp {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicateLabelError : Error { using Error::Error; };
struct NotASubsetError : Error { using Error::Error; };
struct TooLargeError : Error { using Error::Error; };
struct CodeOutOfRangeError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct InadequateTruncationError : Error { using Error::Error; };
struct IllConditionedError : Error { using Error::Error; };
struct DegenerateSpectrumError : Error { using Error::Error; };
struct NotTraceClassError : Error { using Error::Error; };
struct NotInSpaceError : Error { using Error::Error; };
struct NotADensityMatrixError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace cohsp
