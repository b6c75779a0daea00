#pragma once

#include <stdexcept>

namespace chc {

// Root of every failure the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// dynamics
struct InvalidParams : Error { using Error::Error; };
struct IntegrationDiverged : Error { using Error::Error; };

// elliptic curve arithmetic
struct SingularCurve : Error { using Error::Error; };
struct NotPrime : Error { using Error::Error; };
struct NonInvertible : Error { using Error::Error; };

// cipher / analysis plumbing
struct LengthMismatch : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct OutOfBounds : Error { using Error::Error; };
struct MalformedEnvelope : Error { using Error::Error; };

// image codec
struct ImageError : Error { using Error::Error; };
struct MalformedHeader : ImageError { using ImageError::ImageError; };
struct TruncatedData : ImageError { using ImageError::ImageError; };
struct UnsupportedMaxval : ImageError { using ImageError::ImageError; };

// key files
struct KeyFileError : Error { using Error::Error; };

}  // namespace chc
