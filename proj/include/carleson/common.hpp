#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace carleson {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Base class for every error the toolkit throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidDomain : Error { using Error::Error; };
struct InvalidMeasure : Error { using Error::Error; };
struct InvalidMap : Error { using Error::Error; };
struct InvalidSquare : Error { using Error::Error; };
struct InvalidPartition : Error { using Error::Error; };
struct InvalidWeights : Error { using Error::Error; };
struct PoleHit : Error { using Error::Error; };
struct AtomOutsideDomain : Error { using Error::Error; };
struct AtomInNoComponent : Error { using Error::Error; };
struct TooManyAtoms : Error { using Error::Error; };
struct EvaluationPointOnBoundary : Error { using Error::Error; };
struct EvaluationPointOutsideDomain : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct PoleTooCloseToBoundary : Error { using Error::Error; };
struct SpecParseError : Error { using Error::Error; };

/// Normalize an angle into [0, 2*pi).
inline double wrap_angle(double t) {
    double w = std::fmod(t, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    // fmod can return exactly kTwoPi after the correction when t is a
    // tiny negative number.
    if (w >= kTwoPi) w = 0.0;
    return w;
}

/// Counterclockwise angular distance from `from` to `to`, in [0, 2*pi).
///
/// This is the single comparison primitive shared by the Carleson square
/// membership test, the box-ratio sliding window and its subset oracle, so
/// that candidate depths and window tests agree bit for bit.
inline double ccw_distance(double from, double to) {
    double d = to - from;
    if (d < 0.0) d += kTwoPi;
    if (d < 0.0) d = 0.0;
    if (d >= kTwoPi) d -= kTwoPi;
    return d;
}

/// q-th root with exact power-of-two behaviour for q in {1, 2, 4}.
inline double qth_root(double x, double q) {
    if (q == 1.0) return x;
    if (q == 2.0) return std::sqrt(x);
    if (q == 4.0) return std::sqrt(std::sqrt(x));
    return std::pow(x, 1.0 / q);
}

}  // namespace carleson
