#pragma once

#include <cmath>

#include "core.hpp"

namespace halfspace {

// Square root on C \ iR+ with sqrt_minus(-1) = -i. This is the branch that
// makes e^{-y sqrt_minus(|xi|^2 - i tau)} the decaying mode for Re tau > 0.
// Inputs on the cut resolve as the limit from the Re z > 0 half plane.
inline cx sqrt_minus(cx z) {
    if (z.imag() == 0.0)  // exact on the real axis (the gamma -> 0+ limit)
        return z.real() >= 0.0 ? cx{std::sqrt(z.real()), 0.0}
                               : cx{0.0, -std::sqrt(-z.real())};
    cx w{-z.imag(), z.real()};  // i*z ; Im(i z) = Re z carries the cut side
    if (w.imag() == 0.0) w = cx{w.real(), +0.0};
    constexpr cx e{0.70710678118654752440, -0.70710678118654752440};  // e^{-i pi/4}
    return e * std::sqrt(w);
}

// Square root on C \ iR- with sqrt_plus(-1) = +i (the backward-BVP branch).
inline cx sqrt_plus(cx z) {
    if (z.imag() == 0.0)
        return z.real() >= 0.0 ? cx{std::sqrt(z.real()), 0.0}
                               : cx{0.0, std::sqrt(-z.real())};
    cx w{z.imag(), -z.real()};  // -i*z
    if (w.imag() == 0.0) w = cx{w.real(), -0.0};
    constexpr cx e{0.70710678118654752440, 0.70710678118654752440};  // e^{+i pi/4}
    return e * std::sqrt(w);
}

// gamma -> 0+ limit of sqrt_minus(|xi|^2 + delta - i gamma) for real w:
// sqrt(w) in the elliptic region, -i sqrt|w| in the hyperbolic region.
inline cx sqrt_symbol_limit(double w) {
    return w >= 0.0 ? cx{std::sqrt(w), 0.0} : cx{0.0, -std::sqrt(-w)};
}

// Same limit for the backward branch: sqrt(w) elliptic, +i sqrt|w| hyperbolic.
inline cx sqrt_symbol_limit_backward(double w) {
    return w >= 0.0 ? cx{std::sqrt(w), 0.0} : cx{0.0, std::sqrt(-w)};
}

}  // namespace halfspace
