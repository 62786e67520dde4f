#pragma once
// Fourier pseudo-spectral operators on the periodic grid x_j = 2 pi j / n.
// Wavenumbers follow the FFT convention k = 0, 1, ..., n/2 - 1, -n/2, ..., -1.

#include <cstddef>
#include <span>

#include "pampac/linalg.hpp"

namespace pampac::spectral {

bool is_power_of_two(std::size_t n) noexcept;

Vector grid(std::size_t n);

/// Real coefficients (a_0, cos_1, sin_1, ..., cos_{n/2-1}, sin_{n/2-1}, a_{n/2}).
Matrix forward_transform(std::size_t n);
Matrix inverse_transform(std::size_t n);

/// Grid operator of the Fourier multiplier (ik)^order.  For odd orders the
/// Nyquist mode is dropped so the result stays real.
Matrix derivative_matrix(std::size_t n, int order);

/// Projection onto |k| < n/3.
Matrix dealias_matrix(std::size_t n);

/// d^order w / dx^order through the coefficient representation.
Vector differentiate(std::span<const double> w, int order);

}  // namespace pampac::spectral
