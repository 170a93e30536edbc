#pragma once

#include <cstdint>

#include "mfdfa/errors.hpp"
#include "mfdfa/series.hpp"

namespace mfdfa {

// Generators with known scaling behaviour, used to verify the analysis
// engine against closed forms. All are seed-deterministic: identical
// parameters produce bit-identical output.

/// Deterministic multiplicative binomial cascade of length n = 2^k (k >= 8),
/// multiplier a in (0, 1): x[i] = a^ones(i) * (1-a)^(k - ones(i)). Conserves
/// total measure (sum = 1). The seed is reserved for future randomized-sign
/// variants and is ignored by the canonical cascade.
Series binomial_cascade(std::size_t n, double a, std::uint64_t seed = 0);

/// Closed-form generalized Hurst exponent of the binomial cascade:
/// h(q) = 1/q - ln(a^q + (1-a)^q) / (q ln 2), with the exact q -> 0 limit
/// -(ln a + ln(1-a)) / (2 ln 2) used near zero.
double analytic_hurst(double a, double q);

/// Closed-form singularity strength alpha(q) = d/dq [q h(q)] for the
/// binomial cascade; companion oracle for spectrum widths.
double analytic_alpha(double a, double q);

/// i.i.d. standard gaussian samples, n >= 256.
Series white_noise(std::size_t n, std::uint64_t seed);

/// Gaussian noise Fourier-filtered to power spectrum ~ f^-beta with
/// beta in [0, 2], then normalized to zero mean and unit variance.
/// Expected h(2) ~ (1 + beta) / 2.
Series powerlaw_noise(std::size_t n, double beta, std::uint64_t seed);

}  // namespace mfdfa
