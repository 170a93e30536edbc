#include "mfdfa/synth.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "mfdfa/errors.hpp"
#include "mfdfa/rng.hpp"

namespace mfdfa {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214582;
constexpr double kPi = 3.1415926535897932384626433832795;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 FFT; inverse applies the 1/n factor.
void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= inv;
  }
}

}  // namespace

Series binomial_cascade(std::size_t n, double a, std::uint64_t seed) {
  (void)seed;
  if (!(a > 0.0 && a < 1.0))
    fail(errc::bad_param, "cascade multiplier a must lie in (0, 1)");
  if (!is_pow2(n) || n < 256)
    fail(errc::bad_param, "cascade length must be a power of two >= 256");
  const int k = std::countr_zero(n);

  std::vector<double> pow_a(static_cast<std::size_t>(k) + 1, 1.0);
  std::vector<double> pow_b(static_cast<std::size_t>(k) + 1, 1.0);
  for (int j = 1; j <= k; ++j) {
    pow_a[j] = pow_a[j - 1] * a;
    pow_b[j] = pow_b[j - 1] * (1.0 - a);
  }

  Series out;
  out.label = "binomial_cascade(a=" + std::to_string(a) + ")";
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int ones = std::popcount(i);
    out.samples[i] = pow_a[ones] * pow_b[k - ones];
  }
  return out;
}

double analytic_hurst(double a, double q) {
  if (!(a > 0.0 && a < 1.0))
    fail(errc::bad_param, "cascade multiplier a must lie in (0, 1)");
  const double b = 1.0 - a;
  if (std::fabs(q) < 1e-8)  // exact limit; the direct form cancels near 0
    return -(std::log(a) + std::log(b)) / (2.0 * kLn2);
  return 1.0 / q - std::log(std::pow(a, q) + std::pow(b, q)) / (q * kLn2);
}

double analytic_alpha(double a, double q) {
  if (!(a > 0.0 && a < 1.0))
    fail(errc::bad_param, "cascade multiplier a must lie in (0, 1)");
  const double b = 1.0 - a;
  const double ga = std::pow(a, q);
  const double gb = std::pow(b, q);
  return -(ga * std::log(a) + gb * std::log(b)) / ((ga + gb) * kLn2);
}

Series white_noise(std::size_t n, std::uint64_t seed) {
  if (n < 256) fail(errc::bad_param, "generator length must be >= 256");
  Series out;
  out.label = "white_noise(seed=" + std::to_string(seed) + ")";
  out.samples.resize(n);
  SplitMix64 rng(seed);
  for (double& v : out.samples) v = rng.gaussian();
  return out;
}

Series powerlaw_noise(std::size_t n, double beta, std::uint64_t seed) {
  if (n < 256) fail(errc::bad_param, "generator length must be >= 256");
  if (!(beta >= 0.0 && beta <= 2.0))
    fail(errc::bad_param, "spectral exponent beta must lie in [0, 2]");

  const std::size_t m = std::bit_ceil(n);
  std::vector<std::complex<double>> spec(m);
  SplitMix64 rng(seed);
  for (auto& z : spec) z = std::complex<double>(rng.gaussian(), 0.0);

  fft(spec, false);
  spec[0] = 0.0;  // the mean is removed below anyway
  for (std::size_t k = 1; k <= m / 2; ++k) {
    const double gain = std::pow(static_cast<double>(k), -beta / 2.0);
    spec[k] *= gain;
    if (k != m - k) spec[m - k] = std::conj(spec[k]);
  }
  fft(spec, true);

  Series out;
  out.label = "powerlaw_noise(beta=" + std::to_string(beta) +
              ", seed=" + std::to_string(seed) + ")";
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.samples[i] = spec[i].real();

  double mean = 0.0;
  for (double v : out.samples) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : out.samples) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  const double sd = std::sqrt(var);
  if (!(sd > 0.0)) fail(errc::bad_param, "degenerate noise realization");
  for (double& v : out.samples) v = (v - mean) / sd;
  return out;
}

}  // namespace mfdfa
