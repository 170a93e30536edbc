#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "mfdfa/errors.hpp"
#include "mfdfa/series.hpp"

namespace mfdfa {

// ============================================================================
// Configuration
// ============================================================================

enum class Segmentation { one_ended, two_ended };
enum class WidthMethod { quadratic_fit, endpoint_span };

const char* to_string(Segmentation mode);
const char* to_string(WidthMethod method);
Segmentation segmentation_from_string(const std::string& name);
WidthMethod width_method_from_string(const std::string& name);

/// Analysis parameters. Defaults: q in [-5, 5] step 0.25, octave-spaced
/// scales from 16 up to N/4, linear detrending, two-ended segmentation,
/// quadratic-fit width.
struct AnalysisConfig {
  std::vector<double> q_grid = default_q_grid();

  /// Explicit scale grid. Empty means derive from the series length via
  /// min_scale / max_scale / n_scales.
  std::vector<int> scale_grid;
  int min_scale = 16;
  int max_scale = 0;  ///< 0: floor(N/4)
  int n_scales = 0;   ///< 0: octave spacing; >0: that many log-spaced integers

  int detrend_order = 1;
  Segmentation segmentation = Segmentation::two_ended;
  WidthMethod width_method = WidthMethod::quadratic_fit;

  /// Restrict the quadratic width fit to spectrum points with f >= 0.5
  /// (the neighbourhood of the peak). Off by default.
  bool fit_near_peak = false;

  /// Builds a q grid from q_min to q_max in steps of q_step. Values within
  /// 1e-12 of zero are snapped to exactly 0; 0 is inserted when the stepping
  /// does not hit it.
  static std::vector<double> default_q_grid(double q_min = -5.0,
                                            double q_max = 5.0,
                                            double q_step = 0.25);

  /// Length-independent validation; throws bad_config.
  void validate() const;

  /// Resolves the scale grid for a series of length n and validates it
  /// against that length (hard floor: max scale <= n/2).
  std::vector<int> scales_for(std::size_t n) const;
};

// ============================================================================
// Result types
// ============================================================================

/// Per-segment squared fluctuations and the q-order fluctuation function
/// F_q(s) derived from them.
struct FluctuationSurface {
  std::vector<int> scales;
  std::vector<double> q_grid;
  /// f2[i]: squared fluctuations at scales[i]; N_s values (one_ended) or
  /// 2*N_s (two_ended). Entries at the numerical noise floor are snapped
  /// to exactly 0 so the zero-segment policy in fluctuation_function applies.
  std::vector<std::vector<double>> f2;
  /// fq[qi][si] = F_q(scales[si]) for q_grid[qi]; always > 0.
  std::vector<std::vector<double>> fq;

  /// Number of per-window detrending evaluations performed. Independent of
  /// the q grid: residuals are computed once per (scale, window) and reused.
  std::size_t detrend_evaluations = 0;
  /// Segments with zero fluctuation, excluded from negative-q moments.
  std::size_t zero_segments = 0;
};

/// Generalized Hurst exponents h(q) with per-q regression diagnostics.
struct HurstSpectrum {
  std::vector<double> q;
  std::vector<double> h;
  std::vector<double> r2;
  int fit_scale_min = 0;
  int fit_scale_max = 0;
  /// Set when h(q) increases anywhere by more than 1e-6 (expected to be
  /// non-increasing; common on noisy empirical data, so flagged, not fatal).
  bool monotonicity_flagged = false;

  /// h at an exact grid value; throws bad_param when q is not on the grid.
  double h_at(double q_value) const;
};

struct QuadFit {
  double a = std::numeric_limits<double>::quiet_NaN();
  double b = std::numeric_limits<double>::quiet_NaN();
  double c = 1.0;  ///< pinned: f(alpha0) = 1
};

/// Singularity spectrum points (alpha, f) with the fitted parabola and the
/// spectral width W.
struct SingularitySpectrum {
  std::vector<double> q;
  std::vector<double> alpha;
  std::vector<double> f;
  double alpha0 = 0.0;
  QuadFit quad;
  double width = 0.0;
  WidthMethod width_method = WidthMethod::quadratic_fit;
  /// Under endpoint_span the quadratic fit is still attempted for reporting;
  /// this flags that it degenerated (quad.a/b stay NaN).
  bool quad_degenerate = false;
};

struct AnalysisResult {
  FluctuationSurface surface;
  HurstSpectrum hurst;
  SingularitySpectrum spectrum;
};

// ============================================================================
// Pipeline operations
// ============================================================================

/// Cumulative sum of mean-removed samples; the random-walk-like profile the
/// detrended fluctuations are measured on. Its last entry telescopes to ~0.
std::vector<double> build_profile(const Series& x);

struct Window {
  std::size_t begin = 0;
  std::size_t end = 0;  ///< exclusive
  bool operator==(const Window&) const = default;
};

/// Non-overlapping windows of exactly `scale` samples. one_ended: floor(n/s)
/// windows from the front. two_ended: those plus floor(n/s) windows counted
/// from the tail, [(n - v*s), n - (v-1)*s).
std::vector<Window> segment_bounds(std::size_t n, std::size_t scale,
                                   Segmentation mode);

/// Mean squared residual of the window against its least-squares polynomial
/// of the given order (abscissae 1..s). Requires s >= order + 2.
double local_fluctuation(std::span<const double> window, int detrend_order);

/// q-order overall RMS variation of one scale's squared fluctuations.
/// q = 0 uses the logarithmic limit exp(mean(ln F^2) / 2). Segments with
/// F^2 == 0 count as zero for q > 0 and are excluded from the mean for
/// q <= 0; all-zero input is an error.
double fluctuation_function(std::span<const double> f2, double q);

/// Profile + per-scale detrended fluctuations + F_q(s) for the whole grid.
/// F^2 is computed once per scale and reused across all q.
FluctuationSurface fluctuation_surface(const Series& x,
                                       const AnalysisConfig& cfg);

/// Least-squares slope of ln F_q(s) vs ln s per q, with r^2.
HurstSpectrum hurst_exponents(const FluctuationSurface& surface,
                              const AnalysisConfig& cfg);

/// Legendre transform: alpha = h + q h', f = q (alpha - h) + 1, with h'
/// from central differences (one-sided at the grid ends). Width from the
/// configured method; the quadratic fit pins C = 1 and reports
/// W = sqrt(B^2 - 4AC) / |A|, the distance between the parabola's zeros.
SingularitySpectrum singularity_spectrum(const HurstSpectrum& hs,
                                         const AnalysisConfig& cfg);

/// The full pipeline. Deterministic; throws zero_variance on constant input.
AnalysisResult analyze(const Series& x, const AnalysisConfig& cfg);

/// Fisher-Yates permutation driven by a deterministic seeded generator.
/// Same seed, same output, on every platform.
Series shuffle(const Series& x, std::uint64_t seed);

// ============================================================================
// Shuffle surrogate test
// ============================================================================

enum class ShuffleVerdict { correlation_dominated, distribution_dominated, mixed };

const char* to_string(ShuffleVerdict v);

struct ShuffleTestResult {
  double w_original = 0.0;
  double w_shuffled_mean = 0.0;
  double w_shuffled_sd = 0.0;
  std::vector<double> w_surrogates;
  /// Width of seeded gaussian noise of the same length under the same
  /// config: the monofractal noise floor the verdict compares against.
  double w_null_mean = 0.0;
  double w_null_sd = 0.0;
  ShuffleVerdict verdict = ShuffleVerdict::mixed;
};

/// Analyzes x and n_surrogates seeded shuffles of it. Widths are endpoint
/// spans of the singularity spectrum (robust where the quadratic fit
/// degenerates on near-monofractal surrogates). correlation_dominated
/// requires the shuffled width to collapse below half the original, beyond
/// the surrogate scatter, and down to the gaussian noise floor;
/// distribution_dominated means the widths agree within the scatter.
ShuffleTestResult shuffle_test(const Series& x, const AnalysisConfig& cfg,
                               int n_surrogates, std::uint64_t seed);

}  // namespace mfdfa
