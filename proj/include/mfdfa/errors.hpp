#pragma once

#include <stdexcept>
#include <string>

namespace mfdfa {

enum class errc {
  non_finite,
  too_short,
  bad_scale,
  degenerate_fit,
  all_zero_segments,
  insufficient_scales,
  non_positive_fluctuation,
  parabola_upward,
  no_real_roots,
  zero_variance,
  bad_param,
  bad_config,
  not_wav,
  unsupported_codec,
  truncated_data,
  clip_out_of_range,
  bad_factor,
  unknown_artist,
  reference_mismatch,
  io_error,
};

constexpr const char* errc_name(errc code) {
  switch (code) {
    case errc::non_finite: return "non_finite";
    case errc::too_short: return "too_short";
    case errc::bad_scale: return "bad_scale";
    case errc::degenerate_fit: return "degenerate_fit";
    case errc::all_zero_segments: return "all_zero_segments";
    case errc::insufficient_scales: return "insufficient_scales";
    case errc::non_positive_fluctuation: return "non_positive_fluctuation";
    case errc::parabola_upward: return "parabola_upward";
    case errc::no_real_roots: return "no_real_roots";
    case errc::zero_variance: return "zero_variance";
    case errc::bad_param: return "bad_param";
    case errc::bad_config: return "bad_config";
    case errc::not_wav: return "not_wav";
    case errc::unsupported_codec: return "unsupported_codec";
    case errc::truncated_data: return "truncated_data";
    case errc::clip_out_of_range: return "clip_out_of_range";
    case errc::bad_factor: return "bad_factor";
    case errc::unknown_artist: return "unknown_artist";
    case errc::reference_mismatch: return "reference_mismatch";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

/// Library-wide exception type carrying a machine-readable error code.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mfdfa
