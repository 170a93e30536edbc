#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mfdfa {

/// A finite real-valued sequence plus sampling metadata. The universal
/// analysis input: audio parts, synthetic signals and surrogates all arrive
/// here.
struct Series {
  std::vector<double> samples;
  std::optional<double> sample_rate_hz;
  std::string label;

  std::size_t size() const noexcept { return samples.size(); }
};

/// Checks length and finiteness; throws too_short / non_finite.
void validate_series(const Series& x, std::size_t min_length = 2);

}  // namespace mfdfa
