#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mfdfa/errors.hpp"
#include "mfdfa/series.hpp"

namespace mfdfa {

struct AudioSource {
  std::string path;
  std::size_t data_offset = 0;  ///< byte offset of the PCM payload
  std::size_t data_bytes = 0;
};

/// Decoded audio: mono samples in [-1, 1).
struct AudioClip {
  std::vector<double> samples;
  int sample_rate_hz = 0;
  bool channels_collapsed = false;  ///< true when >1 channel was averaged
  int source_channels = 1;
  int source_bits = 16;
  AudioSource source;

  double duration_s() const {
    return sample_rate_hz > 0
               ? static_cast<double>(samples.size()) / sample_rate_hz
               : 0.0;
  }
};

/// How to carve a recording into analysis units: a clip window starting at
/// clip_start_s, clip_length_s long, split into n_parts equal parts.
struct PartitionPlan {
  double clip_start_s = 0.0;
  double clip_length_s = 120.0;
  int n_parts = 4;
};

/// Decodes a RIFF/WAVE byte stream. Integer PCM at 8/16/24/32 bits, any
/// channel count (channels averaged to mono). 16-bit code v maps to
/// v / 32768, so -32768 lands exactly on -1.0.
AudioClip decode_wav(std::span<const std::uint8_t> bytes);

AudioClip read_wav_file(const std::filesystem::path& path);

/// Encodes mono 16-bit PCM. Samples are multiplied by `scale`, then rounded
/// and clamped to the 16-bit range.
std::vector<std::uint8_t> encode_wav16(std::span<const double> samples,
                                       int sample_rate_hz, double scale = 1.0);

void write_wav16(const std::filesystem::path& path,
                 std::span<const double> samples, int sample_rate_hz,
                 double scale = 1.0);

/// Cuts the plan's clip window out of the recording and splits it into
/// n_parts contiguous, non-overlapping Series of equal length.
std::vector<Series> extract_parts(const AudioClip& clip,
                                  const PartitionPlan& plan);

/// Anti-alias low-pass (windowed-sinc FIR), then keep every factor-th
/// sample. factor = 1 is the identity.
Series decimate(const Series& x, int factor);

}  // namespace mfdfa
