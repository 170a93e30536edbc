#include "mfdfa/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "mfdfa/errors.hpp"

namespace mfdfa {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) |
         (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] |
                                    (static_cast<std::uint16_t>(b[at + 1]) << 8));
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

double decode_sample(const std::uint8_t* p, int bits) {
  switch (bits) {
    case 8:  // unsigned, midpoint 128
      return (static_cast<int>(*p) - 128) / 128.0;
    case 16: {
      const std::int16_t v = static_cast<std::int16_t>(p[0] | (p[1] << 8));
      return v / 32768.0;
    }
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v |= ~0xffffff;  // sign extend
      return v / 8388608.0;
    }
    case 32: {
      std::int32_t v;
      std::memcpy(&v, p, 4);
      return v / 2147483648.0;
    }
    default:
      fail(errc::unsupported_codec, "unsupported bit depth");
  }
}

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatExtensible = 0xfffe;

}  // namespace

AudioClip decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE"))
    fail(errc::not_wav, "missing RIFF/WAVE signature");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t data_at = 0, data_len = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::size_t body = pos + 8;
    const std::uint32_t chunk_size = read_u32(bytes, pos + 4);
    if (tag_is(bytes, pos, "fmt ")) {
      if (body + 16 > bytes.size())
        fail(errc::truncated_data, "fmt chunk truncated");
      format = read_u16(bytes, body);
      channels = read_u16(bytes, body + 2);
      rate = read_u32(bytes, body + 4);
      bits = read_u16(bytes, body + 14);
      if (format == kFormatExtensible) {
        // sub-format GUID starts with the 16-bit format code
        if (chunk_size >= 40 && body + 26 <= bytes.size())
          format = read_u16(bytes, body + 24);
      }
      have_fmt = true;
    } else if (tag_is(bytes, pos, "data")) {
      data_at = body;
      data_len = chunk_size;
      have_data = true;
      if (body + data_len > bytes.size())
        fail(errc::truncated_data, "data chunk extends past end of stream");
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word aligned
  }

  if (!have_fmt || !have_data)
    fail(errc::not_wav, "missing fmt or data chunk");
  if (format != kFormatPcm)
    fail(errc::unsupported_codec,
         "only integer PCM is supported (format tag " + std::to_string(format) + ")");
  if (bits != 8 && bits != 16 && bits != 24 && bits != 32)
    fail(errc::unsupported_codec, std::to_string(bits) + "-bit PCM not supported");
  if (channels == 0 || rate == 0) fail(errc::not_wav, "bad fmt chunk");

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * channels;
  if (data_len % frame_bytes != 0)
    fail(errc::truncated_data, "data chunk ends mid-frame");
  const std::size_t n_frames = data_len / frame_bytes;

  AudioClip clip;
  clip.sample_rate_hz = static_cast<int>(rate);
  clip.source_channels = channels;
  clip.source_bits = bits;
  clip.channels_collapsed = channels > 1;
  clip.source.data_offset = data_at;
  clip.source.data_bytes = data_len;
  clip.samples.resize(n_frames);

  const std::uint8_t* p = bytes.data() + data_at;
  for (std::size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    for (std::uint16_t c = 0; c < channels; ++c)
      acc += decode_sample(p + (i * channels + c) * bytes_per_sample, bits);
    clip.samples[i] = acc / channels;
  }
  return clip;
}

AudioClip read_wav_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  AudioClip clip = decode_wav(bytes);
  clip.source.path = path.string();
  return clip;
}

std::vector<std::uint8_t> encode_wav16(std::span<const double> samples,
                                       int sample_rate_hz, double scale) {
  if (sample_rate_hz <= 0) fail(errc::bad_param, "sample rate must be positive");
  const std::uint32_t data_len = static_cast<std::uint32_t>(samples.size() * 2);
  std::vector<std::uint8_t> out(44 + data_len);

  auto put_u32 = [&](std::size_t at, std::uint32_t v) {
    out[at] = v & 0xff;
    out[at + 1] = (v >> 8) & 0xff;
    out[at + 2] = (v >> 16) & 0xff;
    out[at + 3] = (v >> 24) & 0xff;
  };
  auto put_u16 = [&](std::size_t at, std::uint16_t v) {
    out[at] = v & 0xff;
    out[at + 1] = (v >> 8) & 0xff;
  };

  std::memcpy(out.data(), "RIFF", 4);
  put_u32(4, 36 + data_len);
  std::memcpy(out.data() + 8, "WAVE", 4);
  std::memcpy(out.data() + 12, "fmt ", 4);
  put_u32(16, 16);
  put_u16(20, kFormatPcm);
  put_u16(22, 1);  // mono
  put_u32(24, static_cast<std::uint32_t>(sample_rate_hz));
  put_u32(28, static_cast<std::uint32_t>(sample_rate_hz) * 2);
  put_u16(32, 2);
  put_u16(34, 16);
  std::memcpy(out.data() + 36, "data", 4);
  put_u32(40, data_len);

  for (std::size_t i = 0; i < samples.size(); ++i) {
    double v = std::lround(samples[i] * scale * 32768.0);
    v = std::clamp(v, -32768.0, 32767.0);
    const std::int16_t code = static_cast<std::int16_t>(v);
    out[44 + 2 * i] = static_cast<std::uint8_t>(code & 0xff);
    out[44 + 2 * i + 1] = static_cast<std::uint8_t>((code >> 8) & 0xff);
  }
  return out;
}

void write_wav16(const std::filesystem::path& path,
                 std::span<const double> samples, int sample_rate_hz,
                 double scale) {
  const std::vector<std::uint8_t> bytes =
      encode_wav16(samples, sample_rate_hz, scale);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::io_error, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(errc::io_error, "short write to " + path.string());
}

std::vector<Series> extract_parts(const AudioClip& clip,
                                  const PartitionPlan& plan) {
  if (plan.n_parts < 1) fail(errc::bad_param, "n_parts must be >= 1");
  if (!(plan.clip_length_s > 0.0) || plan.clip_start_s < 0.0)
    fail(errc::bad_param, "clip window must have positive length and start >= 0");
  if (clip.sample_rate_hz <= 0) fail(errc::bad_param, "clip has no sample rate");

  const auto start =
      static_cast<std::size_t>(std::llround(plan.clip_start_s * clip.sample_rate_hz));
  const auto total =
      static_cast<std::size_t>(std::llround(plan.clip_length_s * clip.sample_rate_hz));
  if (total % static_cast<std::size_t>(plan.n_parts) != 0)
    fail(errc::bad_param, "clip window does not divide into equal parts");
  if (start + total > clip.samples.size())
    fail(errc::clip_out_of_range,
         "clip window [" + std::to_string(plan.clip_start_s) + "s, +" +
             std::to_string(plan.clip_length_s) + "s] exceeds recording of " +
             std::to_string(clip.duration_s()) + "s");

  const std::size_t part_len = total / static_cast<std::size_t>(plan.n_parts);
  std::vector<Series> parts;
  parts.reserve(static_cast<std::size_t>(plan.n_parts));
  for (int p = 0; p < plan.n_parts; ++p) {
    Series s;
    const std::size_t at = start + static_cast<std::size_t>(p) * part_len;
    s.samples.assign(clip.samples.begin() + static_cast<std::ptrdiff_t>(at),
                     clip.samples.begin() + static_cast<std::ptrdiff_t>(at + part_len));
    s.sample_rate_hz = clip.sample_rate_hz;
    s.label = clip.source.path + "#part" + std::to_string(p + 1);
    parts.push_back(std::move(s));
  }
  return parts;
}

Series decimate(const Series& x, int factor) {
  if (factor < 1) fail(errc::bad_factor, "decimation factor must be >= 1");
  validate_series(x, 2);
  if (factor == 1) return x;

  // Windowed-sinc low-pass at 0.45 / factor of the sampling rate; taps
  // normalized to unit DC gain, reflected edges.
  const int half = 4 * factor;
  const int n_taps = 2 * half + 1;
  const double fc = 0.45 / factor;
  std::vector<double> taps(static_cast<std::size_t>(n_taps));
  double sum = 0.0;
  for (int i = 0; i < n_taps; ++i) {
    const double t = i - half;
    const double sinc =
        (t == 0.0) ? 2.0 * fc : std::sin(2.0 * kPi * fc * t) / (kPi * t);
    const double hamming = 0.54 - 0.46 * std::cos(2.0 * kPi * i / (n_taps - 1));
    taps[static_cast<std::size_t>(i)] = sinc * hamming;
    sum += taps[static_cast<std::size_t>(i)];
  }
  for (double& t : taps) t /= sum;

  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.samples.size());
  auto reflect = [n](std::ptrdiff_t i) {
    while (i < 0 || i >= n) {
      if (i < 0) i = -i;
      if (i >= n) i = 2 * n - 2 - i;
    }
    return static_cast<std::size_t>(i);
  };

  Series out;
  out.label = x.label;
  if (x.sample_rate_hz) out.sample_rate_hz = *x.sample_rate_hz / factor;
  const std::size_t out_len = (x.samples.size() - 1) / static_cast<std::size_t>(factor) + 1;
  out.samples.resize(out_len);
  for (std::size_t k = 0; k < out_len; ++k) {
    const std::ptrdiff_t center = static_cast<std::ptrdiff_t>(k) * factor;
    double acc = 0.0;
    for (int i = 0; i < n_taps; ++i)
      acc += taps[static_cast<std::size_t>(i)] * x.samples[reflect(center + i - half)];
    out.samples[k] = acc;
  }
  return out;
}

}  // namespace mfdfa
