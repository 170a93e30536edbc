// mfdfa command-line front end: analyze / batch / synth / shuffle-test / report.
//
// Exit codes: 0 success, 1 runtime error, 2 validation error, 3 partial
// batch failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mfdfa/audio.hpp"
#include "mfdfa/core.hpp"
#include "mfdfa/report.hpp"
#include "mfdfa/synth.hpp"

namespace {

using mfdfa::AnalysisConfig;
using mfdfa::errc;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;
constexpr int kExitPartial = 3;

int exit_code_for(const mfdfa::Error& e) {
  switch (e.code()) {
    case errc::bad_param:
    case errc::bad_config:
    case errc::bad_scale:
    case errc::bad_factor:
    case errc::reference_mismatch:
      return kExitValidation;
    default:
      return kExitRuntime;
  }
}

// ----------------------------------------------------------------------------
// Shared flag groups
// ----------------------------------------------------------------------------

struct AnalysisFlags {
  double q_min = -5.0, q_max = 5.0, q_step = 0.25;
  int scales_min = 16, scales_max = 0, n_scales = 0;
  int detrend_order = 1;
  std::string segmentation = "two_ended";
  std::string width_method = "quadratic_fit";
  std::string config_path;

  CLI::Option* o_q_min = nullptr;
  CLI::Option* o_q_max = nullptr;
  CLI::Option* o_q_step = nullptr;
  CLI::Option* o_scales_min = nullptr;
  CLI::Option* o_scales_max = nullptr;
  CLI::Option* o_n_scales = nullptr;
  CLI::Option* o_detrend = nullptr;
  CLI::Option* o_segmentation = nullptr;
  CLI::Option* o_width = nullptr;
};

struct PartitionFlags {
  double clip_start = 0.0;
  double clip_length = 0.0;  // 0: whole recording (analyze) / 120 (batch)
  int parts = 4;
  CLI::Option* o_clip_start = nullptr;
  CLI::Option* o_clip_length = nullptr;
  CLI::Option* o_parts = nullptr;
};

struct OutputFlags {
  std::string format;  // "", "csv", "json"
  std::string out_path;
};

void add_analysis_flags(CLI::App* cmd, AnalysisFlags& f) {
  f.o_q_min = cmd->add_option("--q-min", f.q_min, "Smallest moment order q");
  f.o_q_max = cmd->add_option("--q-max", f.q_max, "Largest moment order q");
  f.o_q_step = cmd->add_option("--q-step", f.q_step, "q grid step");
  f.o_scales_min = cmd->add_option("--scales-min", f.scales_min, "Smallest scale (samples)");
  f.o_scales_max = cmd->add_option("--scales-max", f.scales_max,
                                   "Largest scale; 0 = N/4");
  f.o_n_scales = cmd->add_option("--n-scales", f.n_scales,
                                 "Number of log-spaced scales; 0 = octave spacing");
  f.o_detrend = cmd->add_option("--detrend-order", f.detrend_order,
                                "Polynomial detrending order");
  f.o_segmentation = cmd->add_option("--segmentation", f.segmentation,
                                     "Window families: one_ended or two_ended");
  f.o_width = cmd->add_option("--width-method", f.width_method,
                              "Width: quadratic_fit or endpoint_span");
  cmd->add_option("--config", f.config_path,
                  "JSON config file; flags override its values");
}

void add_partition_flags(CLI::App* cmd, PartitionFlags& f, bool batch) {
  f.o_clip_start = cmd->add_option("--clip-start", f.clip_start,
                                   "Clip window start (seconds)");
  f.o_clip_length = cmd->add_option(
      "--clip-length", f.clip_length,
      batch ? "Clip window length in seconds (default 120)"
            : "Clip window length in seconds (default: whole file)");
  f.o_parts = cmd->add_option("--parts", f.parts,
                              "Number of equal parts per clip (default 4)");
}

void add_output_flags(CLI::App* cmd, OutputFlags& f) {
  cmd->add_option("--format", f.format, "Machine output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out_path, "Write machine output to this file");
}

// Config-file precedence: flags override config values, config overrides
// defaults. Only keys whose flag was not supplied on the command line apply.
void apply_config_file(AnalysisFlags& a, PartitionFlags* p, int* jobs,
                       CLI::Option* o_jobs) {
  if (a.config_path.empty()) return;
  std::ifstream in(a.config_path);
  if (!in) mfdfa::fail(errc::io_error, "cannot open config " + a.config_path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const std::exception& e) {
    mfdfa::fail(errc::bad_config, "config is not valid JSON: " + std::string(e.what()));
  }
  auto take = [&doc](const char* key, auto& target, CLI::Option* opt) {
    if (doc.contains(key) && (opt == nullptr || opt->count() == 0))
      target = doc[key].get<std::decay_t<decltype(target)>>();
  };
  take("q_min", a.q_min, a.o_q_min);
  take("q_max", a.q_max, a.o_q_max);
  take("q_step", a.q_step, a.o_q_step);
  take("scales_min", a.scales_min, a.o_scales_min);
  take("scales_max", a.scales_max, a.o_scales_max);
  take("n_scales", a.n_scales, a.o_n_scales);
  take("detrend_order", a.detrend_order, a.o_detrend);
  take("segmentation", a.segmentation, a.o_segmentation);
  take("width_method", a.width_method, a.o_width);
  if (p != nullptr) {
    take("clip_start", p->clip_start, p->o_clip_start);
    take("clip_length", p->clip_length, p->o_clip_length);
    take("parts", p->parts, p->o_parts);
  }
  if (jobs != nullptr) take("jobs", *jobs, o_jobs);
}

AnalysisConfig build_config(const AnalysisFlags& f) {
  AnalysisConfig cfg;
  cfg.q_grid = AnalysisConfig::default_q_grid(f.q_min, f.q_max, f.q_step);
  cfg.min_scale = f.scales_min;
  cfg.max_scale = f.scales_max;
  cfg.n_scales = f.n_scales;
  cfg.detrend_order = f.detrend_order;
  cfg.segmentation = mfdfa::segmentation_from_string(f.segmentation);
  cfg.width_method = mfdfa::width_method_from_string(f.width_method);
  cfg.validate();
  return cfg;
}

void write_output(const OutputFlags& out, const std::string& text) {
  if (out.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out.out_path, std::ios::binary | std::ios::trunc);
  if (!file) mfdfa::fail(errc::io_error, "cannot write " + out.out_path);
  file << text;
}

std::string format6(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ----------------------------------------------------------------------------
// analyze
// ----------------------------------------------------------------------------

ordered_json result_to_json(const std::string& label,
                            const mfdfa::Series& series,
                            const mfdfa::AnalysisResult& res) {
  ordered_json j;
  j["label"] = label;
  j["n_samples"] = series.samples.size();
  j["sample_rate_hz"] = series.sample_rate_hz ? ordered_json(*series.sample_rate_hz)
                                              : ordered_json(nullptr);
  j["width_method"] = mfdfa::to_string(res.spectrum.width_method);
  j["W"] = mfdfa::round6(res.spectrum.width);
  j["alpha0"] = mfdfa::round6(res.spectrum.alpha0);
  if (std::isnan(res.spectrum.quad.a)) {
    j["quadA"] = nullptr;
    j["quadB"] = nullptr;
  } else {
    j["quadA"] = mfdfa::round6(res.spectrum.quad.a);
    j["quadB"] = mfdfa::round6(res.spectrum.quad.b);
  }
  j["scales"] = res.surface.scales;
  ordered_json h = ordered_json::object();
  for (std::size_t i = 0; i < res.hurst.q.size(); ++i)
    h[format6(res.hurst.q[i])] = mfdfa::round6(res.hurst.h[i]);
  j["h_table"] = std::move(h);
  j["r2_min"] = mfdfa::round6(*std::min_element(res.hurst.r2.begin(), res.hurst.r2.end()));
  j["alpha"] = ordered_json::array();
  j["f_alpha"] = ordered_json::array();
  for (std::size_t i = 0; i < res.spectrum.alpha.size(); ++i) {
    j["alpha"].push_back(mfdfa::round6(res.spectrum.alpha[i]));
    j["f_alpha"].push_back(mfdfa::round6(res.spectrum.f[i]));
  }
  return j;
}

std::string result_to_csv(const std::string& label,
                          const mfdfa::Series& series,
                          const mfdfa::AnalysisResult& res) {
  std::string out = "label,n_samples,sample_rate_hz,width_method,W,alpha0,quadA,quadB\n";
  out += label + ',' + std::to_string(series.samples.size()) + ',';
  out += series.sample_rate_hz ? format6(*series.sample_rate_hz) : "";
  out += ',';
  out += mfdfa::to_string(res.spectrum.width_method);
  out += ',';
  out += format6(res.spectrum.width);
  out += ',';
  out += format6(res.spectrum.alpha0);
  out += ',';
  out += format6(res.spectrum.quad.a);
  out += ',';
  out += format6(res.spectrum.quad.b);
  out += '\n';
  return out;
}

void print_human_result(const mfdfa::Series& series,
                        const mfdfa::AnalysisResult& res) {
  std::printf("samples        %zu", series.samples.size());
  if (series.sample_rate_hz) std::printf(" @ %g Hz", *series.sample_rate_hz);
  std::printf("\n");
  std::printf("scales         %d .. %d (%zu, %s)\n", res.surface.scales.front(),
              res.surface.scales.back(), res.surface.scales.size(),
              mfdfa::to_string(mfdfa::Segmentation::two_ended));
  std::printf("q grid         [%g, %g], %zu points\n", res.hurst.q.front(),
              res.hurst.q.back(), res.hurst.q.size());
  std::printf("W              %.6g   (%s)\n", res.spectrum.width,
              mfdfa::to_string(res.spectrum.width_method));
  std::printf("alpha0         %.6g\n", res.spectrum.alpha0);
  if (!std::isnan(res.spectrum.quad.a))
    std::printf("quad A, B, C   %.6g, %.6g, 1\n", res.spectrum.quad.a,
                res.spectrum.quad.b);
  std::printf("h(q_min)/h(0)/h(q_max)  %.4f / %.4f / %.4f\n",
              res.hurst.h.front(), res.hurst.h_at(0.0), res.hurst.h.back());
  const double r2_min = *std::min_element(res.hurst.r2.begin(), res.hurst.r2.end());
  std::printf("min r^2        %.4f\n", r2_min);
  if (res.hurst.monotonicity_flagged)
    std::printf("note           h(q) not monotone (noisy moments)\n");
  if (res.surface.zero_segments > 0)
    std::printf("note           %zu zero-fluctuation segments excluded\n",
                res.surface.zero_segments);
}

mfdfa::Series load_input_series(const std::string& path,
                                const PartitionFlags& part, int decimate_by) {
  mfdfa::AudioClip clip = mfdfa::read_wav_file(path);
  mfdfa::Series series;
  if (part.clip_length > 0.0) {
    mfdfa::PartitionPlan plan{part.clip_start, part.clip_length, 1};
    series = mfdfa::extract_parts(clip, plan)[0];
  } else {
    if (part.clip_start > 0.0) {
      mfdfa::PartitionPlan plan{
          part.clip_start, clip.duration_s() - part.clip_start, 1};
      series = mfdfa::extract_parts(clip, plan)[0];
    } else {
      series.samples = std::move(clip.samples);
      series.sample_rate_hz = clip.sample_rate_hz;
    }
  }
  series.label = std::filesystem::path(path).filename().string();
  if (decimate_by > 1) series = mfdfa::decimate(series, decimate_by);
  return series;
}

int cmd_analyze(const std::string& path, AnalysisFlags& aflags,
                PartitionFlags& pflags, const OutputFlags& oflags,
                int decimate_by) {
  apply_config_file(aflags, &pflags, nullptr, nullptr);
  const AnalysisConfig cfg = build_config(aflags);
  const mfdfa::Series series = load_input_series(path, pflags, decimate_by);
  const mfdfa::AnalysisResult res = mfdfa::analyze(series, cfg);

  if (oflags.format == "csv") {
    write_output(oflags, result_to_csv(series.label, series, res));
  } else if (oflags.format == "json") {
    write_output(oflags, result_to_json(series.label, series, res).dump(2) + "\n");
  } else {
    std::printf("input          %s\n", series.label.c_str());
    print_human_result(series, res);
    if (!oflags.out_path.empty())
      write_output(oflags, result_to_csv(series.label, series, res));
  }
  return kExitOk;
}

// ----------------------------------------------------------------------------
// batch
// ----------------------------------------------------------------------------

int cmd_batch(const std::string& manifest_path, AnalysisFlags& aflags,
              PartitionFlags& pflags, const OutputFlags& oflags,
              const std::string& summary_path, int jobs, CLI::Option* o_jobs) {
  apply_config_file(aflags, &pflags, &jobs, o_jobs);
  const AnalysisConfig cfg = build_config(aflags);
  if (pflags.clip_length <= 0.0) pflags.clip_length = 120.0;
  const mfdfa::PartitionPlan plan{pflags.clip_start, pflags.clip_length,
                                  pflags.parts};

  const auto entries = mfdfa::load_manifest(manifest_path);
  const auto base = std::filesystem::path(manifest_path).parent_path();
  const mfdfa::BatchResult batch = mfdfa::run_batch(entries, cfg, plan, jobs, base);

  const std::string text = (oflags.format == "json")
                               ? mfdfa::records_to_json(batch.records)
                               : mfdfa::records_to_csv(batch.records);
  write_output(oflags, text);

  if (!summary_path.empty()) {
    std::ofstream out(summary_path, std::ios::trunc);
    if (!out) mfdfa::fail(errc::io_error, "cannot write " + summary_path);
    out << mfdfa::summary_to_json(mfdfa::generation_summary(batch.records));
  }

  for (const auto& f : batch.failures) {
    std::fprintf(stderr, "failed: %s", f.path.c_str());
    if (f.part_index > 0) std::fprintf(stderr, " part %d", f.part_index);
    std::fprintf(stderr, ": %s\n", f.message.c_str());
  }
  std::fprintf(stderr, "%zu records, %zu failures\n", batch.records.size(),
               batch.failures.size());
  return batch.failures.empty() ? kExitOk : kExitPartial;
}

// ----------------------------------------------------------------------------
// synth
// ----------------------------------------------------------------------------

int cmd_synth(const std::string& kind, std::size_t length, double a,
              double beta, std::uint64_t seed, int rate,
              const std::string& out_path) {
  mfdfa::Series series;
  if (kind == "binomial" || kind == "binomial_cascade") {
    series = mfdfa::binomial_cascade(length, a, seed);
  } else if (kind == "white" || kind == "white_noise") {
    series = mfdfa::white_noise(length, seed);
  } else if (kind == "powerlaw" || kind == "powerlaw_noise") {
    series = mfdfa::powerlaw_noise(length, beta, seed);
  } else {
    mfdfa::fail(errc::bad_param, "unknown kind '" + kind +
                                     "' (binomial, white, powerlaw)");
  }

  const std::string ext = std::filesystem::path(out_path).extension().string();
  if (ext == ".wav") {
    double peak = 0.0;
    for (double v : series.samples) peak = std::max(peak, std::fabs(v));
    const double scale = peak > 0.0 ? 0.999 / peak : 1.0;
    mfdfa::write_wav16(out_path, series.samples, rate, scale);
  } else if (ext == ".csv") {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) mfdfa::fail(errc::io_error, "cannot write " + out_path);
    char buf[40];
    for (double v : series.samples) {
      std::snprintf(buf, sizeof buf, "%.17g\n", v);
      out << buf;
    }
  } else {
    mfdfa::fail(errc::bad_param, "output must end in .wav or .csv");
  }
  std::fprintf(stderr, "wrote %zu samples to %s\n", series.samples.size(),
               out_path.c_str());
  return kExitOk;
}

// ----------------------------------------------------------------------------
// shuffle-test
// ----------------------------------------------------------------------------

int cmd_shuffle_test(const std::string& path, AnalysisFlags& aflags,
                     PartitionFlags& pflags, const OutputFlags& oflags,
                     int surrogates, std::uint64_t seed) {
  apply_config_file(aflags, &pflags, nullptr, nullptr);
  const AnalysisConfig cfg = build_config(aflags);
  const mfdfa::Series series = load_input_series(path, pflags, 1);
  const mfdfa::ShuffleTestResult res =
      mfdfa::shuffle_test(series, cfg, surrogates, seed);

  if (oflags.format == "json") {
    ordered_json j;
    j["input"] = series.label;
    j["n_surrogates"] = surrogates;
    j["W_original"] = mfdfa::round6(res.w_original);
    j["W_shuffled_mean"] = mfdfa::round6(res.w_shuffled_mean);
    j["W_shuffled_sd"] = mfdfa::round6(res.w_shuffled_sd);
    j["W_null_mean"] = mfdfa::round6(res.w_null_mean);
    j["W_null_sd"] = mfdfa::round6(res.w_null_sd);
    j["verdict"] = mfdfa::to_string(res.verdict);
    write_output(oflags, j.dump(2) + "\n");
  } else {
    std::printf("input             %s\n", series.label.c_str());
    std::printf("W original        %.6g\n", res.w_original);
    std::printf("W shuffled        %.6g +- %.6g  (%d surrogates)\n",
                res.w_shuffled_mean, res.w_shuffled_sd, surrogates);
    std::printf("noise floor       %.6g +- %.6g\n", res.w_null_mean, res.w_null_sd);
    std::printf("verdict           %s\n", mfdfa::to_string(res.verdict));
  }
  return kExitOk;
}

// ----------------------------------------------------------------------------
// report
// ----------------------------------------------------------------------------

int cmd_report(const std::string& results_path, const std::string& reference_path,
               const OutputFlags& oflags) {
  std::ifstream in(results_path, std::ios::binary);
  if (!in) mfdfa::fail(errc::io_error, "cannot open " + results_path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const std::vector<mfdfa::ClipRecord> records = mfdfa::records_from_csv(text);

  const auto summary = mfdfa::generation_summary(records);

  if (oflags.format == "json") {
    write_output(oflags, mfdfa::summary_to_json(summary));
  } else {
    std::printf("%-10s %-12s %4s %10s %10s %4s\n", "gharana", "artist", "gen",
                "mean W", "", "");
    std::vector<std::pair<std::string, std::pair<int, double>>> artists;
    for (const auto& r : records) {
      // collect unique artists in first-seen order
      bool seen = false;
      for (auto& a : artists)
        if (a.first == r.artist_id) seen = true;
      if (!seen)
        artists.push_back({r.artist_id, {r.generation, 0.0}});
    }
    for (auto& a : artists) {
      a.second.second = mfdfa::artist_mean_width(records, a.first);
      std::string gharana;
      for (const auto& r : records)
        if (r.artist_id == a.first) {
          gharana = r.gharana;
          break;
        }
      std::printf("%-10s %-12s %4d %10.4f\n", gharana.c_str(), a.first.c_str(),
                  a.second.first, a.second.second);
    }
    std::printf("\nper (gharana, generation):\n");
    std::printf("%-10s %4s %10s %10s %4s\n", "gharana", "gen", "mean W", "sd", "n");
    for (const auto& [key, st] : summary)
      std::printf("%-10s %4d %10.4f %10.4f %4d\n", key.first.c_str(), key.second,
                  st.mean_w, st.sd_w, st.n);
  }

  if (!reference_path.empty()) {
    const auto reference = mfdfa::load_reference_csv(reference_path, true);
    const auto cmp = mfdfa::compare_to_reference(records, reference);
    if (cmp.matched.empty()) {
      std::printf("\n0 matched against reference\n");
    } else {
      std::printf("\n%zu matched against reference:\n", cmp.matched.size());
      std::printf("%-10s %-12s %5s %10s %10s %10s\n", "gharana", "artist", "part",
                  "computed", "published", "delta");
      for (const auto& row : cmp.matched)
        std::printf("%-10s %-12s %5d %10.4f %10.4f %+10.4f\n",
                    row.gharana.c_str(), row.artist_id.c_str(), row.part_index,
                    row.computed_w, row.published_w, row.delta);
    }
    if (!cmp.unmatched_records.empty()) {
      std::printf("unmatched records:\n");
      for (const auto& key : cmp.unmatched_records)
        std::printf("  %s\n", key.c_str());
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multifractal spectral width toolkit (MFDFA)"};
  app.require_subcommand(1);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze one WAV recording");
  std::string analyze_path;
  analyze_cmd->add_option("input", analyze_path, "WAV file")->required();
  AnalysisFlags analyze_aflags;
  PartitionFlags analyze_pflags;
  OutputFlags analyze_oflags;
  int analyze_decimate = 1;
  add_analysis_flags(analyze_cmd, analyze_aflags);
  add_partition_flags(analyze_cmd, analyze_pflags, false);
  analyze_cmd->add_option("--decimate", analyze_decimate,
                          "Decimate by this factor before analysis");
  add_output_flags(analyze_cmd, analyze_oflags);

  // batch
  auto* batch_cmd = app.add_subcommand("batch", "Analyze a manifest of recordings");
  std::string batch_manifest;
  batch_cmd->add_option("manifest", batch_manifest, "Manifest JSON")->required();
  AnalysisFlags batch_aflags;
  PartitionFlags batch_pflags;
  OutputFlags batch_oflags;
  std::string batch_summary;
  int batch_jobs = 0;
  add_analysis_flags(batch_cmd, batch_aflags);
  add_partition_flags(batch_cmd, batch_pflags, true);
  add_output_flags(batch_cmd, batch_oflags);
  batch_cmd->add_option("--summary", batch_summary,
                        "Write {gharana -> generation -> stats} JSON here");
  CLI::Option* o_jobs = batch_cmd->add_option(
      "--jobs", batch_jobs, "Parallel workers; 0 = available cores");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate a test signal");
  std::string synth_kind = "white";
  std::size_t synth_length = 65536;
  double synth_a = 0.6, synth_beta = 0.8;
  std::uint64_t synth_seed = 1;
  int synth_rate = 44100;
  std::string synth_out;
  synth_cmd->add_option("--kind", synth_kind,
                        "binomial | white | powerlaw")->required();
  synth_cmd->add_option("--length", synth_length, "Number of samples");
  synth_cmd->add_option("--a", synth_a, "Cascade multiplier (binomial)");
  synth_cmd->add_option("--beta", synth_beta, "Spectral exponent (powerlaw)");
  synth_cmd->add_option("--seed", synth_seed, "Generator seed");
  synth_cmd->add_option("--rate", synth_rate, "WAV sample rate");
  synth_cmd->add_option("--out", synth_out, "Output file (.wav or .csv)")->required();

  // shuffle-test
  auto* shuffle_cmd = app.add_subcommand(
      "shuffle-test", "Shuffle surrogate test for the origin of multifractality");
  std::string shuffle_path;
  shuffle_cmd->add_option("input", shuffle_path, "WAV file")->required();
  AnalysisFlags shuffle_aflags;
  PartitionFlags shuffle_pflags;
  OutputFlags shuffle_oflags;
  int shuffle_surrogates = 8;
  std::uint64_t shuffle_seed = 1;
  add_analysis_flags(shuffle_cmd, shuffle_aflags);
  add_partition_flags(shuffle_cmd, shuffle_pflags, false);
  add_output_flags(shuffle_cmd, shuffle_oflags);
  shuffle_cmd->add_option("--surrogates", shuffle_surrogates,
                          "Number of shuffled surrogates");
  shuffle_cmd->add_option("--seed", shuffle_seed, "Surrogate seed");

  // report
  auto* report_cmd = app.add_subcommand("report", "Summaries over a results CSV");
  std::string report_results, report_reference;
  OutputFlags report_oflags;
  report_cmd->add_option("results", report_results, "Results CSV")->required();
  report_cmd->add_option("--reference", report_reference,
                         "Reference widths CSV to compare against");
  add_output_flags(report_cmd, report_oflags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*analyze_cmd)
      return cmd_analyze(analyze_path, analyze_aflags, analyze_pflags,
                         analyze_oflags, analyze_decimate);
    if (*batch_cmd)
      return cmd_batch(batch_manifest, batch_aflags, batch_pflags, batch_oflags,
                       batch_summary, batch_jobs, o_jobs);
    if (*synth_cmd)
      return cmd_synth(synth_kind, synth_length, synth_a, synth_beta, synth_seed,
                       synth_rate, synth_out);
    if (*shuffle_cmd)
      return cmd_shuffle_test(shuffle_path, shuffle_aflags, shuffle_pflags,
                              shuffle_oflags, shuffle_surrogates, shuffle_seed);
    if (*report_cmd)
      return cmd_report(report_results, report_reference, report_oflags);
  } catch (const mfdfa::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}
