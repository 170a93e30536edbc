#include "mfdfa/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <mutex>
#include <thread>

#include "json.hpp"

namespace mfdfa {

namespace {

using ordered_json = nlohmann::ordered_json;

// Pinned checksum of data/reference_widths.csv (FNV-1a/64 over file bytes).
constexpr std::uint64_t kReferenceChecksum = 0x2d5ed26fb113212eull;

std::string format6(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, const char* what) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    fail(errc::bad_param, std::string("cannot parse ") + what + " '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const char* what) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    fail(errc::bad_param, std::string("cannot parse ") + what + " '" + s + "'");
  return static_cast<int>(v);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string record_key(const ClipRecord& r) {
  return r.gharana + "/" + r.artist_id + "/part" + std::to_string(r.part_index);
}

}  // namespace

double round6(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::strtod(buf, nullptr);
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t reference_dataset_checksum() { return kReferenceChecksum; }

// ============================================================================
// Manifest
// ============================================================================

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::bad_param, "manifest is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_array()) fail(errc::bad_param, "manifest must be a JSON array");

  std::vector<ManifestEntry> entries;
  entries.reserve(doc.size());
  for (const auto& item : doc) {
    if (!item.is_object())
      fail(errc::bad_param, "manifest entries must be JSON objects");
    ManifestEntry e;
    try {
      e.path = item.at("path").get<std::string>();
      e.gharana = item.value("gharana", std::string{});
      e.artist_id = item.value("artist_id", std::string{});
      e.generation = item.value("generation", 1);
      if (item.contains("lineage") && !item["lineage"].is_null())
        e.lineage = item["lineage"].get<std::string>();
      e.clip_start_s = item.value("clip_start_s", 0.0);
    } catch (const std::exception& ex) {
      fail(errc::bad_param, "bad manifest entry: " + std::string(ex.what()));
    }
    if (e.generation < 1)
      fail(errc::bad_param, "generation must be >= 1 in manifest entry " + e.path);
    entries.push_back(std::move(e));
  }
  return entries;
}

// ============================================================================
// Batch
// ============================================================================

namespace {

void analyze_entry(const ManifestEntry& entry, const AnalysisConfig& cfg,
                   const PartitionPlan& plan,
                   const std::filesystem::path& base_dir,
                   std::vector<std::optional<ClipRecord>>& records_out,
                   std::size_t slot_base,
                   std::vector<BatchFailure>& failures_out,
                   std::mutex& failures_mutex) {
  std::filesystem::path file(entry.path);
  if (file.is_relative() && !base_dir.empty()) file = base_dir / file;

  AudioClip clip;
  try {
    clip = read_wav_file(file);
  } catch (const std::exception& e) {
    std::lock_guard<std::mutex> lock(failures_mutex);
    failures_out.push_back({entry.path, 0, e.what()});
    return;
  }

  PartitionPlan entry_plan = plan;
  entry_plan.clip_start_s = entry.clip_start_s;

  std::vector<Series> parts;
  try {
    parts = extract_parts(clip, entry_plan);
  } catch (const std::exception& e) {
    std::lock_guard<std::mutex> lock(failures_mutex);
    failures_out.push_back({entry.path, 0, e.what()});
    return;
  }

  for (std::size_t p = 0; p < parts.size(); ++p) {
    try {
      const AnalysisResult res = analyze(parts[p], cfg);
      ClipRecord rec;
      rec.gharana = entry.gharana;
      rec.artist_id = entry.artist_id;
      rec.generation = entry.generation;
      rec.lineage = entry.lineage;
      rec.part_index = static_cast<int>(p) + 1;
      rec.w = res.spectrum.width;
      rec.alpha0 = res.spectrum.alpha0;
      rec.quad_a = res.spectrum.quad.a;
      rec.quad_b = res.spectrum.quad.b;
      rec.h_q = res.hurst.q;
      rec.h_values = res.hurst.h;
      if (res.hurst.monotonicity_flagged)
        rec.diagnostics.push_back("h_not_monotone");
      if (res.spectrum.quad_degenerate)
        rec.diagnostics.push_back("quad_degenerate");
      if (res.surface.zero_segments > 0)
        rec.diagnostics.push_back(
            "zero_segments=" + std::to_string(res.surface.zero_segments));
      records_out[slot_base + p] = std::move(rec);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(failures_mutex);
      failures_out.push_back({entry.path, static_cast<int>(p) + 1, e.what()});
    }
  }
}

}  // namespace

BatchResult run_batch(std::span<const ManifestEntry> manifest,
                      const AnalysisConfig& cfg, const PartitionPlan& plan,
                      int jobs, const std::filesystem::path& base_dir) {
  cfg.validate();
  if (plan.n_parts < 1) fail(errc::bad_param, "n_parts must be >= 1");

  const std::size_t n_parts = static_cast<std::size_t>(plan.n_parts);
  std::vector<std::optional<ClipRecord>> slots(manifest.size() * n_parts);
  std::vector<BatchFailure> failures;
  std::mutex failures_mutex;

  unsigned n_workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::thread::hardware_concurrency();
  if (n_workers == 0) n_workers = 1;
  n_workers = std::min<unsigned>(n_workers,
                                 std::max<std::size_t>(manifest.size(), 1));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= manifest.size()) return;
      analyze_entry(manifest[i], cfg, plan, base_dir, slots, i * n_parts,
                    failures, failures_mutex);
    }
  };

  if (n_workers <= 1 || manifest.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  BatchResult result;
  result.records.reserve(slots.size());
  for (auto& slot : slots)
    if (slot) result.records.push_back(std::move(*slot));
  // deterministic failure order regardless of worker interleaving
  std::sort(failures.begin(), failures.end(),
            [](const BatchFailure& a, const BatchFailure& b) {
              return std::tie(a.path, a.part_index) < std::tie(b.path, b.part_index);
            });
  result.failures = std::move(failures);
  return result;
}

// ============================================================================
// Statistics
// ============================================================================

double artist_mean_width(std::span<const ClipRecord> records,
                         const std::string& artist_id) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const ClipRecord& r : records) {
    if (r.artist_id == artist_id) {
      sum += r.w;
      ++n;
    }
  }
  if (n == 0) fail(errc::unknown_artist, "no records for artist '" + artist_id + "'");
  return sum / static_cast<double>(n);
}

std::map<std::pair<std::string, int>, GenerationStats> generation_summary(
    std::span<const ClipRecord> records) {
  std::map<std::pair<std::string, int>, std::vector<double>> groups;
  for (const ClipRecord& r : records)
    groups[{r.gharana, r.generation}].push_back(r.w);

  std::map<std::pair<std::string, int>, GenerationStats> out;
  for (const auto& [key, ws] : groups) {
    GenerationStats st;
    st.n = static_cast<int>(ws.size());
    for (double w : ws) st.mean_w += w;
    st.mean_w /= static_cast<double>(ws.size());
    if (ws.size() > 1) {
      double ss = 0.0;
      for (double w : ws) ss += (w - st.mean_w) * (w - st.mean_w);
      st.sd_w = std::sqrt(ss / static_cast<double>(ws.size() - 1));
    }
    out[key] = st;
  }
  return out;
}

// ============================================================================
// Reference dataset
// ============================================================================

std::vector<ClipRecord> load_reference_csv(const std::filesystem::path& path,
                                           bool verify_hash) {
  const std::string text = read_file(path);
  if (verify_hash) {
    const std::uint64_t h = fnv1a64(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    if (h != kReferenceChecksum) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "reference dataset checksum mismatch: got %016llx, expected %016llx",
                    static_cast<unsigned long long>(h),
                    static_cast<unsigned long long>(kReferenceChecksum));
      fail(errc::reference_mismatch, buf);
    }
  }
  return records_from_csv(text);
}

Comparison compare_to_reference(std::span<const ClipRecord> records,
                                std::span<const ClipRecord> reference) {
  std::map<std::string, const ClipRecord*> ref_index;
  for (const ClipRecord& r : reference) ref_index[record_key(r)] = &r;

  Comparison out;
  std::map<std::string, bool> ref_used;
  for (const ClipRecord& r : records) {
    const auto it = ref_index.find(record_key(r));
    if (it == ref_index.end()) {
      out.unmatched_records.push_back(record_key(r));
      continue;
    }
    ref_used[it->first] = true;
    out.matched.push_back({r.gharana, r.artist_id, r.part_index, r.w,
                           it->second->w, r.w - it->second->w});
  }
  for (const auto& [key, rec] : ref_index)
    if (!ref_used.count(key)) out.unmatched_reference.push_back(key);
  return out;
}

// ============================================================================
// Serialization
// ============================================================================

std::string records_to_csv(std::span<const ClipRecord> records) {
  std::string out = "gharana,artist_id,generation,lineage,part_index,W,alpha0,quadA,quadB\n";
  for (const ClipRecord& r : records) {
    out += csv_escape(r.gharana);
    out += ',';
    out += csv_escape(r.artist_id);
    out += ',';
    out += std::to_string(r.generation);
    out += ',';
    out += csv_escape(r.lineage.value_or(""));
    out += ',';
    out += std::to_string(r.part_index);
    out += ',';
    out += format6(r.w);
    out += ',';
    out += format6(r.alpha0);
    out += ',';
    out += format6(r.quad_a);
    out += ',';
    out += format6(r.quad_b);
    out += '\n';
  }
  return out;
}

std::vector<ClipRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(errc::bad_param, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv_line(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* required : {"gharana", "artist_id", "generation", "lineage",
                               "part_index", "W"})
    if (!col.count(required))
      fail(errc::bad_param, std::string("CSV missing column '") + required + "'");

  std::vector<ClipRecord> records;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() < header.size())
      fail(errc::bad_param, "CSV row has too few fields: " + line);
    ClipRecord r;
    r.gharana = f[col["gharana"]];
    r.artist_id = f[col["artist_id"]];
    r.generation = parse_int(f[col["generation"]], "generation");
    if (!f[col["lineage"]].empty()) r.lineage = f[col["lineage"]];
    r.part_index = parse_int(f[col["part_index"]], "part_index");
    r.w = parse_double(f[col["W"]], "W");
    if (col.count("alpha0")) r.alpha0 = parse_double(f[col["alpha0"]], "alpha0");
    if (col.count("quadA")) r.quad_a = parse_double(f[col["quadA"]], "quadA");
    if (col.count("quadB")) r.quad_b = parse_double(f[col["quadB"]], "quadB");
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

ordered_json record_to_json(const ClipRecord& r) {
  ordered_json j;
  j["gharana"] = r.gharana;
  j["artist_id"] = r.artist_id;
  j["generation"] = r.generation;
  if (r.lineage)
    j["lineage"] = *r.lineage;
  else
    j["lineage"] = nullptr;
  j["part_index"] = r.part_index;
  j["W"] = round6(r.w);
  j["alpha0"] = round6(r.alpha0);
  if (std::isnan(r.quad_a)) {
    j["quadA"] = nullptr;
    j["quadB"] = nullptr;
  } else {
    j["quadA"] = round6(r.quad_a);
    j["quadB"] = round6(r.quad_b);
  }
  ordered_json h = ordered_json::object();
  for (std::size_t i = 0; i < r.h_q.size(); ++i)
    h[format6(r.h_q[i])] = round6(r.h_values[i]);
  j["h_table"] = std::move(h);
  j["diagnostics"] = r.diagnostics;
  return j;
}

}  // namespace

std::string records_to_json(std::span<const ClipRecord> records) {
  ordered_json arr = ordered_json::array();
  for (const ClipRecord& r : records) arr.push_back(record_to_json(r));
  return arr.dump(2) + "\n";
}

std::vector<ClipRecord> records_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::bad_param, "records are not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_array()) fail(errc::bad_param, "records JSON must be an array");
  std::vector<ClipRecord> records;
  records.reserve(doc.size());
  for (const auto& j : doc) {
    ClipRecord r;
    r.gharana = j.value("gharana", std::string{});
    r.artist_id = j.value("artist_id", std::string{});
    r.generation = j.value("generation", 1);
    if (j.contains("lineage") && !j["lineage"].is_null())
      r.lineage = j["lineage"].get<std::string>();
    r.part_index = j.value("part_index", 1);
    r.w = j.value("W", 0.0);
    r.alpha0 = j.value("alpha0", 0.0);
    r.quad_a = (j.contains("quadA") && !j["quadA"].is_null())
                   ? j["quadA"].get<double>()
                   : std::numeric_limits<double>::quiet_NaN();
    r.quad_b = (j.contains("quadB") && !j["quadB"].is_null())
                   ? j["quadB"].get<double>()
                   : std::numeric_limits<double>::quiet_NaN();
    if (j.contains("h_table")) {
      for (const auto& [key, value] : j["h_table"].items()) {
        r.h_q.push_back(std::strtod(key.c_str(), nullptr));
        r.h_values.push_back(value.get<double>());
      }
    }
    if (j.contains("diagnostics"))
      r.diagnostics = j["diagnostics"].get<std::vector<std::string>>();
    records.push_back(std::move(r));
  }
  return records;
}

std::string summary_to_json(
    const std::map<std::pair<std::string, int>, GenerationStats>& summary) {
  ordered_json root = ordered_json::object();
  for (const auto& [key, st] : summary) {
    ordered_json& g = root[key.first];
    ordered_json cell;
    cell["mean"] = round6(st.mean_w);
    cell["sd"] = round6(st.sd_w);
    cell["n"] = st.n;
    g[std::to_string(key.second)] = std::move(cell);
  }
  return root.dump(2) + "\n";
}

}  // namespace mfdfa
