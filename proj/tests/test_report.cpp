#include <cmath>
#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mfdfa/audio.hpp"
#include "mfdfa/report.hpp"
#include "mfdfa/synth.hpp"

using namespace mfdfa;
namespace fs = std::filesystem;

namespace {

const char* kReferencePath = MFDFA_REFERENCE_CSV;

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("mfdfa_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  out << text;
}

std::vector<ClipRecord> reference() {
  return load_reference_csv(kReferencePath, true);
}

}  // namespace

TEST_SUITE_BEGIN("report");

// ---------------------------------------------------------------------------
// reference dataset
// ---------------------------------------------------------------------------

TEST_CASE("bundled reference has 25 artists and 100 width cells") {
  const auto ref = reference();
  CHECK(ref.size() == 100);
  std::vector<std::string> artists;
  for (const auto& r : ref)
    if (std::find(artists.begin(), artists.end(), r.artist_id) == artists.end())
      artists.push_back(r.artist_id);
  CHECK(artists.size() == 25);
  for (const auto& r : ref) {
    CHECK(r.w >= 0.0);
    CHECK(r.part_index >= 1);
    CHECK(r.part_index <= 4);
    CHECK(r.generation >= 1);
  }
}

TEST_CASE("tampered reference bytes fail the checksum gate") {
  std::ifstream in(kReferencePath);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  text[text.size() - 2] = '9';
  const fs::path tampered = temp_dir() / "tampered.csv";
  write_text(tampered, text);
  try {
    load_reference_csv(tampered, true);
    FAIL("expected reference_mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == errc::reference_mismatch);
  }
  // without verification it parses fine
  CHECK(load_reference_csv(tampered, false).size() == 100);
}

TEST_CASE("artist means match the published tables") {
  const auto ref = reference();
  CHECK(artist_mean_width(ref, "agra_1") == doctest::Approx(0.3825).epsilon(1e-12));
  CHECK(artist_mean_width(ref, "kirana_5") == doctest::Approx(0.895).epsilon(1e-12));
  CHECK(artist_mean_width(ref, "gwalior_4") == doctest::Approx(0.4375).epsilon(1e-12));
  CHECK(artist_mean_width(ref, "patiala_2") == doctest::Approx(0.7025).epsilon(1e-12));
}

TEST_CASE("unknown artists raise, single records pass through") {
  const auto ref = reference();
  try {
    artist_mean_width(ref, "nobody");
    FAIL("expected unknown_artist");
  } catch (const Error& e) {
    CHECK(e.code() == errc::unknown_artist);
  }
  std::vector<ClipRecord> one{ref[0]};
  CHECK(artist_mean_width(one, ref[0].artist_id) == ref[0].w);
}

TEST_CASE("generation summary reproduces the published grouped means") {
  const auto summary = generation_summary(reference());
  CHECK(summary.at({"Gwalior", 4}).mean_w == doctest::Approx(0.4375).epsilon(1e-12));
  CHECK(summary.at({"Patiala", 2}).mean_w == doctest::Approx(0.7025).epsilon(1e-12));
  CHECK(summary.at({"Patiala", 4}).mean_w == doctest::Approx(0.3375).epsilon(1e-12));
  CHECK(summary.at({"Patiala", 2}).mean_w > summary.at({"Patiala", 4}).mean_w);
  CHECK(summary.at({"Agra", 2}).n == 16);
  CHECK(summary.count({"Agra", 5}) == 0);  // empty groups are absent
}

TEST_CASE("summary means equal brute-force recomputation from emitted CSV") {
  const auto ref = reference();
  const auto parsed = records_from_csv(records_to_csv(ref));
  REQUIRE(parsed.size() == ref.size());
  const auto summary = generation_summary(parsed);
  for (const auto& [key, st] : summary) {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : parsed)
      if (r.gharana == key.first && r.generation == key.second) {
        sum += r.w;
        ++n;
      }
    CHECK(st.n == n);
    CHECK(st.mean_w == doctest::Approx(sum / n).epsilon(1e-12));
  }
}

// ---------------------------------------------------------------------------
// compare_to_reference
// ---------------------------------------------------------------------------

TEST_CASE("perfect match yields all-zero deltas") {
  const auto ref = reference();
  const auto cmp = compare_to_reference(ref, ref);
  CHECK(cmp.matched.size() == 100);
  CHECK(cmp.unmatched_records.empty());
  CHECK(cmp.unmatched_reference.empty());
  for (const auto& row : cmp.matched) CHECK(row.delta == 0.0);
}

TEST_CASE("missing keys are listed as unmatched") {
  auto ref = reference();
  std::vector<ClipRecord> mine{ref[0], ref[1]};
  mine[1].artist_id = "someone_else";
  const auto cmp = compare_to_reference(mine, ref);
  CHECK(cmp.matched.size() == 1);
  REQUIRE(cmp.unmatched_records.size() == 1);
  CHECK(cmp.unmatched_records[0].find("someone_else") != std::string::npos);
  CHECK(cmp.unmatched_reference.size() == 99);
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

TEST_CASE("zero records emit a header-only CSV") {
  CHECK(records_to_csv({}) ==
        "gharana,artist_id,generation,lineage,part_index,W,alpha0,quadA,quadB\n");
}

TEST_CASE("six significant digits: 0.3825 stays 0.3825") {
  ClipRecord r;
  r.gharana = "Agra";
  r.artist_id = "agra_1";
  r.generation = 1;
  r.lineage = "1";
  r.part_index = 1;
  r.w = 0.3825;
  r.alpha0 = 1.234567891;
  r.quad_a = -3.14159265;
  r.quad_b = 0.0001234567;
  const std::string csv = records_to_csv(std::vector<ClipRecord>{r});
  CHECK(csv.find(",0.3825,") != std::string::npos);
  CHECK(csv.find("1.23457") != std::string::npos);   // rounded to 6 digits
  CHECK(csv.find("-3.14159,") != std::string::npos);
  CHECK(round6(0.3825) == 0.3825);
}

TEST_CASE("JSON round-trip reproduces the records") {
  auto ref = reference();
  ref.resize(8);
  ref[0].h_q = {-2.0, 0.0, 2.0};
  ref[0].h_values = {1.1, 1.0, 0.9};
  ref[0].diagnostics = {"h_not_monotone"};
  const auto back = records_from_json(records_to_json(ref));
  REQUIRE(back.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(back[i].gharana == ref[i].gharana);
    CHECK(back[i].artist_id == ref[i].artist_id);
    CHECK(back[i].generation == ref[i].generation);
    CHECK(back[i].lineage == ref[i].lineage);
    CHECK(back[i].part_index == ref[i].part_index);
    CHECK(back[i].w == doctest::Approx(ref[i].w).epsilon(1e-12));
  }
  CHECK(back[0].h_q == ref[0].h_q);
  CHECK(back[0].h_values == std::vector<double>{1.1, 1.0, 0.9});
  CHECK(back[0].diagnostics == ref[0].diagnostics);
}

TEST_CASE("malformed CSV is rejected") {
  CHECK_THROWS_AS(records_from_csv("not,a,results\nfile,at,all\n"), Error);
  CHECK_THROWS_AS(records_from_csv(""), Error);
  CHECK_THROWS_AS(
      records_from_csv("gharana,artist_id,generation,lineage,part_index,W\n"
                       "Agra,a1,one,x,1,0.5\n"),
      Error);
}

TEST_CASE("quoted fields survive the CSV round trip") {
  ClipRecord r;
  r.gharana = "Agra, senior";
  r.artist_id = "artist \"prime\"";
  r.generation = 2;
  r.part_index = 3;
  r.w = 0.5;
  const auto back = records_from_csv(records_to_csv(std::vector<ClipRecord>{r}));
  REQUIRE(back.size() == 1);
  CHECK(back[0].gharana == "Agra, senior");
  CHECK(back[0].artist_id == "artist \"prime\"");
}

// ---------------------------------------------------------------------------
// manifest + batch
// ---------------------------------------------------------------------------

namespace {

fs::path make_batch_fixture() {
  const fs::path dir = temp_dir();
  // two 5-second recordings at 8192 Hz
  for (int i = 0; i < 2; ++i) {
    const Series x = powerlaw_noise(8192 * 5, 0.8, 40 + static_cast<std::uint64_t>(i));
    double peak = 0.0;
    for (double v : x.samples) peak = std::max(peak, std::fabs(v));
    write_wav16(dir / ("clip" + std::to_string(i) + ".wav"), x.samples, 8192,
                0.99 / peak);
  }
  const std::string manifest = R"([
    {"path": "clip0.wav", "gharana": "TestG", "artist_id": "t1",
     "generation": 1, "lineage": "1", "clip_start_s": 0.5},
    {"path": "clip1.wav", "gharana": "TestG", "artist_id": "t2",
     "generation": 2, "lineage": null, "clip_start_s": 0.0}
  ])";
  write_text(dir / "manifest.json", manifest);
  return dir / "manifest.json";
}

AnalysisConfig batch_cfg() {
  AnalysisConfig cfg;
  cfg.width_method = WidthMethod::endpoint_span;
  return cfg;
}

}  // namespace

TEST_CASE("manifest parsing") {
  const fs::path path = make_batch_fixture();
  const auto entries = load_manifest(path);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].path == "clip0.wav");
  CHECK(entries[0].gharana == "TestG");
  CHECK(entries[0].generation == 1);
  CHECK(entries[0].lineage == std::optional<std::string>("1"));
  CHECK(entries[0].clip_start_s == 0.5);
  CHECK_FALSE(entries[1].lineage.has_value());

  const fs::path bad = temp_dir() / "bad_manifest.json";
  write_text(bad, "{\"not\": \"an array\"}");
  CHECK_THROWS_AS(load_manifest(bad), Error);
}

TEST_CASE("batch produces one record per (entry, part)") {
  const fs::path manifest_path = make_batch_fixture();
  const auto entries = load_manifest(manifest_path);
  const PartitionPlan plan{0.0, 4.0, 4};
  const BatchResult batch = run_batch(entries, batch_cfg(), plan, 1,
                                      manifest_path.parent_path());
  CHECK(batch.failures.empty());
  REQUIRE(batch.records.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(batch.records[i].artist_id == (i < 4 ? "t1" : "t2"));
    CHECK(batch.records[i].part_index == static_cast<int>(i % 4) + 1);
    CHECK(batch.records[i].w > 0.0);
    CHECK(batch.records[i].h_q.size() == 41);
  }
}

TEST_CASE("empty manifest gives empty output") {
  const BatchResult batch = run_batch({}, batch_cfg(), PartitionPlan{}, 1, {});
  CHECK(batch.records.empty());
  CHECK(batch.failures.empty());
}

TEST_CASE("per-file failures are collected and the batch continues") {
  const fs::path manifest_path = make_batch_fixture();
  auto entries = load_manifest(manifest_path);
  ManifestEntry missing;
  missing.path = "missing.wav";
  missing.artist_id = "ghost";
  entries.insert(entries.begin(), missing);
  const PartitionPlan plan{0.0, 4.0, 4};
  const BatchResult batch = run_batch(entries, batch_cfg(), plan, 2,
                                      manifest_path.parent_path());
  CHECK(batch.records.size() == 8);  // the two good entries
  REQUIRE(batch.failures.size() == 1);
  CHECK(batch.failures[0].path == "missing.wav");
}

TEST_CASE("batch output is independent of the worker count") {
  const fs::path manifest_path = make_batch_fixture();
  const auto entries = load_manifest(manifest_path);
  const PartitionPlan plan{0.0, 4.0, 4};
  const BatchResult a = run_batch(entries, batch_cfg(), plan, 1,
                                  manifest_path.parent_path());
  const BatchResult b = run_batch(entries, batch_cfg(), plan, 4,
                                  manifest_path.parent_path());
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].w == b.records[i].w);
    CHECK(a.records[i].artist_id == b.records[i].artist_id);
    CHECK(a.records[i].h_values == b.records[i].h_values);
  }
  CHECK(records_to_csv(a.records) == records_to_csv(b.records));
}

TEST_SUITE_END();
