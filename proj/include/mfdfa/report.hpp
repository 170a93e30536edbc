#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfdfa/audio.hpp"
#include "mfdfa/core.hpp"

namespace mfdfa {

// ============================================================================
// Batch records
// ============================================================================

/// One manifest entry: a recording plus its provenance metadata.
struct ManifestEntry {
  std::string path;
  std::string gharana;
  std::string artist_id;
  int generation = 1;
  std::optional<std::string> lineage;
  double clip_start_s = 0.0;
};

/// Parses a manifest: a JSON array of {path, gharana, artist_id, generation,
/// lineage, clip_start_s}. Relative paths resolve against the manifest's
/// directory when run_batch is given that directory as base.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

/// Analysis result for one 30-second part of one recording.
struct ClipRecord {
  std::string gharana;
  std::string artist_id;
  int generation = 1;
  std::optional<std::string> lineage;
  int part_index = 1;  ///< 1-based
  double w = 0.0;
  double alpha0 = 0.0;
  double quad_a = 0.0;
  double quad_b = 0.0;
  std::vector<double> h_q;  ///< parallel to h_values
  std::vector<double> h_values;
  std::vector<std::string> diagnostics;
};

struct BatchFailure {
  std::string path;
  int part_index = 0;  ///< 0: whole entry failed
  std::string message;
};

struct BatchResult {
  std::vector<ClipRecord> records;
  std::vector<BatchFailure> failures;
};

/// Decodes, partitions and analyzes every manifest entry. Per-entry failures
/// are collected, not fatal. Output order is manifest order x part order and
/// is independent of the worker count.
BatchResult run_batch(std::span<const ManifestEntry> manifest,
                      const AnalysisConfig& cfg, const PartitionPlan& plan,
                      int jobs = 0,
                      const std::filesystem::path& base_dir = {});

// ============================================================================
// Statistics
// ============================================================================

/// Arithmetic mean of W over the artist's records; throws unknown_artist.
double artist_mean_width(std::span<const ClipRecord> records,
                         const std::string& artist_id);

struct GenerationStats {
  double mean_w = 0.0;
  double sd_w = 0.0;
  int n = 0;
};

/// Grouped W statistics keyed by (gharana, generation); empty groups are
/// simply absent. Deterministically ordered by the map key.
std::map<std::pair<std::string, int>, GenerationStats> generation_summary(
    std::span<const ClipRecord> records);

// ============================================================================
// Reference dataset
// ============================================================================

/// Loads a reference width table (gharana, artist_id, generation, lineage,
/// part_index, W). With verify_hash set, the bytes must match the bundled
/// dataset's pinned FNV-1a checksum; mismatch is a hard error.
std::vector<ClipRecord> load_reference_csv(const std::filesystem::path& path,
                                           bool verify_hash);

/// FNV-1a/64 checksum of the bundled reference dataset.
std::uint64_t reference_dataset_checksum();

struct ComparisonRow {
  std::string gharana;
  std::string artist_id;
  int part_index = 1;
  double computed_w = 0.0;
  double published_w = 0.0;
  double delta = 0.0;  ///< computed - published
};

struct Comparison {
  std::vector<ComparisonRow> matched;
  std::vector<std::string> unmatched_records;    ///< record keys with no reference row
  std::vector<std::string> unmatched_reference;  ///< reference rows never hit
};

Comparison compare_to_reference(std::span<const ClipRecord> records,
                                std::span<const ClipRecord> reference);

// ============================================================================
// Serialization
// ============================================================================

/// CSV with exactly these columns: gharana, artist_id, generation, lineage,
/// part_index, W, alpha0, quadA, quadB. Floats are written with 6
/// significant digits; NaN serializes as an empty field.
std::string records_to_csv(std::span<const ClipRecord> records);

/// JSON mirror of the CSV plus the per-record h(q) table; stable key order,
/// floats rounded to 6 significant digits.
std::string records_to_json(std::span<const ClipRecord> records);

std::vector<ClipRecord> records_from_csv(const std::string& text);
std::vector<ClipRecord> records_from_json(const std::string& text);

/// {gharana -> generation -> {mean, sd, n}} as JSON.
std::string summary_to_json(
    const std::map<std::pair<std::string, int>, GenerationStats>& summary);

/// Rounds to 6 significant digits (the serialization contract).
double round6(double v);

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

}  // namespace mfdfa
