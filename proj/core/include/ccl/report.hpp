#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ccl/experiments.hpp"
#include "ccl/tuebingen.hpp"

namespace ccl {

// Provenance header attached to every output directory. The timestamp lives
// only here (and in report.json, which embeds the manifest verbatim); the
// CSV tables carry no volatile fields, so they are byte-identical across
// reruns and across worker counts.
struct RunManifest {
  std::string tool = "ccl";
  std::string version;       // library version
  std::string subcommand;
  std::string timestamp;     // ISO-8601 UTC, e.g. 2026-01-31T12:00:00Z
  std::uint64_t master_seed = 0;
  std::size_t jobs = 1;
  std::map<std::string, std::string> config;  // flattened key/value settings
};

// Stamps the current UTC time and the library version.
RunManifest make_manifest(std::string subcommand, std::uint64_t master_seed,
                          std::size_t jobs);

void manifest_set(RunManifest& m, const std::string& key, const std::string& value);
void manifest_set(RunManifest& m, const std::string& key, const char* value);
void manifest_set(RunManifest& m, const std::string& key, double value);
void manifest_set(RunManifest& m, const std::string& key, std::uint64_t value);
void manifest_set(RunManifest& m, const std::string& key, bool value);

std::string manifest_json(const RunManifest& m);

// JSON object of a pair decision (stable key order, round-trip numbers).
std::string cca_score_json(const CcaScore& score);

// Each writer creates `dir` if needed and emits manifest.json, the
// experiment's CSV tables and report.json; returned paths list everything
// written, manifest first. Files per experiment:
//   grid:      runs.csv, table2_dgp_totals.csv, table3_architecture_grid.csv,
//              fig2_loss_curves.csv (one row per held-out evaluation),
//              fig3_cca_scores.csv
//   boundary:  boundary_runs.csv, table4_scale_contrast.csv,
//              table7_noninjective.csv, fig4_boundary.csv
//   gradvar:   gradvar_runs.csv, table6_gradient_variance.csv
//   sweep:     sweep_summary.csv, loop_trace.csv
//   tuebingen: pairs.csv, fig5_tuebingen.csv
std::vector<std::filesystem::path> write_grid_outputs(
    const GridReport& report, const RunManifest& manifest,
    const std::filesystem::path& dir);

std::vector<std::filesystem::path> write_boundary_outputs(
    const BoundaryReport& report, const RunManifest& manifest,
    const std::filesystem::path& dir);

std::vector<std::filesystem::path> write_gradvar_outputs(
    const GradVarReport& report, const RunManifest& manifest,
    const std::filesystem::path& dir);

std::vector<std::filesystem::path> write_sweep_outputs(
    const SweepReport& report, const RunManifest& manifest,
    const std::filesystem::path& dir);

std::vector<std::filesystem::path> write_tuebingen_outputs(
    const BenchmarkReport& report, const RunManifest& manifest,
    const std::filesystem::path& dir);

}  // namespace ccl
