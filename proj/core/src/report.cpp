#include "ccl/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ccl/errors.hpp"
#include "ccl/textfmt.hpp"
#include "ccl/version.hpp"

namespace ccl {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_i64(std::int64_t v) { return std::to_string(v); }

std::string format_bool(bool v) { return v ? "true" : "false"; }

// Quotes a CSV field only when it contains a delimiter, quote or newline.
std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

json manifest_to_json_object(const RunManifest& m) {
  json cfg = json::object();
  for (const auto& [key, value] : m.config) cfg[key] = value;
  return json{{"tool", m.tool},
              {"version", m.version},
              {"subcommand", m.subcommand},
              {"timestamp", m.timestamp},
              {"master_seed", m.master_seed},
              {"jobs", m.jobs},
              {"config", cfg}};
}

// Emits manifest.json into `dir` (created if needed); returns its path.
fs::path write_manifest(const RunManifest& manifest, const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path path = dir / "manifest.json";
  write_text_file(path, manifest_to_json_object(manifest).dump(2) + "\n");
  return path;
}

fs::path write_report_json(const RunManifest& manifest, json body,
                           const fs::path& dir) {
  body["manifest"] = manifest_to_json_object(manifest);
  const fs::path path = dir / "report.json";
  write_text_file(path, body.dump(2) + "\n");
  return path;
}

// Columns shared by every per-run table.
constexpr const char* kRunHeader =
    "dgp,arch,seed,t_fwd,t_rev,score,direction,correct,"
    "fwd_capped,rev_capped,fwd_diverged,rev_diverged,normalized";

void append_run_row(std::string& out, const RunRecord& r) {
  out += r.dgp;
  out += ',';
  out += r.arch;
  out += ',';
  out += format_u64(r.seed_index);
  out += ',';
  out += format_u64(r.score.t_fwd);
  out += ',';
  out += format_u64(r.score.t_rev);
  out += ',';
  out += format_i64(r.score.score);
  out += ',';
  out += direction_name(r.score.direction);
  out += ',';
  out += format_bool(r.correct);
  out += ',';
  out += format_bool(r.score.fwd_capped);
  out += ',';
  out += format_bool(r.score.rev_capped);
  out += ',';
  out += format_bool(r.score.fwd_diverged);
  out += ',';
  out += format_bool(r.score.rev_diverged);
  out += ',';
  out += format_bool(r.score.normalized);
  out += '\n';
}

// One row per held-out evaluation of one trained model ("fwd" fits the
// listed cause->effect regression, "rev" the reverse).
void append_curve_rows(std::string& out, const RunRecord& r,
                       std::uint64_t eval_every) {
  const auto emit = [&](const char* model, const TrainTrace& trace) {
    for (std::size_t k = 0; k < trace.holdout_mse.size(); ++k) {
      out += r.dgp;
      out += ',';
      out += r.arch;
      out += ',';
      out += format_u64(r.seed_index);
      out += ',';
      out += model;
      out += ',';
      out += format_u64(static_cast<std::uint64_t>(k + 1) * eval_every);
      out += ',';
      out += format_double(trace.holdout_mse[k]);
      out += '\n';
    }
  };
  emit("fwd", r.fwd_trace);
  emit("rev", r.rev_trace);
}

json run_record_json(const RunRecord& r) {
  return json{{"dgp", r.dgp},
              {"arch", r.arch},
              {"seed", r.seed_index},
              {"t_fwd", r.score.t_fwd},
              {"t_rev", r.score.t_rev},
              {"score", r.score.score},
              {"direction", direction_name(r.score.direction)},
              {"correct", r.correct}};
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  if (v.size() % 2 == 1) return v[mid];
  return 0.5 * (v[mid - 1] + v[mid]);
}

std::string compact_edge_list(const Dag& dag) {
  std::string out;
  for (const auto& [from, to] : dag.edges) {
    if (!out.empty()) out += ';';
    out += format_u64(from);
    out += "->";
    out += format_u64(to);
  }
  return out;
}

json scale_contrast_json(const ScaleContrastRow& row) {
  return json{{"variant", row.variant},
              {"mean_t_fwd", row.mean_t_fwd},
              {"sd_t_fwd", row.sd_t_fwd},
              {"mean_t_rev", row.mean_t_rev},
              {"sd_t_rev", row.sd_t_rev},
              {"n_correct", row.n_correct},
              {"n_total", row.n_total}};
}

}  // namespace

RunManifest make_manifest(std::string subcommand, std::uint64_t master_seed,
                          std::size_t jobs) {
  RunManifest m;
  m.version = kVersion;
  m.subcommand = std::move(subcommand);
  m.master_seed = master_seed;
  m.jobs = jobs;

  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  m.timestamp = buf;
  return m;
}

void manifest_set(RunManifest& m, const std::string& key,
                  const std::string& value) {
  m.config[key] = value;
}

void manifest_set(RunManifest& m, const std::string& key, const char* value) {
  m.config[key] = value;
}

void manifest_set(RunManifest& m, const std::string& key, double value) {
  m.config[key] = format_double(value);
}

void manifest_set(RunManifest& m, const std::string& key, std::uint64_t value) {
  m.config[key] = format_u64(value);
}

void manifest_set(RunManifest& m, const std::string& key, bool value) {
  m.config[key] = format_bool(value);
}

std::string manifest_json(const RunManifest& m) {
  return manifest_to_json_object(m).dump(2) + "\n";
}

std::string cca_score_json(const CcaScore& score) {
  const json j{{"t_fwd", score.t_fwd},
               {"t_rev", score.t_rev},
               {"score", score.score},
               {"direction", direction_name(score.direction)},
               {"fwd_capped", score.fwd_capped},
               {"rev_capped", score.rev_capped},
               {"fwd_diverged", score.fwd_diverged},
               {"rev_diverged", score.rev_diverged},
               {"normalized", score.normalized}};
  return j.dump(2) + "\n";
}

std::vector<fs::path> write_grid_outputs(const GridReport& report,
                                         const RunManifest& manifest,
                                         const fs::path& dir) {
  std::vector<fs::path> written;
  written.push_back(write_manifest(manifest, dir));

  std::string runs = std::string(kRunHeader) + "\n";
  std::string curves = "dgp,arch,seed,model,step,holdout_mse\n";
  std::string scores = "dgp,arch,seed,score\n";
  for (const RunRecord& r : report.runs) {
    append_run_row(runs, r);
    append_curve_rows(curves, r, report.config.train.eval_every);
    scores += r.dgp;
    scores += ',';
    scores += r.arch;
    scores += ',';
    scores += format_u64(r.seed_index);
    scores += ',';
    scores += format_i64(r.score.score);
    scores += '\n';
  }

  std::string totals = "dgp,n_correct,n_total\n";
  for (const DgpTotal& t : report.dgp_totals)
    totals += t.dgp + ',' + format_u64(t.n_correct) + ',' +
              format_u64(t.n_total) + '\n';

  std::string cells = "dgp,arch,n_correct,n_total\n";
  for (const ArchCell& c : report.arch_cells)
    cells += c.dgp + ',' + c.arch + ',' + format_u64(c.n_correct) + ',' +
             format_u64(c.n_total) + '\n';

  const struct {
    const char* name;
    const std::string* text;
  } files[] = {{"runs.csv", &runs},
               {"table2_dgp_totals.csv", &totals},
               {"table3_architecture_grid.csv", &cells},
               {"fig2_loss_curves.csv", &curves},
               {"fig3_cca_scores.csv", &scores}};
  for (const auto& f : files) {
    const fs::path path = dir / f.name;
    write_text_file(path, *f.text);
    written.push_back(path);
  }

  json totals_json = json::array();
  for (const DgpTotal& t : report.dgp_totals)
    totals_json.push_back(
        {{"dgp", t.dgp}, {"n_correct", t.n_correct}, {"n_total", t.n_total}});
  json cells_json = json::array();
  for (const ArchCell& c : report.arch_cells)
    cells_json.push_back({{"dgp", c.dgp},
                          {"arch", c.arch},
                          {"n_correct", c.n_correct},
                          {"n_total", c.n_total}});
  written.push_back(write_report_json(
      manifest,
      json{{"n_runs", report.runs.size()},
           {"dgp_totals", totals_json},
           {"architecture_grid", cells_json}},
      dir));
  return written;
}

std::vector<fs::path> write_boundary_outputs(const BoundaryReport& report,
                                             const RunManifest& manifest,
                                             const fs::path& dir) {
  std::vector<fs::path> written;
  written.push_back(write_manifest(manifest, dir));

  const struct {
    const char* experiment;
    const std::vector<RunRecord>* runs;
  } groups[] = {{"linear_gaussian", &report.linear},
                {"noninjective", &report.square},
                {"cubic_raw", &report.cubic_raw},
                {"cubic_zscored", &report.cubic_z}};

  std::string runs = std::string("experiment,") + kRunHeader + "\n";
  std::string fig = "experiment,seed,score\n";
  for (const auto& g : groups) {
    for (const RunRecord& r : *g.runs) {
      runs += g.experiment;
      runs += ',';
      append_run_row(runs, r);
      fig += g.experiment;
      fig += ',';
      fig += format_u64(r.seed_index);
      fig += ',';
      fig += format_i64(r.score.score);
      fig += '\n';
    }
  }

  std::string contrast =
      "variant,mean_t_fwd,sd_t_fwd,mean_t_rev,sd_t_rev,n_correct,n_total\n";
  for (const ScaleContrastRow& row : report.scale_contrast) {
    contrast += row.variant;
    contrast += ',';
    contrast += format_double(row.mean_t_fwd);
    contrast += ',';
    contrast += format_double(row.sd_t_fwd);
    contrast += ',';
    contrast += format_double(row.mean_t_rev);
    contrast += ',';
    contrast += format_double(row.sd_t_rev);
    contrast += ',';
    contrast += format_u64(row.n_correct);
    contrast += ',';
    contrast += format_u64(row.n_total);
    contrast += '\n';
  }

  std::string noninj =
      "seed,t_fwd,t_rev,score,direction,rev_capped\n";
  for (const RunRecord& r : report.square) {
    noninj += format_u64(r.seed_index);
    noninj += ',';
    noninj += format_u64(r.score.t_fwd);
    noninj += ',';
    noninj += format_u64(r.score.t_rev);
    noninj += ',';
    noninj += format_i64(r.score.score);
    noninj += ',';
    noninj += direction_name(r.score.direction);
    noninj += ',';
    noninj += format_bool(r.score.rev_capped);
    noninj += '\n';
  }

  const struct {
    const char* name;
    const std::string* text;
  } files[] = {{"boundary_runs.csv", &runs},
               {"table4_scale_contrast.csv", &contrast},
               {"table7_noninjective.csv", &noninj},
               {"fig4_boundary.csv", &fig}};
  for (const auto& f : files) {
    const fs::path path = dir / f.name;
    write_text_file(path, *f.text);
    written.push_back(path);
  }

  // Aggregates answering the three boundary questions directly.
  std::size_t linear_correct = 0;
  double linear_abs_sum = 0.0;
  for (const RunRecord& r : report.linear) {
    if (r.correct) ++linear_correct;
    linear_abs_sum += std::abs(static_cast<double>(r.score.score));
  }
  std::size_t square_wrong = 0;
  std::vector<double> square_t_rev;
  for (const RunRecord& r : report.square) {
    if (!r.correct) ++square_wrong;
    square_t_rev.push_back(static_cast<double>(r.score.t_rev));
  }
  json contrast_json = json::array();
  for (const ScaleContrastRow& row : report.scale_contrast)
    contrast_json.push_back(scale_contrast_json(row));

  const std::size_t n = report.linear.size();
  written.push_back(write_report_json(
      manifest,
      json{{"linear_gaussian",
            {{"n_correct", linear_correct},
             {"n_total", n},
             {"mean_abs_score",
              n == 0 ? 0.0 : linear_abs_sum / static_cast<double>(n)}}},
           {"noninjective",
            {{"n_wrong", square_wrong},
             {"n_total", report.square.size()},
             {"median_t_rev", median(square_t_rev)}}},
           {"scale_contrast", contrast_json}},
      dir));
  return written;
}

std::vector<fs::path> write_gradvar_outputs(const GradVarReport& report,
                                            const RunManifest& manifest,
                                            const fs::path& dir) {
  std::vector<fs::path> written;
  written.push_back(write_manifest(manifest, dir));

  std::string runs = "dgp,normalized,phase,seed,var_fwd,var_rev,ratio\n";
  for (const GradVarCell& c : report.cells) {
    runs += c.dgp;
    runs += ',';
    runs += format_bool(c.normalized);
    runs += ',';
    runs += format_u64(c.phase);
    runs += ',';
    runs += format_u64(c.seed_index);
    runs += ',';
    runs += format_double(c.var_fwd);
    runs += ',';
    runs += format_double(c.var_rev);
    runs += ',';
    runs += format_double(c.ratio);
    runs += '\n';
  }

  std::string table = "dgp,normalized,phase,mean_ratio\n";
  for (const GradVarSummary& s : report.summaries) {
    table += s.dgp;
    table += ',';
    table += format_bool(s.normalized);
    table += ',';
    table += format_u64(s.phase);
    table += ',';
    table += format_double(s.mean_ratio);
    table += '\n';
  }

  const struct {
    const char* name;
    const std::string* text;
  } files[] = {{"gradvar_runs.csv", &runs},
               {"table6_gradient_variance.csv", &table}};
  for (const auto& f : files) {
    const fs::path path = dir / f.name;
    write_text_file(path, *f.text);
    written.push_back(path);
  }

  json summaries = json::array();
  for (const GradVarSummary& s : report.summaries)
    summaries.push_back({{"dgp", s.dgp},
                         {"normalized", s.normalized},
                         {"phase", s.phase},
                         {"mean_ratio", s.mean_ratio}});
  written.push_back(
      write_report_json(manifest, json{{"summaries", summaries}}, dir));
  return written;
}

std::vector<fs::path> write_sweep_outputs(const SweepReport& report,
                                          const RunManifest& manifest,
                                          const fs::path& dir) {
  std::vector<fs::path> written;
  written.push_back(write_manifest(manifest, dir));

  std::string summary =
      "lambda2,objective_initial,objective_final,iterations,monotone,"
      "spurious_edges,final_edges\n";
  for (const SweepRow& row : report.rows) {
    summary += format_double(row.lambda2);
    summary += ',';
    summary += format_double(row.objective_initial);
    summary += ',';
    summary += format_double(row.objective_final);
    summary += ',';
    summary += format_u64(row.iterations);
    summary += ',';
    summary += format_bool(row.monotone);
    summary += ',';
    summary += format_u64(row.spurious_edges);
    summary += ',';
    summary += csv_escape(compact_edge_list(row.final_graph));
    summary += '\n';
  }

  std::string trace_csv = "lambda2,point,objective,n_edges,spurious\n";
  for (std::size_t i = 0; i < report.traces.size(); ++i) {
    const LoopTrace& trace = report.traces[i];
    for (std::size_t k = 0; k < trace.objectives.size(); ++k) {
      trace_csv += format_double(report.rows[i].lambda2);
      trace_csv += ',';
      trace_csv += format_u64(k);
      trace_csv += ',';
      trace_csv += format_double(trace.objectives[k]);
      trace_csv += ',';
      trace_csv += format_u64(trace.graphs[k].edges.size());
      trace_csv += ',';
      trace_csv += format_u64(k < trace.spurious.size() ? trace.spurious[k] : 0);
      trace_csv += '\n';
    }
  }

  const struct {
    const char* name;
    const std::string* text;
  } files[] = {{"sweep_summary.csv", &summary}, {"loop_trace.csv", &trace_csv}};
  for (const auto& f : files) {
    const fs::path path = dir / f.name;
    write_text_file(path, *f.text);
    written.push_back(path);
  }

  json rows_json = json::array();
  for (const SweepRow& row : report.rows)
    rows_json.push_back({{"lambda2", row.lambda2},
                         {"objective_initial", row.objective_initial},
                         {"objective_final", row.objective_final},
                         {"iterations", row.iterations},
                         {"monotone", row.monotone},
                         {"spurious_edges", row.spurious_edges},
                         {"final_edges", compact_edge_list(row.final_graph)}});
  written.push_back(write_report_json(
      manifest,
      json{{"truth_edges", compact_edge_list(report.truth)},
           {"rows", rows_json}},
      dir));
  return written;
}

std::vector<fs::path> write_tuebingen_outputs(const BenchmarkReport& report,
                                              const RunManifest& manifest,
                                              const fs::path& dir) {
  std::vector<fs::path> written;
  written.push_back(write_manifest(manifest, dir));

  std::string pairs =
      "id,weight,n_rows,scalar,skipped_multivariate,failed,mean_score,"
      "direction,correct,error\n";
  for (const PairOutcome& o : report.outcomes) {
    pairs += o.id;
    pairs += ',';
    pairs += format_double(o.weight);
    pairs += ',';
    pairs += format_u64(o.n_rows);
    pairs += ',';
    pairs += format_bool(o.scalar);
    pairs += ',';
    pairs += format_bool(o.skipped_multivariate);
    pairs += ',';
    pairs += format_bool(o.failed);
    pairs += ',';
    pairs += format_double(o.mean_score);
    pairs += ',';
    pairs += direction_name(o.direction);
    pairs += ',';
    pairs += format_bool(o.correct);
    pairs += ',';
    pairs += csv_escape(o.error);
    pairs += '\n';
  }

  std::string curve = "pairs_included,weighted_accuracy\n";
  for (const CurvePoint& p : report.metrics.curve) {
    curve += format_u64(p.pairs_included);
    curve += ',';
    curve += format_double(p.weighted_accuracy);
    curve += '\n';
  }

  const struct {
    const char* name;
    const std::string* text;
  } files[] = {{"pairs.csv", &pairs}, {"fig5_tuebingen.csv", &curve}};
  for (const auto& f : files) {
    const fs::path path = dir / f.name;
    write_text_file(path, *f.text);
    written.push_back(path);
  }

  written.push_back(write_report_json(
      manifest,
      json{{"n_scored", report.n_scored},
           {"n_skipped_multivariate", report.n_skipped_multivariate},
           {"n_failed", report.n_failed},
           {"metrics",
            {{"weighted_accuracy", report.metrics.weighted_accuracy},
             {"unweighted_accuracy", report.metrics.unweighted_accuracy},
             {"auc", report.metrics.auc}}}},
      dir));
  return written;
}

}  // namespace ccl
