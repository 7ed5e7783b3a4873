#include "ccl/tuebingen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ccl/errors.hpp"
#include "ccl/parallel.hpp"
#include "ccl/rng.hpp"
#include "ccl/textfmt.hpp"

namespace ccl {

namespace {

constexpr std::uint64_t kPairTag = 40;

std::vector<double> parse_numeric_line(const std::string& line, std::size_t line_no) {
  std::vector<double> out;
  const char* p = line.c_str();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r' || *p == ',')) ++p;
    if (p >= end) break;
    char* after = nullptr;
    const double v = std::strtod(p, &after);
    if (after == p) throw ParseError("non-numeric token in pair file", line_no);
    out.push_back(v);
    p = after;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ColumnData parse_pair_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  ColumnData columns;
  std::size_t n_cols = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = parse_numeric_line(line, line_no);
    if (row.empty()) continue;  // blank or whitespace-only line
    if (first_row) {
      n_cols = row.size();
      columns.assign(n_cols, {});
      first_row = false;
    } else if (row.size() != n_cols) {
      throw ParseError("ragged row: expected " + std::to_string(n_cols) +
                           " columns, got " + std::to_string(row.size()),
                       line_no);
    }
    for (std::size_t c = 0; c < n_cols; ++c) columns[c].push_back(row[c]);
  }
  if (first_row) throw ParseError("pair file contains no data rows", line_no == 0 ? 1 : line_no);
  return columns;
}

ColumnData parse_pair_file(const std::filesystem::path& path) {
  return parse_pair_text(read_file(path));
}

std::string serialize_matrix(const ColumnData& columns) {
  if (columns.empty()) return "";
  const std::size_t rows = columns.front().size();
  for (const auto& col : columns)
    if (col.size() != rows) throw ShapeMismatchError("serialize_matrix: ragged columns");
  std::string out;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0) out += ' ';
      out += format_double(columns[c][r]);
    }
    out += '\n';
  }
  return out;
}

namespace {

struct MetaRow {
  std::string id;
  std::size_t cause_start, cause_end, effect_start, effect_end;  // 1-based
  double weight;
};

MetaRow parse_meta_line(const std::string& line, std::size_t line_no) {
  std::istringstream ss(line);
  std::string id;
  long cs = 0, ce = 0, es = 0, ee = 0;
  if (!(ss >> id >> cs >> ce >> es >> ee))
    throw ParseError("metadata row needs id and four range columns", line_no);
  double weight = 1.0;
  if (!(ss >> weight)) weight = 1.0;  // weight column optional, default 1.0
  if (cs < 1 || ce < cs || es < 1 || ee < es)
    throw ParseError("invalid column ranges in metadata", line_no);
  if (weight < 0.0) throw ParseError("negative weight in metadata", line_no);

  // Normalize the id to the published zero-padded form when numeric.
  std::string norm_id = id;
  if (!id.empty() && id.find_first_not_of("0123456789") == std::string::npos) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04lu", std::stoul(id));
    norm_id = buf;
  }
  return {norm_id,
          static_cast<std::size_t>(cs), static_cast<std::size_t>(ce),
          static_cast<std::size_t>(es), static_cast<std::size_t>(ee), weight};
}

}  // namespace

Benchmark load_benchmark(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(dir) || !std::filesystem::is_directory(dir))
    throw IoError("benchmark directory does not exist: " + dir.string());

  Benchmark bench;
  const auto meta_path = dir / "pairmeta.txt";
  if (!std::filesystem::exists(meta_path)) {
    if (std::filesystem::is_empty(dir)) {
      bench.warnings.push_back("empty benchmark directory: " + dir.string());
      return bench;
    }
    throw IoError("missing metadata file: " + meta_path.string());
  }

  std::istringstream meta(read_file(meta_path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(meta, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const MetaRow row = parse_meta_line(line, line_no);

    const auto pair_path = dir / ("pair" + row.id + ".txt");
    if (!std::filesystem::exists(pair_path))
      throw IoError("missing referenced pair file: " + pair_path.string());

    PairRecord rec;
    rec.id = row.id;
    rec.columns = parse_pair_file(pair_path);
    rec.weight = row.weight;
    const std::size_t n_cols = rec.columns.size();
    if (row.cause_end > n_cols || row.effect_end > n_cols)
      throw ParseError("metadata ranges exceed pair file column count", line_no);
    for (std::size_t c = row.cause_start; c <= row.cause_end; ++c)
      rec.cause_cols.push_back(c - 1);
    for (std::size_t c = row.effect_start; c <= row.effect_end; ++c)
      rec.effect_cols.push_back(c - 1);
    rec.scalar = rec.cause_cols.size() == 1 && rec.effect_cols.size() == 1;
    bench.pairs.push_back(std::move(rec));
  }
  return bench;
}

BenchmarkMetrics compute_metrics(const std::vector<PairOutcome>& outcomes) {
  BenchmarkMetrics m;
  std::vector<const PairOutcome*> scored;
  for (const auto& o : outcomes)
    if (!o.skipped_multivariate && !o.failed) scored.push_back(&o);
  if (scored.empty()) return m;

  double w_total = 0.0, w_correct = 0.0, n_correct = 0.0;
  for (const auto* o : scored) {
    w_total += o->weight;
    if (o->correct) {
      w_correct += o->weight;
      n_correct += 1.0;
    }
  }
  m.weighted_accuracy = w_total > 0.0 ? w_correct / w_total : 0.0;
  m.unweighted_accuracy = n_correct / static_cast<double>(scored.size());

  // Weighted ROC-AUC of |mean score| as a confidence ranking for
  // correctness, with tie-averaged ranks (0.5 credit for exact ties).
  double w_pos = 0.0, w_neg = 0.0, auc_sum = 0.0;
  for (const auto* a : scored) {
    if (a->correct) w_pos += a->weight;
    else w_neg += a->weight;
  }
  if (w_pos == 0.0) {
    m.auc = 0.0;
  } else if (w_neg == 0.0) {
    m.auc = 1.0;
  } else {
    for (const auto* pos : scored) {
      if (!pos->correct) continue;
      const double sp = std::abs(pos->mean_score);
      for (const auto* neg : scored) {
        if (neg->correct) continue;
        const double sn = std::abs(neg->mean_score);
        if (sp > sn) auc_sum += pos->weight * neg->weight;
        else if (sp == sn) auc_sum += 0.5 * pos->weight * neg->weight;
      }
    }
    m.auc = auc_sum / (w_pos * w_neg);
  }

  // Cumulative accuracy over pairs ranked by descending confidence.
  std::vector<const PairOutcome*> ranked = scored;
  std::sort(ranked.begin(), ranked.end(), [](const PairOutcome* a, const PairOutcome* b) {
    const double ca = std::abs(a->mean_score), cb = std::abs(b->mean_score);
    if (ca != cb) return ca > cb;
    return a->id < b->id;
  });
  double cw = 0.0, cc = 0.0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    cw += ranked[k]->weight;
    if (ranked[k]->correct) cc += ranked[k]->weight;
    m.curve.push_back({k + 1, cw > 0.0 ? cc / cw : 0.0});
  }
  return m;
}

BenchmarkReport run_tuebingen(const Benchmark& benchmark,
                              const TuebingenRunConfig& cfg) {
  if (cfg.n_seeds == 0)
    throw InvalidConfigError("run_tuebingen: n_seeds must be positive");

  BenchmarkReport report;
  report.outcomes.resize(benchmark.pairs.size());

  // Flat task list over scorable (pair, seed) combinations so --jobs
  // parallelism is deterministic: every task writes its own slot.
  struct Task {
    std::size_t pair_index;
    std::size_t seed_index;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < benchmark.pairs.size(); ++p) {
    const PairRecord& rec = benchmark.pairs[p];
    PairOutcome& out = report.outcomes[p];
    out.id = rec.id;
    out.weight = rec.weight;
    out.scalar = rec.scalar;
    out.n_rows = rec.columns.empty() ? 0 : rec.columns.front().size();
    if (!rec.scalar) {
      out.skipped_multivariate = true;
      continue;
    }
    out.seed_scores.assign(cfg.n_seeds, 0.0);
    for (std::size_t s = 0; s < cfg.n_seeds; ++s) tasks.push_back({p, s});
  }

  std::vector<std::string> task_errors(tasks.size());
  parallel_for(tasks.size(), cfg.jobs, [&](std::size_t t) {
    const auto [p, s] = tasks[t];
    const PairRecord& rec = benchmark.pairs[p];
    const std::uint64_t pair_id_num = std::strtoull(rec.id.c_str(), nullptr, 10);
    const std::uint64_t seed = derive_seed(cfg.master_seed, kPairTag, pair_id_num, s);
    try {
      const CcaScore score = score_pair(rec.columns[rec.cause_cols[0]],
                                        rec.columns[rec.effect_cols[0]], cfg.run, seed);
      report.outcomes[p].seed_scores[s] = static_cast<double>(score.score);
    } catch (const Error& e) {
      task_errors[t] = e.what();
    }
  });

  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (!task_errors[t].empty()) {
      PairOutcome& out = report.outcomes[tasks[t].pair_index];
      out.failed = true;
      if (!out.error.empty()) out.error += "; ";
      out.error += task_errors[t];
    }
  }

  for (auto& out : report.outcomes) {
    if (out.skipped_multivariate) {
      ++report.n_skipped_multivariate;
      continue;
    }
    if (out.failed) {
      ++report.n_failed;
      out.seed_scores.clear();
      continue;
    }
    double mean = 0.0;
    for (double v : out.seed_scores) mean += v;
    out.mean_score = mean / static_cast<double>(out.seed_scores.size());
    out.direction = out.mean_score < 0.0   ? Direction::XtoY
                    : out.mean_score > 0.0 ? Direction::YtoX
                                           : Direction::Undecided;
    out.correct = out.direction == Direction::XtoY;
    ++report.n_scored;
  }

  report.metrics = compute_metrics(report.outcomes);
  return report;
}

}  // namespace ccl
