#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ccl/dgp.hpp"
#include "ccl/errors.hpp"
#include "ccl/tuebingen.hpp"

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

ccl::PairOutcome scored_outcome(std::string id, double weight, double mean_score,
                                bool correct) {
  ccl::PairOutcome o;
  o.id = std::move(id);
  o.weight = weight;
  o.scalar = true;
  o.mean_score = mean_score;
  o.direction = mean_score < 0.0 ? ccl::Direction::XtoY : ccl::Direction::YtoX;
  o.correct = correct;
  return o;
}

}  // namespace

TEST_SUITE_BEGIN("tuebingen");

TEST_CASE("pair text parses into columns") {
  const auto cols = ccl::parse_pair_text("1.0 2.0\n3.0 4.0\n5.5 -6.25\n");
  REQUIRE(cols.size() == 2);
  CHECK(cols[0] == std::vector<double>{1.0, 3.0, 5.5});
  CHECK(cols[1] == std::vector<double>{2.0, 4.0, -6.25});
}

TEST_CASE("pair text accepts blank lines, CRLF, commas, and scientific notation") {
  const auto cols = ccl::parse_pair_text("\n1e-3,2.5E+2\r\n\n-4,0.5\r\n   \n");
  REQUIRE(cols.size() == 2);
  CHECK(cols[0] == std::vector<double>{1e-3, -4.0});
  CHECK(cols[1] == std::vector<double>{250.0, 0.5});
}

TEST_CASE("pair text reports the offending line for ragged rows") {
  try {
    (void)ccl::parse_pair_text("1 2\n3 4\n5\n");
    FAIL("expected ParseError");
  } catch (const ccl::ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("pair text reports the offending line for non-numeric tokens") {
  try {
    (void)ccl::parse_pair_text("1 2\n3 oops\n");
    FAIL("expected ParseError");
  } catch (const ccl::ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("pair text with no data rows is an error") {
  CHECK_THROWS_AS((void)ccl::parse_pair_text(""), ccl::ParseError);
  CHECK_THROWS_AS((void)ccl::parse_pair_text("  \n\t\n"), ccl::ParseError);
}

TEST_CASE("serialize_matrix round-trips exact doubles") {
  const ccl::ColumnData cols = {{1.0 / 3.0, -0.0, 1e-17, 12345678.90123},
                                {2.0, 1.0 / 7.0, -3.25, 9e99}};
  const auto back = ccl::parse_pair_text(ccl::serialize_matrix(cols));
  REQUIRE(back.size() == cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    REQUIRE(back[c].size() == cols[c].size());
    for (std::size_t r = 0; r < cols[c].size(); ++r)
      CHECK(back[c][r] == cols[c][r]);
  }
  CHECK(ccl::serialize_matrix({}) == "");
  CHECK_THROWS_AS((void)ccl::serialize_matrix({{1.0, 2.0}, {3.0}}),
                  ccl::ShapeMismatchError);
}

TEST_CASE("shipped mini benchmark loads with ranges, weights, and ids") {
  const auto bench = ccl::load_benchmark(fs::path(CCL_FIXTURE_DIR) / "tuebingen_mini");
  CHECK(bench.warnings.empty());
  REQUIRE(bench.pairs.size() == 3);

  const auto& p1 = bench.pairs[0];
  CHECK(p1.id == "0001");
  CHECK(p1.weight == 1.0);
  CHECK(p1.scalar);
  CHECK(p1.cause_cols == std::vector<std::size_t>{0});
  CHECK(p1.effect_cols == std::vector<std::size_t>{1});
  CHECK(p1.columns.size() == 2);
  CHECK(p1.columns.front().size() >= 100);

  // The second pair stores the effect in the first file column; the
  // metadata ranges point the loader at the right columns.
  const auto& p2 = bench.pairs[1];
  CHECK(p2.id == "0002");
  CHECK(p2.scalar);
  CHECK(p2.cause_cols == std::vector<std::size_t>{1});
  CHECK(p2.effect_cols == std::vector<std::size_t>{0});

  const auto& p3 = bench.pairs[2];
  CHECK(p3.id == "0003");
  CHECK(p3.weight == 0.5);
  CHECK(p3.scalar);
}

TEST_CASE("empty benchmark directory yields a warning, not an error") {
  const auto dir = fresh_dir("ccl_tuebingen_empty");
  const auto bench = ccl::load_benchmark(dir);
  CHECK(bench.pairs.empty());
  REQUIRE(bench.warnings.size() == 1);
  CHECK(bench.warnings[0].find("empty") != std::string::npos);
}

TEST_CASE("missing metadata or pair files raise IoError") {
  CHECK_THROWS_AS((void)ccl::load_benchmark(fs::temp_directory_path() /
                                            "ccl_no_such_dir_xyz"),
                  ccl::IoError);

  const auto no_meta = fresh_dir("ccl_tuebingen_nometa");
  write_file(no_meta / "stray.txt", "1 2\n");
  CHECK_THROWS_AS((void)ccl::load_benchmark(no_meta), ccl::IoError);

  const auto dangling = fresh_dir("ccl_tuebingen_dangling");
  write_file(dangling / "pairmeta.txt", "0001 1 1 2 2 1.0\n");
  CHECK_THROWS_AS((void)ccl::load_benchmark(dangling), ccl::IoError);
}

TEST_CASE("metadata validation catches malformed rows") {
  const auto dir = fresh_dir("ccl_tuebingen_badmeta");
  write_file(dir / "pair0001.txt", "1 2\n3 4\n");

  write_file(dir / "pairmeta.txt", "0001 1 1\n");  // too few columns
  CHECK_THROWS_AS((void)ccl::load_benchmark(dir), ccl::ParseError);

  write_file(dir / "pairmeta.txt", "0001 2 1 1 1 1.0\n");  // end < start
  CHECK_THROWS_AS((void)ccl::load_benchmark(dir), ccl::ParseError);

  write_file(dir / "pairmeta.txt", "0001 1 1 3 3 1.0\n");  // out of range
  CHECK_THROWS_AS((void)ccl::load_benchmark(dir), ccl::ParseError);
}

TEST_CASE("metadata ids are zero-padded and weight defaults to one") {
  const auto dir = fresh_dir("ccl_tuebingen_pad");
  write_file(dir / "pair0017.txt", "1 2\n3 4\n");
  write_file(dir / "pairmeta.txt", "17 1 1 2 2\n");
  const auto bench = ccl::load_benchmark(dir);
  REQUIRE(bench.pairs.size() == 1);
  CHECK(bench.pairs[0].id == "0017");
  CHECK(bench.pairs[0].weight == 1.0);
}

TEST_CASE("metrics: single scored pair") {
  {
    const auto m = ccl::compute_metrics({scored_outcome("0001", 2.0, -10.0, true)});
    CHECK(m.weighted_accuracy == 1.0);
    CHECK(m.unweighted_accuracy == 1.0);
    CHECK(m.auc == 1.0);  // no incorrect pairs to rank against
    REQUIRE(m.curve.size() == 1);
    CHECK(m.curve[0].pairs_included == 1);
    CHECK(m.curve[0].weighted_accuracy == 1.0);
  }
  {
    const auto m = ccl::compute_metrics({scored_outcome("0001", 2.0, 10.0, false)});
    CHECK(m.weighted_accuracy == 0.0);
    CHECK(m.unweighted_accuracy == 0.0);
    CHECK(m.auc == 0.0);
  }
}

TEST_CASE("metrics: weights, ranking curve, and AUC") {
  // Correct pair has weight 3 and the higher confidence.
  const std::vector<ccl::PairOutcome> outcomes = {
      scored_outcome("0001", 3.0, -10.0, true),
      scored_outcome("0002", 1.0, 2.0, false),
  };
  const auto m = ccl::compute_metrics(outcomes);
  CHECK(m.weighted_accuracy == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(m.unweighted_accuracy == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.auc == 1.0);  // the correct pair outranks the incorrect one
  REQUIRE(m.curve.size() == 2);
  CHECK(m.curve[0].pairs_included == 1);
  CHECK(m.curve[0].weighted_accuracy == 1.0);
  CHECK(m.curve[1].pairs_included == 2);
  CHECK(m.curve[1].weighted_accuracy == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("metrics: inverted confidence ranking and exact ties") {
  {
    // The incorrect pair is the more confident one.
    const auto m = ccl::compute_metrics({
        scored_outcome("0001", 1.0, -1.0, true),
        scored_outcome("0002", 1.0, 5.0, false),
    });
    CHECK(m.auc == 0.0);
    REQUIRE(m.curve.size() == 2);
    CHECK(m.curve[0].weighted_accuracy == 0.0);
    CHECK(m.curve[1].weighted_accuracy == doctest::Approx(0.5).epsilon(1e-15));
  }
  {
    // Exact confidence tie gets half credit and ranks by id.
    const auto m = ccl::compute_metrics({
        scored_outcome("0002", 1.0, 2.0, false),
        scored_outcome("0001", 1.0, -2.0, true),
    });
    CHECK(m.auc == doctest::Approx(0.5).epsilon(1e-15));
    REQUIRE(m.curve.size() == 2);
    CHECK(m.curve[0].weighted_accuracy == 1.0);  // "0001" wins the id tiebreak
  }
}

TEST_CASE("metrics ignore failed and skipped outcomes") {
  ccl::PairOutcome failed = scored_outcome("0009", 100.0, -50.0, true);
  failed.failed = true;
  ccl::PairOutcome multi = scored_outcome("0010", 100.0, -50.0, true);
  multi.skipped_multivariate = true;

  const auto m = ccl::compute_metrics({
      failed,
      multi,
      scored_outcome("0001", 1.0, -1.0, true),
      scored_outcome("0002", 1.0, 3.0, false),
  });
  CHECK(m.weighted_accuracy == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.curve.size() == 2);

  CHECK(ccl::compute_metrics({}).curve.empty());
  CHECK(ccl::compute_metrics({}).weighted_accuracy == 0.0);
}

TEST_CASE("run_tuebingen scores, skips, and records failures per pair") {
  ccl::DgpSpec spec;
  spec.kind = ccl::DgpKind::Cubic;
  spec.n = 160;
  spec.sigma = 0.16;
  const ccl::SampleSet sample = ccl::sample_bivariate(spec, 99);

  ccl::Benchmark bench;
  {
    ccl::PairRecord rec;
    rec.id = "0001";
    rec.columns = {sample.x, sample.y};
    rec.cause_cols = {0};
    rec.effect_cols = {1};
    rec.scalar = true;
    bench.pairs.push_back(std::move(rec));
  }
  {
    ccl::PairRecord rec;  // multivariate: skipped, never scored
    rec.id = "0002";
    rec.columns = {sample.x, sample.y, sample.x};
    rec.cause_cols = {0, 1};
    rec.effect_cols = {2};
    rec.scalar = false;
    bench.pairs.push_back(std::move(rec));
  }
  {
    ccl::PairRecord rec;  // constant effect column: scoring fails
    rec.id = "0003";
    rec.columns = {sample.x, std::vector<double>(sample.x.size(), 7.0)};
    rec.cause_cols = {0};
    rec.effect_cols = {1};
    rec.scalar = true;
    bench.pairs.push_back(std::move(rec));
  }

  ccl::TuebingenRunConfig cfg;
  cfg.run.mlp.hidden = {16, 16};
  cfg.run.train.t_max = 300;
  cfg.run.train.tau = 0.05;
  cfg.n_seeds = 2;
  cfg.master_seed = 1;

  const auto report = ccl::run_tuebingen(bench, cfg);
  REQUIRE(report.outcomes.size() == 3);
  CHECK(report.n_scored == 1);
  CHECK(report.n_skipped_multivariate == 1);
  CHECK(report.n_failed == 1);

  const auto& scored = report.outcomes[0];
  REQUIRE(scored.seed_scores.size() == 2);
  CHECK(scored.n_rows == 160);
  double mean = (scored.seed_scores[0] + scored.seed_scores[1]) / 2.0;
  CHECK(scored.mean_score == doctest::Approx(mean).epsilon(1e-15));

  CHECK(report.outcomes[1].skipped_multivariate);
  CHECK(report.outcomes[1].seed_scores.empty());
  CHECK(report.outcomes[2].failed);
  CHECK(!report.outcomes[2].error.empty());

  // Metrics must be computed from the single scored pair only.
  CHECK(report.metrics.curve.size() == 1);

  // Same config, more workers: byte-identical outcome values.
  ccl::TuebingenRunConfig par = cfg;
  par.jobs = 3;
  const auto report2 = ccl::run_tuebingen(bench, par);
  CHECK(report2.outcomes[0].seed_scores == scored.seed_scores);
  CHECK(report2.outcomes[0].mean_score == scored.mean_score);

  CHECK_THROWS_AS((void)ccl::run_tuebingen(bench, ccl::TuebingenRunConfig{
                                                      cfg.run, 0, 1, 1}),
                  ccl::InvalidConfigError);
}

TEST_SUITE_END();
