#include "ccl/dgp.hpp"

#include <cmath>
#include <sstream>

#include "ccl/errors.hpp"
#include "ccl/rng.hpp"
#include "ccl/textfmt.hpp"

namespace ccl {

const char* dgp_name(DgpKind kind) {
  switch (kind) {
    case DgpKind::Sin: return "sin";
    case DgpKind::Exp05: return "exp05";
    case DgpKind::Cubic: return "cubic";
    case DgpKind::Square: return "square";
    case DgpKind::Linear2x: return "linear2x";
  }
  throw InvalidConfigError("unknown DgpKind");
}

DgpKind dgp_from_name(const std::string& name) {
  if (name == "sin") return DgpKind::Sin;
  if (name == "exp05") return DgpKind::Exp05;
  if (name == "cubic") return DgpKind::Cubic;
  if (name == "square") return DgpKind::Square;
  if (name == "linear2x") return DgpKind::Linear2x;
  throw InvalidConfigError("unknown DGP name: " + name);
}

double dgp_mechanism(DgpKind kind, double x) {
  switch (kind) {
    case DgpKind::Sin: return std::sin(x);
    case DgpKind::Exp05: return std::exp(0.5 * x);
    case DgpKind::Cubic: return x * x * x;
    case DgpKind::Square: return x * x;
    case DgpKind::Linear2x: return 2.0 * x;
  }
  throw InvalidConfigError("unknown DgpKind");
}

double default_noise(DgpKind kind) {
  return kind == DgpKind::Cubic ? 0.16 : 0.1;
}

SampleSet sample_bivariate(const DgpSpec& spec, std::uint64_t seed) {
  if (spec.n < 10) throw InvalidConfigError("sample_bivariate: n must be >= 10");
  if (spec.sigma < 0.0) throw InvalidConfigError("sample_bivariate: sigma must be >= 0");
  Rng rng(seed);
  SampleSet out;
  out.kind = spec.kind;
  out.sigma = spec.sigma;
  out.seed = seed;
  out.x.resize(spec.n);
  out.y.resize(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double xi = rng.normal();
    const double eps = rng.normal();
    out.x[i] = xi;
    out.y[i] = dgp_mechanism(spec.kind, xi) + spec.sigma * eps;
  }
  return out;
}

Scm3Sample sample_scm3(const Scm3Spec& spec, std::uint64_t seed) {
  if (spec.n < 10) throw InvalidConfigError("sample_scm3: n must be >= 10");
  if (spec.sigma1 < 0.0 || spec.sigma2 < 0.0)
    throw InvalidConfigError("sample_scm3: sigmas must be >= 0");
  Rng rng(seed);
  Scm3Sample out;
  out.seed = seed;
  out.x1.resize(spec.n);
  out.x2.resize(spec.n);
  out.x3.resize(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double x1 = rng.normal();
    const double e1 = rng.normal();
    const double e2 = rng.normal();
    const double x2 = x1 * x1 + spec.sigma1 * e1;
    const double x3 = x2 + 0.5 * x1 + spec.sigma2 * e2;
    out.x1[i] = x1;
    out.x2[i] = x2;
    out.x3[i] = x3;
  }
  return out;
}

ZScored zscore(const std::vector<double>& series) {
  if (series.size() < 2)
    throw ShapeMismatchError("zscore: series must have at least 2 values");
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(series.size());
  double var = 0.0;
  for (double v : series) var += (v - mean) * (v - mean);
  var /= static_cast<double>(series.size());  // population convention
  if (var == 0.0) throw DegenerateSeriesError("zscore: constant series");
  ZScored out;
  out.mean = mean;
  out.stddev = std::sqrt(var);
  out.values.resize(series.size());
  for (std::size_t i = 0; i < series.size(); ++i)
    out.values[i] = (series[i] - mean) / out.stddev;
  return out;
}

std::vector<double> unzscore(const std::vector<double>& standardized,
                             double mean, double stddev) {
  std::vector<double> out(standardized.size());
  for (std::size_t i = 0; i < standardized.size(); ++i)
    out[i] = standardized[i] * stddev + mean;
  return out;
}

std::string sample_set_to_csv(const SampleSet& s) {
  std::string out = "x,y\n";
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    out += format_double(s.x[i]);
    out += ',';
    out += format_double(s.y[i]);
    out += '\n';
  }
  return out;
}

SampleSet sample_set_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  SampleSet out;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "x,y") throw ParseError("expected header 'x,y'", line_no);
      saw_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("expected two comma-separated values", line_no);
    try {
      std::size_t used = 0;
      const double x = std::stod(line.substr(0, comma), &used);
      const double y = std::stod(line.substr(comma + 1), &used);
      out.x.push_back(x);
      out.y.push_back(y);
    } catch (const std::exception&) {
      throw ParseError("could not parse numeric values", line_no);
    }
  }
  if (!saw_header) throw ParseError("empty input, no header", line_no == 0 ? 1 : line_no);
  return out;
}

}  // namespace ccl
