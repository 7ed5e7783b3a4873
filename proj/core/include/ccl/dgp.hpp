#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ccl {

// Bivariate additive-noise generators: x ~ N(0,1), y = f(x) + sigma * eps,
// eps ~ N(0,1). The generating direction is x -> y by construction.
enum class DgpKind : std::uint8_t { Sin, Exp05, Cubic, Square, Linear2x };

const char* dgp_name(DgpKind kind);
DgpKind dgp_from_name(const std::string& name);  // throws InvalidConfigError

// f is injective on the bulk of the input distribution for Sin (treated as
// such in the study), globally for Exp05/Cubic/Linear2x, and deliberately
// non-injective for Square.
double dgp_mechanism(DgpKind kind, double x);

// Default noise level per mechanism. The convergence threshold is relative
// to unit variance after z-scoring, so one noise level cannot place every
// mechanism in its documented regime: the cubic's reverse (cube-root) fit
// has a conditional-variance floor of ~0.04 at sigma = 0.1, below the 0.05
// threshold; at 0.16 the floor is ~0.06 and the reverse stalls as intended
// while both forward floors stay far below threshold.
double default_noise(DgpKind kind);

struct DgpSpec {
  DgpKind kind = DgpKind::Cubic;
  std::size_t n = 1000;   // >= 10
  double sigma = 0.1;     // noise standard deviation, >= 0
};

struct SampleSet {
  std::vector<double> x;
  std::vector<double> y;
  DgpKind kind = DgpKind::Cubic;
  double sigma = 0.1;
  std::uint64_t seed = 0;
};

// Draws x_i then eps_i from one documented stream (interleaved per sample).
SampleSet sample_bivariate(const DgpSpec& spec, std::uint64_t seed);

// Three-variable ground-truth SCM:
//   x1 ~ N(0,1); x2 = x1^2 + sigma1*eps1; x3 = x2 + 0.5*x1 + sigma2*eps2.
// True edge set: {x1->x2, x2->x3, x1->x3}.
struct Scm3Spec {
  std::size_t n = 1000;
  double sigma1 = 0.1;
  double sigma2 = 0.1;
};

struct Scm3Sample {
  std::vector<double> x1;
  std::vector<double> x2;
  std::vector<double> x3;
  std::uint64_t seed = 0;
};

Scm3Sample sample_scm3(const Scm3Spec& spec, std::uint64_t seed);

// z-scoring with the population (1/n) variance convention.
struct ZScored {
  std::vector<double> values;
  double mean = 0.0;
  double stddev = 1.0;
};

// Throws DegenerateSeriesError on constant input, ShapeMismatchError on
// series shorter than 2.
ZScored zscore(const std::vector<double>& series);

// Inverse transform; restores the original scale of a standardized series.
std::vector<double> unzscore(const std::vector<double>& standardized,
                             double mean, double stddev);

// Two-column CSV with header "x,y"; numbers in round-trip format.
std::string sample_set_to_csv(const SampleSet& s);
SampleSet sample_set_from_csv(const std::string& text);  // throws ParseError

}  // namespace ccl
