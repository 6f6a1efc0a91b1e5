#pragma once

// Sampling configuration, seeded per-trial generators and the report type
// shared by morphism verification and the law checks.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crk/core.hpp"

namespace crk {

struct SampleConfig {
  std::uint64_t seed = 0x5eedc0de;
  std::size_t trials = 256;
  double tolerance = 1e-10;
  double range_lo = -10.0;
  double range_hi = 10.0;
  std::vector<StepSize> step_sizes{StepSize(0.1)};
  // Macro steps per shared-signal trajectory comparison.
  std::size_t trajectory_steps = 32;

  // Throws Error unless trials >= 1, tolerance >= 0 and the range is proper.
  void validate() const;
};

struct LawReport {
  std::string law_name;
  std::size_t trials_run = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  // Replay description of the worst trial; empty when every trial matched exactly.
  std::string worst_sample;
  bool pass = true;

  friend bool operator==(const LawReport&, const LawReport&) = default;
};

// `law_name  trials  max_dev  PASS|FAIL`, followed by `  # replay: ...` when
// the report failed.
std::string format_report(const LawReport& report);

// Mixed absolute/relative coordinate deviation:
//   max_i |x_i - y_i| / max(1, |x_i|, |y_i|)
// Infinite when the dimensions differ.
double deviation(const Vec& x, const Vec& y);

// Seed for trial `trial` of the named law. Independent of execution order.
std::uint64_t trial_seed(std::uint64_t master, std::string_view law_name, std::size_t trial);

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  Vec vec(std::size_t dim, double lo, double hi);
  int phase();  // uniform in {1,2,3,4}
  std::size_t index(std::size_t bound);  // uniform in [0, bound)
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Running maximum of deviations with the sample that produced it.
class DeviationTracker {
 public:
  explicit DeviationTracker(std::string law_name) : name_(std::move(law_name)) {}

  // Records a deviation; `describe` is only invoked when it is a new maximum.
  template <typename Describe>
  void record(double dev, Describe&& describe) {
    if (dev > max_) {
      max_ = dev;
      worst_ = describe();
    }
  }
  void count_trial() { ++trials_; }
  // Structural failure (e.g. a phase-preservation violation).
  void fail(std::string why) {
    max_ = std::numeric_limits<double>::infinity();
    worst_ = std::move(why);
  }
  double max_deviation() const { return max_; }

  LawReport finish(double tolerance) const;

 private:
  std::string name_;
  std::size_t trials_ = 0;
  double max_ = 0.0;
  std::string worst_;
};

// Folds sub-reports into one: trials summed, worst deviation kept.
LawReport merge_reports(std::string law_name, const std::vector<LawReport>& parts, double tolerance);

}  // namespace crk
