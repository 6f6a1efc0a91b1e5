#include "crk/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "crk/errors.hpp"

namespace crk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

void SampleConfig::validate() const {
  if (trials == 0) throw Error("SampleConfig: trials must be >= 1");
  if (!(tolerance >= 0.0)) throw Error("SampleConfig: tolerance must be nonnegative");
  if (!(range_lo < range_hi) || !std::isfinite(range_lo) || !std::isfinite(range_hi)) {
    throw Error("SampleConfig: coordinate range must be a proper finite interval");
  }
}

std::string format_report(const LawReport& report) {
  std::string line = report.law_name + "  " + std::to_string(report.trials_run) + "  " +
                     format_real(report.max_deviation) + "  " + (report.pass ? "PASS" : "FAIL");
  if (!report.pass && !report.worst_sample.empty()) line += "  # replay: " + report.worst_sample;
  return line;
}

double deviation(const Vec& x, const Vec& y) {
  if (x.dim() != y.dim()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double scale = std::max({1.0, std::abs(x[i]), std::abs(y[i])});
    worst = std::max(worst, std::abs(x[i] - y[i]) / scale);
  }
  return worst;
}

std::uint64_t trial_seed(std::uint64_t master, std::string_view law_name, std::size_t trial) {
  return splitmix64(splitmix64(master ^ fnv1a(law_name)) + static_cast<std::uint64_t>(trial));
}

double Sampler::uniform(double lo, double hi) {
  // 53 random mantissa bits; portable across standard libraries.
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

Vec Sampler::vec(std::size_t dim, double lo, double hi) {
  std::vector<double> out(dim);
  for (auto& x : out) x = uniform(lo, hi);
  return Vec(std::move(out));
}

int Sampler::phase() { return static_cast<int>(engine_() % 4) + 1; }

std::size_t Sampler::index(std::size_t bound) {
  return bound == 0 ? 0 : static_cast<std::size_t>(engine_() % bound);
}

LawReport DeviationTracker::finish(double tolerance) const {
  LawReport r;
  r.law_name = name_;
  r.trials_run = trials_;
  r.max_deviation = max_;
  r.tolerance = tolerance;
  r.worst_sample = worst_;
  r.pass = max_ <= tolerance;
  return r;
}

LawReport merge_reports(std::string law_name, const std::vector<LawReport>& parts, double tolerance) {
  LawReport r;
  r.law_name = std::move(law_name);
  r.tolerance = tolerance;
  for (const auto& p : parts) {
    r.trials_run += p.trials_run;
    if (p.max_deviation > r.max_deviation) {
      r.max_deviation = p.max_deviation;
      r.worst_sample = p.law_name + ": " + p.worst_sample;
    }
  }
  r.pass = r.max_deviation <= tolerance;
  return r;
}

}  // namespace crk
