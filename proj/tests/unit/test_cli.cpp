#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crk/cli.hpp"
#include "crk/errors.hpp"

using namespace crk;

namespace {

std::string fixture(const char* name) { return std::string(CRK_FIXTURE_DIR) + "/" + name; }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "crk");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

double max_row_gap(const std::string& a, const std::string& b) {
  const auto ra = parse_csv(a);
  const auto rb = parse_csv(b);
  if (ra.size() != rb.size()) return INFINITY;
  double gap = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].size() != rb[i].size()) return INFINITY;
    for (std::size_t j = 0; j < ra[i].size(); ++j) gap = std::max(gap, std::abs(ra[i][j] - rb[i][j]));
  }
  return gap;
}

SimulateOptions opts(Method m, Mode mode, double h, std::size_t steps, bool dump = false) {
  SimulateOptions o;
  o.method = m;
  o.mode = mode;
  o.h = h;
  o.steps = steps;
  o.dump_state = dump;
  return o;
}

}  // namespace

TEST(SimulateCsv, HeaderAndTimeColumn) {
  const NetworkSpec spec = load_network(fixture("oscillator.json"));
  const std::string csv = simulate_csv(spec, opts(Method::Rk4, Mode::PostCompose, 0.5, 1, true));
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,phase,y0,y1,s0,s1");
  const auto rows = parse_csv(csv);
  ASSERT_EQ(rows.size(), 5u);
  const double expected_t[] = {0, 0.25, 0.25, 0.5, 0.5};
  const double expected_phase[] = {1, 2, 3, 4, 1};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][0], expected_t[i]);
    EXPECT_EQ(rows[i][1], expected_phase[i]);
    // Readout is the identity, so the state columns repeat the outputs.
    EXPECT_EQ(rows[i][2], rows[i][4]);
    EXPECT_EQ(rows[i][3], rows[i][5]);
  }
}

TEST(SimulateCsv, EulerRowsArePhaseOne) {
  const NetworkSpec spec = load_network(fixture("growth.json"));
  const auto rows = parse_csv(simulate_csv(spec, opts(Method::Euler, Mode::PreCompose, 0.1, 3)));
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) EXPECT_EQ(r[1], 1);
  EXPECT_EQ(rows[1][2], 1.1);
}

TEST(SimulateCsv, ModesAgreeOnEveryFixture) {
  for (const char* name : {"oscillator.json", "growth.json", "single_box.json", "ring.json", "van_der_pol.json",
                           "zero_field.json"}) {
    const NetworkSpec spec = load_network(fixture(name));
    for (const Method m : {Method::Rk4, Method::Euler}) {
      const double h = std::string(name) == "growth.json" ? 0.001 : 0.01;
      const std::string pre = simulate_csv(spec, opts(m, Mode::PreCompose, h, 1000, true));
      const std::string post = simulate_csv(spec, opts(m, Mode::PostCompose, h, 1000, true));
      EXPECT_LE(max_row_gap(pre, post), 1e-9) << name;
    }
  }
}

TEST(SimulateCsv, OscillatorMatchesAnalyticSolution) {
  const NetworkSpec spec = load_network(fixture("oscillator.json"));
  for (const Mode mode : {Mode::PreCompose, Mode::PostCompose}) {
    const auto rows = parse_csv(simulate_csv(spec, opts(Method::Rk4, mode, 0.01, 1000)));
    const auto& last = rows.back();
    ASSERT_NEAR(last[0], 10.0, 1e-12);
    EXPECT_NEAR(last[2], std::cos(10.0), 1e-6);
    EXPECT_NEAR(last[3], -std::sin(10.0), 1e-6);
  }
}

TEST(SimulateCsv, EulerErrorDwarfsRk4) {
  const NetworkSpec spec = load_network(fixture("oscillator.json"));
  const double rk = std::abs(parse_csv(simulate_csv(spec, opts(Method::Rk4, Mode::PostCompose, 0.01, 1000)))
                                 .back()[2] -
                             std::cos(10.0));
  const double eu = std::abs(parse_csv(simulate_csv(spec, opts(Method::Euler, Mode::PostCompose, 0.01, 1000)))
                                 .back()[2] -
                             std::cos(10.0));
  EXPECT_GE(eu, 1e3 * rk);
}

TEST(SimulateCsv, ByteDeterministic) {
  const NetworkSpec spec = load_network(fixture("van_der_pol.json"));
  const SimulateOptions o = opts(Method::Rk4, Mode::PreCompose, 0.05, 200, true);
  EXPECT_EQ(simulate_csv(spec, o), simulate_csv(spec, o));
}

TEST(Convergence, GrowthSlopes) {
  const NetworkSpec spec = load_network(fixture("growth.json"));
  const std::vector<double> hs{0.2, 0.1, 0.05, 0.025};
  const ConvergenceResult rk = convergence(spec, Method::Rk4, hs, 1.0);
  EXPECT_GE(rk.slope, 3.7);
  EXPECT_LE(rk.slope, 4.3);
  EXPECT_EQ(rk.reference_h, 0.025 / 16);
  const ConvergenceResult eu = convergence(spec, Method::Euler, hs, 1.0);
  EXPECT_GE(eu.slope, 0.8);
  EXPECT_LE(eu.slope, 1.2);
}

TEST(Convergence, ZeroFieldSlopeUndefined) {
  const ConvergenceResult r = convergence(load_network(fixture("zero_field.json")), Method::Rk4, {0.2, 0.1}, 1.0);
  EXPECT_EQ(r.errors, (std::vector<double>{0, 0}));
  EXPECT_NE(format_convergence(r).find("slope,undefined"), std::string::npos);
}

TEST(Convergence, RejectsNonIntegralStepCount) {
  EXPECT_THROW(convergence(load_network(fixture("growth.json")), Method::Rk4, {0.3, 0.1}, 1.0), SpecError);
  EXPECT_THROW(convergence(load_network(fixture("growth.json")), Method::Rk4, {0.1}, 1.0), SpecError);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--network", fixture("oscillator.json"), "--method", "rk5", "--mode",
                     "pre-compose", "--h", "0.1", "--steps", "1", "--out", "-"})
                .code,
            kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--network", fixture("bad_index.json"), "--method", "rk4", "--mode",
                     "pre-compose", "--h", "0.1", "--steps", "1", "--out", "-"})
                .code,
            kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--network", fixture("missing.json"), "--method", "rk4", "--mode", "pre-compose",
                     "--h", "0.1", "--steps", "1", "--out", "-"})
                .code,
            kExitRuntime);
  const Result blow = run_cli({"simulate", "--network", fixture("blowup.json"), "--method", "rk4", "--mode",
                               "post-compose", "--h", "0.1", "--steps", "10", "--out", "-"});
  EXPECT_EQ(blow.code, kExitRuntime);
  EXPECT_NE(blow.err.find("micro-step 2"), std::string::npos);
  EXPECT_EQ(run_cli({"convergence", "--network", fixture("growth.json"), "--method", "rk4", "--h-list", "0.3,0.1",
                     "--t-final", "1"})
                .code,
            kExitUsage);
  EXPECT_EQ(run_cli({"check-laws", "--trials", "0"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
}

TEST(Run, SimulateWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "crk_test_simulate.csv";
  const Result r = run_cli({"simulate", "--network", fixture("growth.json"), "--method", "euler", "--mode",
                            "post-compose", "--h", "0.5", "--steps", "2", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), "t,phase,y0\n0,1,1\n0.5,1,1.5\n1,1,2.25\n");
  std::filesystem::remove(path);
}

TEST(Run, ConvergencePrintsTable) {
  const Result r = run_cli({"convergence", "--network", fixture("growth.json"), "--method", "euler", "--h-list",
                            "0.2,0.1,0.05", "--t-final", "1"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("h,error\n0.20000000000000001,", 0), 0u);
  EXPECT_NE(r.out.find("\nslope,"), std::string::npos);
}

TEST(Run, CheckLawsZeroToleranceStillReports) {
  const Result r = run_cli({"check-laws", "--seed", "7", "--trials", "2", "--tol", "0"});
  EXPECT_TRUE(r.code == kExitOk || r.code == kExitCheckFailed);
  EXPECT_NE(r.out.find("compositionality["), std::string::npos);
}
