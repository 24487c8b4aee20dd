#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "strichartz/cli/commands.hpp"
#include "strichartz/cli/report.hpp"
#include "strichartz/cli/run_config.hpp"
#include "strichartz/error.hpp"

namespace fs = std::filesystem;
using strichartz::cli::RunConfig;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = strichartz::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = fs::temp_directory_path() / ("strichartz_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  [[nodiscard]] const fs::path& path() const { return path_; }
  [[nodiscard]] std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

std::string message_of(const RunConfig& cfg) {
  try {
    cfg.validate();
  } catch (const strichartz::InvalidArgument& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::vector<strichartz::SweepRow> sample_rows() {
  std::vector<strichartz::SweepRow> rows(2);
  rows[0].radius = 32.0;
  rows[0].f_r.value = 1.0 / 3.0;
  rows[0].w_r.value = 12.5;
  rows[0].w_r_fixed_t.value = 0.1;
  rows[0].forcing.value = 1e-300;
  rows[0].rest.value = std::numeric_limits<double>::quiet_NaN();
  rows[0].forcing_tilde.value = 2.0;
  rows[0].ratio = 0.7;
  rows[0].forcing_bound_ratio = std::numeric_limits<double>::infinity();
  rows[0].f_r.rel_error_estimate = 3e-9;
  rows[1] = rows[0];
  rows[1].radius = 64.0;
  rows[1].converged = false;
  return rows;
}

}  // namespace

TEST(RunConfig, DefaultsAreValid) {
  const RunConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.admissible().p, strichartz::Exponent(2));
  EXPECT_EQ(cfg.admissible().q, strichartz::Exponent(6));
  EXPECT_EQ(cfg.r_grid().size(), 8u);
  EXPECT_EQ(cfg.problem().beta_value(), strichartz::Rational(51, 50) * strichartz::Rational(23, 15));
}

TEST(RunConfig, ValidationMessagesNameTheKey) {
  RunConfig cfg;
  cfg.n = 2;
  EXPECT_TRUE(contains(message_of(cfg), "n: dimension must be at least 3"));
  cfg = {};
  cfg.alpha = "2";
  EXPECT_TRUE(contains(message_of(cfg), "alpha:"));
  cfg = {};
  cfg.alpha = "abc";
  EXPECT_TRUE(contains(message_of(cfg), "alpha: cannot parse"));
  cfg = {};
  cfg.gamma = "1/2";
  EXPECT_TRUE(contains(message_of(cfg), "gamma:"));
  cfg = {};
  cfg.model_c = 3.0;
  EXPECT_TRUE(contains(message_of(cfg), "model-c:"));
  cfg = {};
  cfg.parity = "even";
  EXPECT_TRUE(contains(message_of(cfg), "parity:"));
  cfg = {};
  cfg.pair = "inf,2";
  EXPECT_TRUE(contains(message_of(cfg), "pair: the (inf,2) endpoint"));
  cfg = {};
  cfg.pair = "3,3";
  EXPECT_TRUE(contains(message_of(cfg), "pair:"));
  cfg = {};
  cfg.r_min = 1.0;
  EXPECT_TRUE(contains(message_of(cfg), "r-min:"));
  cfg = {};
  cfg.k = 0;
  EXPECT_TRUE(contains(message_of(cfg), "k:"));
  cfg = {};
  cfg.perturb = {"F.G"};
  EXPECT_TRUE(contains(message_of(cfg), "perturb:"));
  cfg = {};
  cfg.perturb = {"F.G:x"};
  EXPECT_TRUE(contains(message_of(cfg), "perturb:"));
  cfg = {};
  cfg.cutoff = "box";
  EXPECT_TRUE(contains(message_of(cfg), "cutoff:"));
}

TEST(RunConfig, PerturbationsParse) {
  RunConfig cfg;
  cfg.perturb = {"G.G_psi1:0.5", "F.G:-1.125"};
  const auto p = cfg.perturbations();
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0].first, "G.G_psi1");
  EXPECT_EQ(p[0].second, 0.5);
  EXPECT_EQ(p[1].second, -1.125);
}

TEST(Report, FormatDoubleRoundTrips) {
  for (double x : {0.0, -0.0, 1.0 / 3.0, 1e-300, -2.5e300, 4.9e-324, std::numbers::pi}) {
    EXPECT_EQ(strichartz::cli::parse_double(strichartz::cli::format_double(x)), x);
  }
  EXPECT_EQ(strichartz::cli::format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(strichartz::cli::format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(strichartz::cli::format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_TRUE(std::isnan(strichartz::cli::parse_double("nan")));
  EXPECT_EQ(strichartz::cli::parse_double("-inf"), -std::numeric_limits<double>::infinity());
}

TEST(Report, SweepCsvRoundTrips) {
  const auto rows = sample_rows();
  const std::string csv = strichartz::cli::sweep_csv(rows);
  const auto back = strichartz::cli::parse_sweep_csv(csv);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].radius, rows[i].radius);
    EXPECT_EQ(back[i].converged, rows[i].converged);
    for (const auto& col : strichartz::sweep_columns()) {
      const double a = strichartz::column_value(rows[i], col);
      const double b = strichartz::column_value(back[i], col);
      if (std::isnan(a)) EXPECT_TRUE(std::isnan(b)) << col;
      else EXPECT_EQ(a, b) << col;
    }
  }
  EXPECT_EQ(strichartz::cli::sweep_csv(back), csv);
}

TEST(Report, MalformedCsvIsRejected) {
  const std::string csv = strichartz::cli::sweep_csv(sample_rows());
  EXPECT_THROW(strichartz::cli::parse_sweep_csv(""), std::exception);
  EXPECT_THROW(strichartz::cli::parse_sweep_csv("R,x\n1,2\n"), std::exception);
  const auto first_nl = csv.find('\n');
  EXPECT_THROW(strichartz::cli::parse_sweep_csv(csv.substr(0, first_nl + 1) + "32,1,2\n"), std::exception);
  std::string bad = csv;
  const auto last_comma = bad.rfind(',', bad.size() - 2);
  bad = bad.substr(0, last_comma + 1) + "7\n";
  EXPECT_THROW(strichartz::cli::parse_sweep_csv(bad), std::exception);
}

TEST(Report, PlotDataSkipsNonPositive) {
  auto rows = sample_rows();
  rows[1].f_r.value = 0.0;
  const std::string data = strichartz::cli::plot_data(rows, "f_R_norm");
  std::istringstream in(data);
  std::vector<std::pair<double, double>> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double a = 0.0, b = 0.0;
    ls >> a >> b;
    pts.emplace_back(a, b);
  }
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_NEAR(pts[0].first, std::log10(32.0), 1e-15);
  EXPECT_NEAR(pts[0].second, std::log10(1.0 / 3.0), 1e-15);
}

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run({}).code, strichartz::cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, strichartz::cli::kExitUsage);
  EXPECT_EQ(run({"eig", "--k", "0"}).code, strichartz::cli::kExitUsage);
  const auto n2 = run({"--n", "2", "eig"});
  EXPECT_EQ(n2.code, strichartz::cli::kExitUsage);
  EXPECT_TRUE(contains(n2.err, "n: dimension must be at least 3"));
  const auto endpoint = run({"--pair", "inf,2", "sweep"});
  EXPECT_EQ(endpoint.code, strichartz::cli::kExitUsage);
  EXPECT_TRUE(contains(endpoint.err, "mass conservation"));
  EXPECT_EQ(run({"--alpha", "5/2", "eig"}).code, strichartz::cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, strichartz::cli::kExitPass);
}

TEST(Cli, ReportWithoutSweepFails) {
  const TempDir dir("report");
  EXPECT_EQ(run({"--out", dir.str(), "report"}).code, strichartz::cli::kExitFail);
}

TEST(Cli, EigenvalueCommand) {
  const TempDir dir("eig");
  const auto r = run({"--out", dir.str(), "eig", "--c", "2"});
  EXPECT_EQ(r.code, strichartz::cli::kExitPass) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "status = PASS"));
  EXPECT_TRUE(fs::exists(dir.path() / "eig.json"));
}

TEST(Cli, ConfigFileMergesWithFlags) {
  const TempDir dir("config");
  const fs::path file = dir.path() / "run.toml";
  strichartz::cli::write_text(file, "# eigen run\nmodel-c = 2\nout = \"" + dir.str() + "\"\n");
  const auto r = run({"--config", file.string(), "eig", "--grid-points", "48"});
  EXPECT_TRUE(contains(r.out, "c = 2.0000000000000000e+00")) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "grid = 48"));
  const auto bad = run({"--config", (dir.path() / "missing.toml").string(), "eig"});
  EXPECT_EQ(bad.code, strichartz::cli::kExitUsage);
}

TEST(Cli, ResidualCommandAndFaultInjection) {
  const TempDir dir("residual");
  const auto clean = run({"--out", dir.str(), "residual", "--samples", "60"});
  EXPECT_EQ(clean.code, strichartz::cli::kExitPass) << clean.out << clean.err;
  EXPECT_TRUE(contains(clean.out, "discrepant_terms = none"));
  const auto faulty = run({"--out", dir.str(), "residual", "--samples", "60", "--perturb", "G.G_psi1:0.5"});
  EXPECT_EQ(faulty.code, strichartz::cli::kExitPass) << faulty.out;
  EXPECT_TRUE(contains(faulty.out, "discrepant_terms = G.G_psi1"));
  EXPECT_TRUE(contains(faulty.out, "check printed_decomposition FAIL"));
  EXPECT_TRUE(contains(faulty.out, "check corrected_decomposition PASS"));
}

TEST(Cli, VerifyPotentialReportsFailingIdentity) {
  const TempDir dir("potential");
  const auto r = run({"--out", dir.str(), "verify-potential", "--samples", "100"});
  EXPECT_EQ(r.code, strichartz::cli::kExitFail);
  EXPECT_TRUE(contains(r.out, "check b_tangential FAIL"));
  EXPECT_TRUE(contains(r.out, "check div_a PASS"));
  EXPECT_TRUE(contains(r.out, "check r2_cubic_bound PASS"));
  EXPECT_TRUE(fs::exists(dir.path() / "verify_potential.json"));
}

TEST(Cli, OutputIsByteStableAcrossRuns) {
  const TempDir a("stable_a"), b("stable_b");
  for (const TempDir* d : {&a, &b}) {
    run({"--out", d->str(), "residual", "--samples", "40"});
    run({"--out", d->str(), "--quad-radial", "24", "--quad-z", "16", "--quad-t", "16", "norms"});
  }
  for (const char* name : {"errata.json", "norms.json"}) {
    const std::string ta = strichartz::cli::read_text(a.path() / name);
    std::string tb = strichartz::cli::read_text(b.path() / name);
    EXPECT_FALSE(ta.empty()) << name;
    // The output directory is part of the recorded configuration.
    std::size_t pos = 0;
    while ((pos = tb.find(b.str(), pos)) != std::string::npos) tb.replace(pos, b.str().size(), a.str());
    EXPECT_EQ(ta, tb) << name;
  }
}

TEST(Cli, SweepThenReportReproducesVerdict) {
  const TempDir dir("sweep");
  const std::vector<std::string> common{"--out", dir.str(), "--r-min", "16", "--r-max", "64", "--r-points", "5"};
  auto args = common;
  args.push_back("sweep");
  const auto s = run(args);
  EXPECT_NE(s.code, strichartz::cli::kExitUsage) << s.err;
  ASSERT_TRUE(fs::exists(dir.path() / "sweep.csv"));
  const std::string verdict1 = strichartz::cli::read_text(dir.path() / "verdict.json");
  args.back() = "report";
  const auto r = run(args);
  EXPECT_EQ(r.code, s.code);
  EXPECT_EQ(strichartz::cli::read_text(dir.path() / "verdict.json"), verdict1);
  EXPECT_TRUE(fs::exists(dir.path() / "plot_f_R_norm.dat"));
}
