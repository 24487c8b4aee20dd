#include "strichartz/cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <limits>

#include "strichartz/cli/report.hpp"
#include "strichartz/errata.hpp"
#include "strichartz/error.hpp"
#include "strichartz/landau.hpp"
#include "strichartz/potential_checks.hpp"

namespace strichartz::cli {
namespace {

namespace fs = std::filesystem;

fs::path out_dir(const RunConfig& config) { return config.out.empty() ? fs::path("results") : fs::path(config.out); }

std::string status(bool ok) { return ok ? "PASS" : "FAIL"; }

void line(std::ostream& out, const std::string& key, double value) {
  out << key << " = " << format_double(value) << '\n';
}

void line(std::ostream& out, const std::string& key, const std::string& value) {
  out << key << " = " << value << '\n';
}

Json norm_json(const NormResult& r) {
  Json j;
  j["value"] = std::isfinite(r.value) ? Json(r.value) : Json(format_double(r.value));
  j["rel_error_estimate"] =
      std::isfinite(r.rel_error_estimate) ? Json(r.rel_error_estimate) : Json(format_double(r.rel_error_estimate));
  j["converged"] = r.converged;
  j["nodes"] = {{"radial", r.nodes_used.radial},
                {"z", r.nodes_used.z},
                {"t", r.nodes_used.t},
                {"spatial_points", r.nodes_used.spatial_points}};
  return j;
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + '\n'); }

}  // namespace

int cmd_eig(const RunConfig& config, std::ostream& out) {
  const double c = config.eig_c == 0.0 ? config.model_c : config.eig_c;
  const TwistedOscillator osc{config.k, c};
  osc.validate();
  EigenSolveInfo info;
  const std::vector<Eigenpair> numeric = solve_eigen_numeric(osc, config.grid, config.eig_count, &info);
  const Eigenpair closed = ground_state(config.k, c);
  const double diff = std::abs(numeric.front().lambda - closed.lambda);
  const bool ok = diff <= config.eig_tolerance;
  const std::vector<double> exps{1.0, 2.0, std::numeric_limits<double>::infinity()};
  const Eigenpair& profile_source = numeric.front().radial ? numeric.front() : closed;
  const std::vector<double> norms = profile_norms(profile_source, config.k, exps);

  out << "eig k = " << config.k << " c = " << format_double(c) << " grid = " << config.grid.points
      << " half_width = " << format_double(config.grid.half_width) << " stencil = " << config.grid.stencil_order
      << '\n';
  line(out, "lambda_closed", closed.lambda);
  line(out, "lambda_numeric", numeric.front().lambda);
  line(out, "difference", diff);
  for (std::size_t i = 1; i < numeric.size(); ++i) line(out, "lambda_numeric_" + std::to_string(i), numeric[i].lambda);
  out << "lanczos_iterations = " << info.iterations << '\n';
  line(out, "ground_state_radial", numeric.front().radial ? std::string("true") : std::string("false"));
  line(out, "angular_variance", numeric.front().angular_variance);
  const std::string src = numeric.front().radial ? "numeric" : "closed_form";
  line(out, "profile_source", src);
  line(out, "profile_norm_L1", norms[0]);
  line(out, "profile_norm_L2", norms[1]);
  line(out, "profile_norm_Linf", norms[2]);
  line(out, "status", status(ok));

  if (!config.out.empty()) {
    Json j;
    j["config"] = config.to_json();
    j["lambda_closed"] = closed.lambda;
    Json values = Json::array();
    for (const Eigenpair& p : numeric) values.push_back(p.lambda);
    j["lambda_numeric"] = values;
    j["difference"] = diff;
    j["tolerance"] = config.eig_tolerance;
    j["lanczos_iterations"] = info.iterations;
    j["ground_state_radial"] = numeric.front().radial;
    j["angular_variance"] = numeric.front().angular_variance;
    j["profile_source"] = src;
    j["profile_norms"] = {{"L1", norms[0]}, {"L2", norms[1]}, {"Linf", norms[2]}};
    j["status"] = status(ok);
    write_json(out_dir(config) / "eig.json", j);
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_verify_potential(const RunConfig& config, std::ostream& out) {
  const PotentialSpec spec = PotentialSpec::make(config.n, config.problem().alpha_value(), config.regularized);
  const std::vector<IdentityCheck> checks =
      potential_identities(spec, config.potential_samples, config.seed, config.identity_tolerance);
  const RemainderStudy study = remainder_study(spec, config.model_c);
  out << "verify-potential n = " << config.n << " alpha = " << config.alpha << " seed = " << config.seed
      << " samples = " << config.potential_samples << '\n';
  bool all = true;
  for (const IdentityCheck& c : checks) {
    out << "check " << c.name << " " << status(c.pass()) << " max_error = " << format_double(c.max_error)
        << " tolerance = " << format_double(c.tolerance) << '\n';
    all = all && c.pass();
  }
  out << "check r1_bound " << status(study.r1_bounded) << " sup = " << format_double(study.r1_bound_fine)
      << " coarse = " << format_double(study.r1_bound_coarse) << '\n';
  out << "check r2_cubic_bound " << status(study.r2_cubic_bound) << " c = " << format_double(study.c)
      << " small_w_exponent = " << format_double(study.r2_small_w_exponent) << '\n';
  if (!study.r2_cubic_bound) {
    out << "note: |r2| grows like |w|^" << format_double(study.r2_small_w_exponent)
        << " at small |w|; the cubic remainder bound does not hold for this model coefficient\n";
  }
  all = all && study.r1_bounded && study.r2_cubic_bound;
  const Json j = potential_json(checks, study, config);
  write_json(out_dir(config) / "verify_potential.json", j);
  line(out, "status", status(all));
  return all ? kExitPass : kExitFail;
}

int cmd_residual(const RunConfig& config, std::ostream& out) {
  const ProblemConfig problem = config.problem();
  ErrataOptions opts;
  opts.samples = config.samples;
  opts.seed = config.seed;
  opts.tolerance = config.residual_tolerance;
  opts.perturb = config.perturbations();
  const ErrataReport report = residual_errata(problem, opts);
  const FdConvergence fd = fd_convergence(problem, 8.0, 20, config.seed);

  out << "residual n = " << config.n << " samples = " << report.samples << " seed = " << report.seed << '\n';
  out << "term printed fitted discrepant max_relative_effect\n";
  for (const ErrataTerm& t : report.terms) {
    out << t.name << ' ' << format_double(t.printed) << ' ' << format_double(t.fitted) << ' '
        << (t.discrepant ? "yes" : "no") << ' ' << format_double(t.max_relative_effect) << '\n';
  }
  line(out, "max_relative_printed", report.max_relative_printed);
  line(out, "max_relative_corrected", report.max_relative_corrected);
  line(out, "max_relative_plateau_g", report.max_relative_plateau_g);
  const std::vector<std::string> bad = report.discrepant_terms();
  std::string names;
  for (const std::string& b : bad) names += (names.empty() ? "" : ",") + b;
  line(out, "discrepant_terms", names.empty() ? std::string("none") : names);
  const bool plateau_ok = report.max_relative_plateau_g <= config.residual_tolerance;
  const bool fd_ok = fd.observed_order >= 4.0;
  out << "check printed_decomposition " << status(report.printed_consistent()) << '\n';
  out << "check corrected_decomposition " << status(report.corrected_consistent()) << '\n';
  out << "check plateau_g_vanishes " << status(plateau_ok) << '\n';
  out << "check fd_order " << status(fd_ok) << " observed = " << format_double(fd.observed_order) << '\n';

  Json j = errata_json(report, config);
  Json fdj;
  fdj["radius"] = fd.radius;
  fdj["points"] = fd.points;
  fdj["steps"] = fd.steps;
  fdj["max_error"] = fd.max_error;
  fdj["observed_order"] = fd.observed_order;
  j["fd_convergence"] = fdj;
  write_json(out_dir(config) / "errata.json", j);
  const bool ok = report.corrected_consistent() && plateau_ok && fd_ok;
  line(out, "status", status(ok));
  return ok ? kExitPass : kExitFail;
}

int cmd_norms(const RunConfig& config, std::ostream& out) {
  const ProblemConfig problem = config.problem();
  const AdmissiblePair pair = config.admissible();
  const double radius = config.radius == 0.0 ? config.r_min : config.radius;
  SweepOptions opts;
  opts.quad = config.quad;
  opts.cutoff = config.cutoff_mode();
  const std::vector<double> grid{radius};
  const SweepRow row = run_sweep(problem, pair, grid, opts).front();
  out << "norms R = " << format_double(radius) << " pair = " << pair.str() << '\n';
  const std::pair<const char*, const NormResult*> items[] = {{"f_R_norm", &row.f_r},
                                                             {"W_R_norm", &row.w_r},
                                                             {"W_R_fixed_T_norm", &row.w_r_fixed_t},
                                                             {"F_R_norm", &row.forcing},
                                                             {"rest_norm", &row.rest},
                                                             {"Ftilde_norm", &row.forcing_tilde}};
  Json j;
  j["config"] = config.to_json();
  j["radius"] = radius;
  for (const auto& [name, r] : items) {
    out << name << " = " << format_double(r->value) << " rel_error = " << format_double(r->rel_error_estimate)
        << (r->converged ? "" : " UNCONVERGED") << '\n';
    j[name] = norm_json(*r);
  }
  line(out, "ratio", row.ratio);
  line(out, "F_R_bound_ratio", row.forcing_bound_ratio);
  j["ratio"] = row.ratio;
  j["F_R_bound_ratio"] = row.forcing_bound_ratio;
  j["converged"] = row.converged;
  write_json(out_dir(config) / "norms.json", j);
  line(out, "status", status(row.converged));
  return row.converged ? kExitPass : kExitFail;
}

namespace {

int emit_verdict(const RunConfig& config, const std::vector<SweepRow>& rows, std::ostream& out) {
  const Verdict v = verdict(config.problem(), config.admissible(), rows, config.tolerances);
  const fs::path dir = out_dir(config);
  write_json(dir / "verdict.json", verdict_json(v, config));
  for (const std::string& col : sweep_columns()) write_text(dir / ("plot_" + col + ".dat"), plot_data(rows, col));
  for (const VerdictCheck& c : v.checks) {
    out << "check " << c.name << ' ' << to_string(c.status) << " measured = " << format_double(c.measured)
        << " predicted = " << format_double(c.predicted) << " (" << c.relation << ")";
    if (!c.detail.empty()) out << " " << c.detail;
    out << '\n';
  }
  std::string attaining;
  for (const std::string& a : v.predicted.delta.attaining) attaining += (attaining.empty() ? "" : ",") + a;
  out << "delta = " << v.predicted.delta.value.str() << " attained by " << attaining << '\n';
  line(out, "status", to_string(v.overall));
  return v.overall == CheckStatus::fail ? kExitFail : kExitPass;
}

}  // namespace

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  const ProblemConfig problem = config.problem();
  const AdmissiblePair pair = config.admissible();
  SweepOptions opts;
  opts.quad = config.quad;
  opts.cutoff = config.cutoff_mode();
  const std::vector<double> grid = config.r_grid();
  const std::vector<SweepRow> rows = run_sweep(problem, pair, grid, opts);
  write_text(out_dir(config) / "sweep.csv", sweep_csv(rows));
  out << "sweep n = " << config.n << " pair = " << pair.str() << " beta = " << problem.beta_value().str()
      << " radii = " << rows.size() << '\n';
  for (const SweepRow& r : rows) {
    out << "R = " << format_double(r.radius) << " ratio = " << format_double(r.ratio)
        << (r.converged ? "" : " UNCONVERGED") << '\n';
  }
  return emit_verdict(config, rows, out);
}

int cmd_report(const RunConfig& config, std::ostream& out) {
  const fs::path csv = out_dir(config) / "sweep.csv";
  const std::vector<SweepRow> rows = parse_sweep_csv(read_text(csv));
  out << "report from " << csv.string() << " rows = " << rows.size() << '\n';
  return emit_verdict(config, rows, out);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Numerical checks of magnetic Strichartz counterexamples", "strichartz"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat 'key = value' file; '#' starts a comment; flags override file values");

  app.add_option("--n", cfg.n, "Space dimension (>= 3)")->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "Decay exponent in (1, 2), rational")->capture_default_str();
  app.add_option("--gamma", cfg.gamma, "Cutoff width exponent in (1/2, 1), rational")->capture_default_str();
  app.add_option("--beta", cfg.beta, "Time exponent; default 51/50 of the threshold");
  app.add_option("--model-c", cfg.model_c, "Coefficient of |y|^2/|z|^{2 alpha} (1 or 2)")->capture_default_str();
  app.add_option("--parity", cfg.parity, "odd or even; selects n = 3 or n = 4 when --n is absent");
  app.add_option("--pair", cfg.pair, "Admissible pair p,q; default p = 2");
  app.add_option("--cutoff", cfg.cutoff, "smooth or rectangle")->capture_default_str();
  app.add_option("--r-min", cfg.r_min, "Smallest truncation radius")->capture_default_str();
  app.add_option("--r-max", cfg.r_max, "Largest truncation radius")->capture_default_str();
  app.add_option("--r-points", cfg.r_points, "Number of geometric radii")->capture_default_str();
  app.add_option("--quad-radial", cfg.quad.radial_nodes, "Radial Gauss-Legendre nodes per panel")->capture_default_str();
  app.add_option("--quad-z", cfg.quad.z_nodes, "z Gauss-Legendre nodes per panel")->capture_default_str();
  app.add_option("--quad-t", cfg.quad.t_nodes, "Time Gauss-Legendre nodes")->capture_default_str();
  app.add_option("--quad-refine", cfg.quad.refinement_factor, "Node multiplier for error estimates")
      ->capture_default_str();
  app.add_option("--quad-tol", cfg.quad.tolerance, "Relative tolerance for converged norms")->capture_default_str();
  app.add_option("--tol-slope", cfg.tolerances.slope, "Slope tolerance")->capture_default_str();
  app.add_option("--tol-delta", cfg.tolerances.delta_margin, "Margin below delta")->capture_default_str();
  app.add_option("--tol-bound", cfg.tolerances.bound_slope, "Allowed forcing-bound slope")->capture_default_str();
  app.add_option("--out", cfg.out, "Output directory (default: results)");
  app.add_option("--seed", cfg.seed, "Seed for random sample points")->capture_default_str();

  CLI::App* eig = app.add_subcommand("eig", "Ground state of the twisted oscillator");
  eig->add_option("--k", cfg.k, "Number of 2D blocks")->capture_default_str();
  eig->add_option("--c", cfg.eig_c, "Oscillator coefficient (1 or 2); default --model-c");
  eig->add_option("--grid-points", cfg.grid.points, "Interior nodes per direction")->capture_default_str();
  eig->add_option("--half-width", cfg.grid.half_width, "Half width of the block box")->capture_default_str();
  eig->add_option("--stencil", cfg.grid.stencil_order, "Stencil order (2, 4 or 6)")->capture_default_str();
  eig->add_option("--count", cfg.eig_count, "Number of eigenvalues")->capture_default_str();
  eig->add_option("--eig-tol", cfg.eig_tolerance, "Allowed error of the ground eigenvalue")->capture_default_str();

  CLI::App* pot = app.add_subcommand("verify-potential", "Identities of the magnetic potential and its remainders");
  pot->add_option("--samples", cfg.potential_samples, "Random sample points")->capture_default_str();
  pot->add_option("--tolerance", cfg.identity_tolerance, "Tolerance of the identities")->capture_default_str();
  pot->add_flag("--regularized", cfg.regularized, "Use (1+|x|^2)^{-alpha/2} instead of |x|^{-alpha}");

  CLI::App* res = app.add_subcommand("residual", "Direct forcing against the transcribed decomposition");
  res->add_option("--samples", cfg.samples, "Random support points")->capture_default_str();
  res->add_option("--tolerance", cfg.residual_tolerance, "Relative agreement tolerance")->capture_default_str();
  res->add_option("--perturb", cfg.perturb, "Self-test: shift a printed coefficient, term:delta");

  CLI::App* norms = app.add_subcommand("norms", "Mixed norms at one radius");
  norms->add_option("--r", cfg.radius, "Truncation radius (default --r-min)");

  CLI::App* sweep = app.add_subcommand("sweep", "Radius sweep with fits and verdict");
  CLI::App* report = app.add_subcommand("report", "Verdict and plot data from an existing sweep.csv");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (app.get_option("--n")->count() == 0 && !cfg.parity.empty()) cfg.n = cfg.parity == "even" ? 4 : 3;
    cfg.validate();
    if (eig->parsed()) return cmd_eig(cfg, out);
    if (pot->parsed()) return cmd_verify_potential(cfg, out);
    if (res->parsed()) return cmd_residual(cfg, out);
    if (norms->parsed()) return cmd_norms(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out);
    if (report->parsed()) return cmd_report(cfg, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace strichartz::cli
