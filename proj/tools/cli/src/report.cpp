#include "strichartz/cli/report.hpp"

#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "strichartz/error.hpp"

namespace strichartz::cli {
namespace {

Json exact(const Rational& r) { return Json{{"exact", r.str()}, {"value", r.to_double()}}; }

Json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(line);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) throw InvalidArgument("malformed number '" + text + "'");
  return v;
}

const std::vector<std::string>& csv_header() {
  static const std::vector<std::string> header{
      "R",           "f_R_norm",        "W_R_norm", "W_R_fixed_T_norm", "F_R_norm",        "rest_norm",
      "Ftilde_norm", "ratio",           "F_R_bound_ratio", "f_R_err",   "W_R_err",         "W_R_fixed_T_err",
      "F_R_err",     "rest_err",        "Ftilde_err",      "converged"};
  return header;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out;
  for (std::size_t i = 0; i < csv_header().size(); ++i) out += (i ? "," : "") + csv_header()[i];
  out += '\n';
  for (const SweepRow& r : rows) {
    const double values[] = {r.radius,
                             r.f_r.value,
                             r.w_r.value,
                             r.w_r_fixed_t.value,
                             r.forcing.value,
                             r.rest.value,
                             r.forcing_tilde.value,
                             r.ratio,
                             r.forcing_bound_ratio,
                             r.f_r.rel_error_estimate,
                             r.w_r.rel_error_estimate,
                             r.w_r_fixed_t.rel_error_estimate,
                             r.forcing.rel_error_estimate,
                             r.rest.rel_error_estimate,
                             r.forcing_tilde.rel_error_estimate};
    for (double v : values) out += format_double(v) + ',';
    out += r.converged ? "1\n" : "0\n";
  }
  return out;
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("sweep CSV is empty");
  if (split(line, ',') != csv_header()) throw InvalidArgument("sweep CSV header does not match the expected columns");
  std::vector<SweepRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != csv_header().size()) {
      throw InvalidArgument("sweep CSV line " + std::to_string(line_no) + ": expected " +
                            std::to_string(csv_header().size()) + " cells");
    }
    std::vector<double> v;
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) v.push_back(parse_double(cells[i]));
    SweepRow r;
    r.radius = v[0];
    NormResult* norms[] = {&r.f_r, &r.w_r, &r.w_r_fixed_t, &r.forcing, &r.rest, &r.forcing_tilde};
    for (int i = 0; i < 6; ++i) {
      norms[i]->value = v[1 + i];
      norms[i]->rel_error_estimate = v[9 + i];
    }
    r.ratio = v[7];
    r.forcing_bound_ratio = v[8];
    if (cells.back() != "0" && cells.back() != "1") {
      throw InvalidArgument("sweep CSV line " + std::to_string(line_no) + ": converged must be 0 or 1");
    }
    r.converged = cells.back() == "1";
    rows.push_back(r);
  }
  return rows;
}

std::string plot_data(std::span<const SweepRow> rows, const std::string& column) {
  std::string out = "# log10(R) log10(" + column + ")\n";
  for (const SweepRow& r : rows) {
    const double v = column_value(r, column);
    if (!(v > 0.0)) continue;
    out += format_double(std::log10(r.radius)) + ' ' + format_double(std::log10(v)) + '\n';
  }
  return out;
}

Json verdict_json(const Verdict& verdict, const RunConfig& config) {
  const ExponentSet& e = verdict.predicted;
  Json j;
  j["config"] = config.to_json();
  Json pred;
  pred["weight"] = exact(e.weight);
  pred["beta_threshold"] = exact(e.beta_threshold);
  pred["beta"] = exact(e.beta);
  pred["f_R_slope"] = exact(e.f_r_slope);
  pred["W_R_spatial_slope"] = exact(e.w_r_spatial_slope);
  pred["W_R_slope"] = exact(e.w_r_slope);
  pred["F_R_bound_slope"] = exact(e.forcing_bound_slope);
  pred["ratio_wf_slope"] = exact(e.ratio_wf_slope);
  pred["kappa"] = exact(e.kappa);
  pred["delta"] = exact(e.delta.value);
  pred["delta_attaining"] = e.delta.attaining;
  pred["gamma_window"] = {{"lo", exact(e.gamma_window.lo)},
                          {"hi", exact(e.gamma_window.hi)},
                          {"nonempty", e.gamma_window.nonempty()}};
  j["predicted"] = pred;
  Json fits = Json::object();
  for (const auto& [name, f] : verdict.fits) {
    fits[name] = {{"slope", number(f.slope)},
                  {"intercept", number(f.intercept)},
                  {"max_abs_residual", number(f.max_abs_residual)},
                  {"samples", f.sample_count},
                  {"spans_two_decades", f.spans_two_decades}};
  }
  j["fits"] = fits;
  Json checks = Json::array();
  for (const VerdictCheck& c : verdict.checks) {
    checks.push_back({{"name", c.name},
                      {"status", to_string(c.status)},
                      {"measured", number(c.measured)},
                      {"predicted", number(c.predicted)},
                      {"tolerance", number(c.tolerance)},
                      {"relation", c.relation},
                      {"detail", c.detail}});
  }
  j["checks"] = checks;
  j["overall"] = to_string(verdict.overall);
  return j;
}

Json errata_json(const ErrataReport& report, const RunConfig& config) {
  Json j;
  j["config"] = config.to_json();
  j["samples"] = report.samples;
  j["seed"] = report.seed;
  j["tolerance"] = report.tolerance;
  j["max_relative_printed"] = number(report.max_relative_printed);
  j["max_relative_corrected"] = number(report.max_relative_corrected);
  j["max_relative_plateau_g"] = number(report.max_relative_plateau_g);
  j["fit_rank"] = report.fit_rank;
  j["fit_condition"] = number(report.fit_condition);
  j["printed_consistent"] = report.printed_consistent();
  j["corrected_consistent"] = report.corrected_consistent();
  j["discrepant_terms"] = report.discrepant_terms();
  Json terms = Json::array();
  for (const ErrataTerm& t : report.terms) {
    terms.push_back({{"name", t.name},
                     {"printed", number(t.printed)},
                     {"fitted", number(t.fitted)},
                     {"discrepant", t.discrepant},
                     {"max_relative_effect", number(t.max_relative_effect)}});
  }
  j["terms"] = terms;
  return j;
}

Json potential_json(const std::vector<IdentityCheck>& checks, const RemainderStudy& study, const RunConfig& config) {
  Json j;
  j["config"] = config.to_json();
  Json list = Json::array();
  bool all = true;
  for (const IdentityCheck& c : checks) {
    list.push_back({{"name", c.name},
                    {"samples", c.samples},
                    {"max_error", number(c.max_error)},
                    {"tolerance", c.tolerance},
                    {"status", c.pass() ? "PASS" : "FAIL"}});
    all = all && c.pass();
  }
  j["identities"] = list;
  j["remainders"] = {{"c", study.c},
                     {"r1_bound_coarse", number(study.r1_bound_coarse)},
                     {"r1_bound_fine", number(study.r1_bound_fine)},
                     {"r1_bounded", study.r1_bounded},
                     {"r2_small_w_exponent", number(study.r2_small_w_exponent)},
                     {"r2_bound_sup", number(study.r2_bound_sup)},
                     {"r2_cubic_bound", study.r2_cubic_bound}};
  all = all && study.r1_bounded && study.r2_cubic_bound;
  j["overall"] = all ? "PASS" : "FAIL";
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace strichartz::cli
