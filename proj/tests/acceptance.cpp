// Acceptance suite: runs every release criterion end to end and prints one
// PASS/FAIL line per criterion. Criteria 1, 2, 6 and 8 drive the hka-credit
// binary (path passed as argv[1]); the rest exercise the library directly.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "hka/csv.hpp"
#include "hka/curves.hpp"
#include "hka/model.hpp"
#include "hka/pricing.hpp"

namespace {

std::string g_cli;
std::filesystem::path g_dir;
int g_failures = 0;
int g_validate_status = -1;

void announce(int index, const std::string& name, bool pass,
              const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), detail.empty() ? "" : " | ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

int run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + g_cli + " " + args +
                          " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WEXITSTATUS(raw);
}

std::filesystem::path write_file(const std::string& name,
                                 const std::string& text) {
  const auto path = g_dir / name;
  std::ofstream out(path);
  out << text;
  return path;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

hka::QuadraticModelParams make_params(double beta, int dim, double x,
                                      const hka::TimeChange& tc) {
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(dim);
  x0[0] = x;
  return hka::QuadraticModelParams(beta, dim, x0, tc, 25.0);
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// ---- validate report parsing ----------------------------------------------

struct ReportRow {
  std::string name;
  std::map<std::string, double> tags;
  double z = 0.0;
  bool pass = false;
};

struct Report {
  std::vector<ReportRow> rows;
  double max_abs_z = 0.0;
  double discrimination_z = 0.0;
  std::string verdict;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

Report parse_report(const std::string& text) {
  Report rep;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.rfind("max_abs_z=", 0) == 0) {
      rep.max_abs_z = hka::parse_double(line.substr(10));
    } else if (line.rfind("discrimination_z=", 0) == 0) {
      rep.discrimination_z = hka::parse_double(line.substr(17));
    } else if (line.rfind("verdict=", 0) == 0) {
      rep.verdict = line.substr(8);
    } else {
      const auto fields = split(line, ',');
      if (fields.size() != 6) continue;
      ReportRow row;
      const auto bracket = fields[0].find('[');
      row.name = fields[0].substr(0, bracket);
      if (bracket != std::string::npos && fields[0].back() == ']') {
        const std::string tags =
            fields[0].substr(bracket + 1, fields[0].size() - bracket - 2);
        for (const auto& tok : split(tags, ' ')) {
          const auto eq = tok.find('=');
          if (eq == std::string::npos) continue;
          try {
            row.tags[tok.substr(0, eq)] = hka::parse_double(tok.substr(eq + 1));
          } catch (const std::exception&) {
            // non-numeric tag (e.g. the lambda family); ignored
          }
        }
      }
      row.z = hka::parse_double(fields[4]);
      row.pass = fields[5] == "yes";
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

// ---- curve CSV parsing -----------------------------------------------------

using LabeledCurves = std::vector<std::pair<std::string, hka::Curve>>;

LabeledCurves parse_curves_csv(const std::string& text) {
  LabeledCurves curves;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    const auto fields = split(line, ',');
    if (fields.size() != 3) continue;
    const std::string& label = fields[2];
    if (curves.empty() || curves.back().first != label)
      curves.push_back({label, hka::Curve{label, {}, hka::CurveKind::Yield}});
    curves.back().second.points.emplace_back(hka::parse_double(fields[0]),
                                             hka::parse_double(fields[1]));
  }
  return curves;
}

// ---- scenario configs ------------------------------------------------------

std::string yield_sweep_config(double beta, double lambda_scale, int count) {
  std::ostringstream out;
  out << "model.beta = " << hka::format_double(beta) << "\n"
      << "model.dim = 1\n"
      << "model.x0 = 0.01\n"
      << "model.lambda.family = scaled-exp\n"
      << "model.lambda.c = " << hka::format_double(lambda_scale) << "\n"
      << "grid.min = 1\ngrid.max = 10\n"
      << "grid.count = " << count << "\n"
      << "curve.x_values = 0.01, 10, 20, 30\n";
  return out.str();
}

std::string spread_sweep_config() {
  return "model.beta = 0.1\nmodel.dim = 1\nmodel.x0 = 0\n"
         "model.lambda.family = power\nmodel.lambda.c = 1\n"
         "model.lambda.p = 0.5\n"
         "grid.min = 0.5\ngrid.max = 10\ngrid.count = 20\n"
         "curve.beta_values = 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, "
         "1\n";
}

std::string small_validate_config() {
  return "model.beta = 0.5\nmodel.dim = 1\nmodel.x0 = 1\n"
         "model.lambda.family = power\nmodel.lambda.c = 1\n"
         "model.lambda.p = 0.5\n"
         "mc.paths = 4000\nmc.steps = 150\nmc.seed = 20240917\n";
}

// ---- criteria --------------------------------------------------------------

void criteria_1_and_2() {
  const auto cfg = write_file("acceptance_validate.cfg",
                              "model.beta = 0.5\nmodel.dim = 1\nmodel.x0 = "
                              "1\nmodel.lambda.family = power\n"
                              "model.lambda.c = 1\nmodel.lambda.p = 0.5\n"
                              "mc.paths = 100000\nmc.steps = 1000\n"
                              "mc.seed = 42\n");
  const auto out = g_dir / "acceptance_report.csv";
  const auto start = std::chrono::steady_clock::now();
  g_validate_status =
      run_cli("validate --config " + cfg.string() + " --out " + out.string());
  const auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  const Report rep = parse_report(read_file(out));

  std::set<std::string> points;
  std::set<double> dims, betas, xs, horizons;
  std::map<std::string, int> estimator_rows;
  bool all_rows_pass = true;
  for (const auto& row : rep.rows) {
    if (row.name.rfind("mc_", 0) != 0) continue;
    ++estimator_rows[row.name];
    if (!row.pass) all_rows_pass = false;
    std::string point;
    for (const char* key : {"d", "beta", "x", "t", "T"}) {
      const auto it = row.tags.find(key);
      if (it == row.tags.end()) continue;
      point += std::string(key) + "=" + hka::format_double(it->second) + ";";
      const std::string k(key);
      if (k == "d") dims.insert(it->second);
      if (k == "beta") betas.insert(it->second);
      if (k == "x") xs.insert(it->second);
      if (k == "t" || k == "T") horizons.insert(it->second);
    }
    points.insert(point);
  }

  const bool coverage =
      points.size() >= 12 && dims.count(1.0) && dims.count(2.0) &&
      betas.count(0.1) && betas.count(0.5) && betas.count(1.0) &&
      xs.count(0.0) && xs.count(1.0) && xs.count(10.0) &&
      horizons.count(1.0) && horizons.count(5.0);
  const bool estimators_present = estimator_rows["mc_q"] >= 4 &&
                                  estimator_rows["mc_qhat"] >= 4 &&
                                  estimator_rows["mc_laplace"] >= 4 &&
                                  estimator_rows["mc_propagation"] >= 4 &&
                                  estimator_rows["mc_price_defaultable"] >= 4;

  announce(1, "every Monte Carlo estimator matches its closed form (|z| <= 3)",
           all_rows_pass && coverage && estimators_present &&
               g_validate_status == 0,
           "points=" + std::to_string(points.size()) +
               " max|z|=" + hka::format_double(rep.max_abs_z) + " runtime=" +
               std::to_string(static_cast<long long>(elapsed)) + "s exit=" +
               std::to_string(g_validate_status));

  bool match_ok = false;
  bool reject_ok = false;
  for (const auto& row : rep.rows) {
    if (row.name == "laplace_sign_match") match_ok = row.pass;
    if (row.name == "laplace_sign_reject") reject_ok = row.pass;
  }
  announce(2,
           "Monte Carlo rejects the flipped-sign closed form by >= 10 SE "
           "while matching the kept sign within 3 SE",
           match_ok && reject_ok && rep.discrimination_z >= 10.0,
           "discrimination_z=" + hka::format_double(rep.discrimination_z));
}

void criterion_3() {
  double max_rel_continuity = 0.0;
  for (double alpha : {0.0, 0.2, 0.5, 1.0})
    for (double t : {0.5, 1.0, 5.0})
      for (double x_sq : {0.0, 1.0, 4.0, 100.0})
        for (int dim : {1, 2, 3}) {
          const double near =
              hka::laplace_quadratic(alpha, 1e-5, t, x_sq, dim).value;
          const double at =
              hka::laplace_quadratic(alpha, 0.0, t, x_sq, dim).value;
          max_rel_continuity = std::max(max_rel_continuity, rel_err(near, at));
        }

  double max_rel_limit = 0.0;
  for (double alpha : {0.0, 0.2, 1.0})
    for (double beta : {0.3, 1.0})
      for (double x_sq : {0.0, 1.0, 4.0})
        for (int dim : {1, 2}) {
          const double got =
              hka::laplace_quadratic(alpha, beta, 1e-8, x_sq, dim).value;
          max_rel_limit =
              std::max(max_rel_limit, rel_err(got, std::exp(-alpha * x_sq)));
        }

  announce(3, "branch continuity at beta -> 0 and the t -> 0 limit (<= 1e-6)",
           max_rel_continuity <= 1e-6 && max_rel_limit <= 1e-6,
           "max_rel_beta0=" + hka::format_double(max_rel_continuity) +
               " max_rel_t0=" + hka::format_double(max_rel_limit));
}

void criterion_4() {
  const auto sqrt_tc = hka::TimeChange::power_law(1.0, 0.5);
  double max_rel_identity = 0.0;
  bool window_exact = true;
  for (double beta : {0.1, 0.7, 1.8})
    for (double x : {0.0, 1.0, 30.0})
      for (int dim : {1, 3})
        for (double t : {0.5, 5.0, 20.0}) {
          const auto p = make_params(beta, dim, x, sqrt_tc);
          max_rel_identity =
              std::max(max_rel_identity,
                       rel_err(hka::propagator_qhat(t, 0.0, p).value,
                               hka::propagator_q(t, p).value));
          if (hka::propagator_qhat(t, t, p).value != 1.0) window_exact = false;
        }

  bool flat_ok = true;
  const auto flat = make_params(0.0, 1, 2.0, sqrt_tc);
  for (double T = 0.5; T <= 10.0 + 1e-9; T += 0.5) {
    if (hka::price_defaultable(0.0, T, true, flat).price != 1.0)
      flat_ok = false;
    if (hka::price_default_free(0.0, T, flat).price != 1.0) flat_ok = false;
    if (std::abs(hka::credit_spread(0.0, T, flat).spread) > 1e-10)
      flat_ok = false;
  }

  announce(4,
           "exact identities: qhat(t,0)=q to 1e-12, qhat(t,t)=1, flat model "
           "prices at par with zero spread",
           max_rel_identity <= 1e-12 && window_exact && flat_ok,
           "max_rel_qhat0=" + hka::format_double(max_rel_identity));
}

void criterion_5() {
  const auto exp10 = hka::TimeChange::scaled_exponential(0.1);
  const auto exp100 = hka::TimeChange::scaled_exponential(0.01);
  const auto sqrt_tc = hka::TimeChange::power_law(1.0, 0.5);

  bool ordering_ok = true;
  bool monotone_ok = true;
  bool finite_ok = true;
  const auto scan = [&](double beta, const hka::TimeChange& tc) {
    for (double x : {0.01, 10.0, 20.0, 30.0}) {
      const auto p = make_params(beta, 1, x, tc);
      double prev_log_pd = 0.0;
      bool first = true;
      for (double T = 0.5; T <= 10.0 + 1e-9; T += 0.5) {
        const double log_pd = hka::log_price_defaultable(0.0, T, p);
        const double log_pf = hka::log_price_default_free(0.0, T, p);
        if (!std::isfinite(log_pd) || !std::isfinite(log_pf))
          finite_ok = false;
        if (log_pd > log_pf + 1e-12) ordering_ok = false;
        if (!first && log_pd > prev_log_pd + 1e-12) monotone_ok = false;
        prev_log_pd = log_pd;
        first = false;
      }
    }
  };
  scan(0.1, exp10);   // first yield-curve scenario
  scan(1.8, exp100);  // second yield-curve scenario

  // spread curves: lambda = sqrt(t), x = 0, beta swept
  bool spread_nonneg = true;
  bool spread_monotone = true;
  bool spread_ordered = true;
  std::vector<double> prev_curve;
  for (int bi = 1; bi <= 10; ++bi) {
    const double beta = 0.1 * bi;
    const auto p = make_params(beta, 1, 0.0, sqrt_tc);
    std::vector<double> curve;
    for (double T = 0.5; T <= 10.0 + 1e-9; T += 0.5) {
      const double s = hka::credit_spread(0.0, T, p).spread;
      if (s < -1e-10) spread_nonneg = false;
      if (!curve.empty() && s < curve.back() - 1e-12) spread_monotone = false;
      curve.push_back(s);
    }
    if (!prev_curve.empty())
      for (std::size_t i = 0; i < curve.size(); ++i)
        if (curve[i] <= prev_curve[i]) spread_ordered = false;
    prev_curve = curve;
  }

  announce(5,
           "ordering on the scenario grids: 0 < P_d <= P_f, P_d non-increasing "
           "in T, spreads non-negative, non-decreasing and ordered in beta",
           ordering_ok && monotone_ok && finite_ok && spread_nonneg &&
               spread_monotone && spread_ordered,
           "");
}

void criterion_6() {
  bool exit_ok = true;
  bool ordered_ok = true;
  bool stable_ok = true;
  std::string shapes;

  const auto run_scenario = [&](const std::string& tag, double beta,
                                double scale) {
    std::map<std::string, bool> hump_at_coarse;
    for (int count : {10, 19}) {
      const auto cfg = write_file(
          "yield_" + tag + "_" + std::to_string(count) + ".cfg",
          yield_sweep_config(beta, scale, count));
      const auto out =
          g_dir / ("yield_" + tag + "_" + std::to_string(count) + ".csv");
      if (run_cli("yield-curve --config " + cfg.string() + " --out " +
                  out.string()) != 0)
        exit_ok = false;
      const auto curves = parse_curves_csv(read_file(out));
      if (curves.size() != 4) {
        exit_ok = false;
        continue;
      }
      // pointwise ordering in x (labels are emitted in sweep order)
      for (std::size_t c = 1; c < curves.size(); ++c)
        for (std::size_t i = 0; i < curves[c].second.points.size(); ++i)
          if (curves[c].second.points[i].second <=
              curves[c - 1].second.points[i].second)
            ordered_ok = false;
      for (const auto& [label, curve] : curves) {
        const auto shape = hka::shape_report(curve);
        if (count == 10) {
          hump_at_coarse[label] = shape.hump_at.has_value();
          shapes += tag + " " + label +
                    (shape.hump_at.has_value()
                         ? ":hump@T=" + hka::format_double(*shape.hump_at)
                         : (shape.monotone_nondecreasing ? ":nondecreasing"
                                                         : ":other")) +
                    " ";
        } else if (hump_at_coarse[label] != shape.hump_at.has_value()) {
          stable_ok = false;
        }
      }
    }
  };
  run_scenario("xsweep", 0.1, 0.1);
  run_scenario("highbeta", 1.8, 0.01);

  announce(6,
           "yield-curve scenarios: curves ordered pointwise in x, hump "
           "verdicts stable under grid doubling",
           exit_ok && ordered_ok && stable_ok, shapes);
}

void criterion_7() {
  const auto sqrt_tc = hka::TimeChange::power_law(1.0, 0.5);
  double max_rel = 0.0;
  for (int bi = 1; bi <= 10; ++bi) {
    const auto p = make_params(0.1 * bi, 1, 0.0, sqrt_tc);
    for (double T = 0.5; T <= 10.0 + 1e-9; T += 0.5) {
      const double h = hka::default_spread_step(T);
      const double coarse = hka::credit_spread(0.0, T, p, h).spread;
      const double fine = hka::credit_spread(0.0, T, p, 0.1 * h).spread;
      max_rel = std::max(max_rel, rel_err(coarse, fine));
    }
  }
  announce(7,
           "Richardson spreads at h and h/10 agree to 1e-6 relative on the "
           "spread-curve grid",
           max_rel <= 1e-6, "max_rel=" + hka::format_double(max_rel));
}

void criterion_8() {
  const auto validate_cfg =
      write_file("determinism_validate.cfg", small_validate_config());
  const auto report1 = g_dir / "det_report_1.txt";
  const auto report2 = g_dir / "det_report_2.txt";
  bool ok = run_cli("validate --config " + validate_cfg.string() + " --out " +
                        report1.string(),
                    "HKA_THREADS=1") == 0;
  ok = run_cli("validate --config " + validate_cfg.string() + " --out " +
                   report2.string(),
               "HKA_THREADS=3") == 0 &&
       ok;
  const bool validate_identical = read_file(report1) == read_file(report2) &&
                                  !read_file(report1).empty();

  const auto yield_cfg =
      write_file("determinism_yield.cfg", yield_sweep_config(0.1, 0.1, 10));
  const auto yield1 = g_dir / "det_yield_1.csv";
  const auto yield2 = g_dir / "det_yield_2.csv";
  ok = run_cli("yield-curve --config " + yield_cfg.string() + " --out " +
                   yield1.string(),
               "HKA_THREADS=1") == 0 &&
       ok;
  ok = run_cli("yield-curve --config " + yield_cfg.string() + " --out " +
                   yield2.string(),
               "HKA_THREADS=4") == 0 &&
       ok;
  const bool yield_identical =
      read_file(yield1) == read_file(yield2) && !read_file(yield1).empty();

  const auto spread_cfg =
      write_file("determinism_spread.cfg", spread_sweep_config());
  const auto spread1 = g_dir / "det_spread_1.csv";
  const auto spread2 = g_dir / "det_spread_2.csv";
  ok = run_cli("spread-curve --config " + spread_cfg.string() + " --out " +
                   spread1.string()) == 0 &&
       ok;
  ok = run_cli("spread-curve --config " + spread_cfg.string() + " --out " +
                   spread2.string()) == 0 &&
       ok;
  const bool spread_identical =
      read_file(spread1) == read_file(spread2) && !read_file(spread1).empty();

  announce(8,
           "validate and curve outputs byte-identical across reruns and "
           "worker counts",
           ok && validate_identical && yield_identical && spread_identical,
           "");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-hka-credit>\n");
    return 64;
  }
  g_cli = argv[1];
  char tmpl[] = "/tmp/hka_acceptance_XXXXXX";
  if (!mkdtemp(tmpl)) {
    std::perror("mkdtemp");
    return 64;
  }
  g_dir = tmpl;

  criteria_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();

  std::filesystem::remove_all(g_dir);
  std::printf("%s (%d failing criteria)\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures);
  return g_failures;
}
