// Command-line front-end. Every run echoes its resolved configuration into
// the report so any emitted artifact can be re-run from its own config block.
// Exit codes: 0 success, 2 numeric validation failure, 64 usage error.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dioph/approxfn.hpp"
#include "dioph/errors.hpp"
#include "dioph/ia_channel.hpp"
#include "dioph/json_io.hpp"
#include "dioph/manifold.hpp"
#include "dioph/scalar_bounds.hpp"
#include "dioph/verifier.hpp"

namespace {

using dioph::ApproxFunction;
using nlohmann::json;

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct CommonFlags {
  std::string out;  // per-command default filled at registration
  std::string output_file;
  bool quiet = false;
  bool display = false;
};

void add_common(CLI::App* sub, CommonFlags& c, const std::string& default_out) {
  c.out = default_out;
  sub->add_option("--out", c.out, "report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--output", c.output_file, "write the report to a file instead of stdout");
  sub->add_flag("--quiet", c.quiet, "suppress informational notes on stderr");
  sub->add_flag("--display", c.display,
                "round CSV numbers to display precision instead of 17 digits");
}

void write_report(const CommonFlags& c, const std::string& text) {
  if (c.output_file.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.output_file, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + c.output_file);
  f << text;
}

std::string envelope(const std::string& command, const json& config, const json& report) {
  json env{{"schema", "effective-dioph/1"},
           {"command", command},
           {"config", config},
           {"report", report}};
  return env.dump(2) + "\n";
}

std::string csv_header(const std::string& command, const json& config) {
  return "# schema=effective-dioph/1\n# command=" + command +
         "\n# config=" + config.dump() + "\n";
}

std::string fmt(double v, int precision = 17) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  json j;
  f >> j;
  // accept either a bare config object or a full report envelope
  if (j.contains("config")) return j.at("config");
  return j;
}

// scientific-notation string -> LogReal; survives exponents far outside the
// double range (the admissible radius can be 10^-900)
dioph::LogReal parse_logreal(const std::string& s) {
  try {
    const auto epos = s.find_first_of("eE");
    if (epos == std::string::npos) return dioph::LogReal::from_double(std::stod(s));
    const double mant = std::stod(s.substr(0, epos));
    const double expo = std::stod(s.substr(epos + 1));
    if (mant == 0.0) return dioph::LogReal::zero();
    return dioph::LogReal::from_double(mant) * dioph::LogReal::from_log10(expo);
  } catch (const std::invalid_argument&) {
    throw UsageError("cannot parse number: " + s);
  }
}

struct PsiFlags {
  std::string variant = "log-square";
  std::int64_t Q = 0;
  double c = 1.0;
  double s = 0.0;
  std::vector<double> values;
  double tail_bound = 0.0;
  bool s_given = false;
};

void add_psi(CLI::App* sub, PsiFlags& p, const std::string& default_variant) {
  p.variant = default_variant;
  sub->add_option("--psi", p.variant, "approximating function")
      ->check(CLI::IsMember({"log-square", "uniform", "power", "tabulated"}))
      ->capture_default_str();
  sub->add_option("--Q", p.Q, "cutoff for --psi uniform");
  sub->add_option("--c", p.c, "coefficient for --psi power")->capture_default_str();
  sub->add_option("--s", p.s, "exponent for --psi power");
  sub->add_option("--values", p.values, "table for --psi tabulated")->delimiter(',');
  sub->add_option("--tail-bound", p.tail_bound,
                  "certified omitted series mass for --psi tabulated");
}

ApproxFunction build_psi(const PsiFlags& p, double default_power_s = 0.0) {
  if (p.variant == "log-square") return ApproxFunction::log_square_decay();
  if (p.variant == "uniform") {
    if (p.Q <= 0) throw UsageError("--psi uniform requires --Q >= 1");
    return ApproxFunction::uniform_cutoff(p.Q);
  }
  if (p.variant == "power") {
    double s = p.s;
    if (s <= 0.0) s = default_power_s;
    if (s <= 0.0) throw UsageError("--psi power requires --s > 0");
    return ApproxFunction::power_decay(p.c, s);
  }
  if (p.values.empty()) throw UsageError("--psi tabulated requires --values");
  return ApproxFunction::tabulated(p.values, p.tail_bound);
}

// ---------------------------------------------------------------- subcommands

struct ScalarArgs {
  CommonFlags common;
  PsiFlags psi;
  std::string formula = "gaussian";
  double delta = 0.0;
  int m = 1, n = 1;
  std::string p = "inf";
  double sigma_f = 0.0;
  bool even_psi = false;
  std::string density = "gaussian";
  double side = 1.0;
  double K = 0.0;
  std::vector<std::string> coverage;
  double sigma_override = 0.0;
  double m_psi_override = 0.0;
  bool sigma_given = false, m_psi_given = false, sigma_f_given = false, K_given = false;
};

int run_constants_scalar(const ScalarArgs& a) {
  const ApproxFunction psi = build_psi(a.psi);
  const double rel_tol = 1e-9;

  json config{{"formula", a.formula}, {"delta", a.delta}, {"psi", dioph::to_json(psi)}};
  json report;

  if (a.formula == "gaussian") {
    if (a.m != 1 || a.n != 1)
      throw std::invalid_argument("the gaussian scalar formula requires m = n = 1");
    const double sigma =
        a.sigma_given
            ? a.sigma_override
            : dioph::sigma_psi(psi, 1, 1, rel_tol, dioph::SumConvention::one_sided).value;
    config["sigma"] = sigma;
    const dioph::GaussianScalarReport rep = dioph::kappa_gaussian_scalar(a.delta, sigma);
    report = dioph::to_json(rep);
    if (a.common.out == "csv") {
      std::string text = csv_header("constants-scalar", config) + "delta,N,kappa\n";
      if (a.common.display)
        text += fmt(rep.delta, 6) + "," + std::to_string(rep.N) + "," + fmt(rep.kappa, 2) + "\n";
      else
        text += fmt(rep.delta) + "," + std::to_string(rep.N) + "," + fmt(rep.kappa) + "\n";
      write_report(a.common, text);
      return 0;
    }
    write_report(a.common, envelope("constants-scalar", config, report));
    return 0;
  }

  const double sigma_sym =
      a.sigma_given
          ? a.sigma_override
          : dioph::sigma_psi(psi, a.m, a.n, rel_tol, dioph::SumConvention::symmetric).value;
  const double mp = a.m_psi_given ? a.m_psi_override : dioph::m_psi(psi);
  config["sigma"] = sigma_sym;
  config["m_psi"] = mp;
  config["m"] = a.m;
  config["n"] = a.n;

  dioph::KappaReport rep;
  if (a.formula == "density") {
    if (!a.sigma_f_given) throw UsageError("--formula density requires --sigma-f");
    double p = std::numeric_limits<double>::infinity();
    if (a.p != "inf") p = std::stod(a.p);
    config["p"] = a.p;
    config["sigma_f"] = a.sigma_f;
    config["even_psi"] = a.even_psi;
    rep = dioph::kappa_theorem2(a.m, a.n, p, a.sigma_f, sigma_sym, mp, a.delta, a.even_psi);
  } else {
    dioph::DensityModel model;
    if (a.density == "gaussian") {
      model = dioph::DensityModel::standard_gaussian();
    } else if (a.density == "cube") {
      model = dioph::DensityModel::uniform_cube(a.side);
      config["side"] = a.side;
    } else {
      if (!a.K_given) throw UsageError("--density bounded requires --K");
      std::function<double(std::int64_t)> cov;
      if (!a.coverage.empty()) {
        auto table = std::make_shared<std::map<std::int64_t, double>>();
        for (const std::string& pair : a.coverage) {
          const auto eq = pair.find('=');
          if (eq == std::string::npos) throw UsageError("--coverage entries look like T=mass");
          (*table)[std::stoll(pair.substr(0, eq))] = std::stod(pair.substr(eq + 1));
        }
        cov = [table](std::int64_t T) {
          auto it = table->upper_bound(T);
          return it == table->begin() ? 0.0 : std::prev(it)->second;
        };
      }
      model = dioph::DensityModel::bounded(a.K, std::move(cov));
      config["K"] = a.K;
    }
    config["density"] = a.density;
    rep = dioph::kappa_corollary2(a.m, a.n, model, sigma_sym, mp, a.delta);
  }
  report = dioph::to_json(rep);

  if (a.common.out == "csv") {
    std::string text = csv_header("constants-scalar", config) +
                       "formula,branch,kappa,delta,branch_sup,branch_measure\n";
    const int prec = a.common.display ? 6 : 17;
    text += a.formula + "," +
            std::string(rep.branch == dioph::KappaBranch::sup_bound ? "sup-bound"
                                                                    : "measure-bound") +
            "," + fmt(rep.kappa, prec) + "," + fmt(rep.delta, prec) + "," +
            fmt(rep.branch_sup, prec) + "," + fmt(rep.branch_measure, prec) + "\n";
    write_report(a.common, text);
    return 0;
  }
  write_report(a.common, envelope("constants-scalar", config, report));
  return 0;
}

struct ManifoldArgs {
  CommonFlags common;
  PsiFlags psi;
  int d = 1, n = 1, l = 1;
  double s0 = 1.0, M = 1.0, L_star = 0.0;
  double delta = 0.0;
  std::string r = "auto";
};

int run_constants_manifold(const ManifoldArgs& a) {
  dioph::ManifoldParams params;
  params.d = a.d;
  params.n = a.n;
  params.l = a.l;
  params.s0 = a.s0;
  params.M = a.M;
  params.L_star = a.L_star;

  // the final bound requires a non-increasing psi with a convergent symmetric
  // series at m = 1; power decay with s = n + 1 satisfies both
  const ApproxFunction psi = build_psi(a.psi, double(a.n) + 1.0);
  const dioph::ApproxSummary summary = dioph::summarize(psi, 1, a.n);

  dioph::LogReal r_request = dioph::LogReal::zero();
  if (a.r != "auto") r_request = parse_logreal(a.r);

  const dioph::ConstantsLedger led = dioph::kappa_theorem5(params, r_request, summary, a.delta);

  json config{{"d", a.d},       {"n", a.n},           {"l", a.l},
              {"s0", a.s0},     {"M", a.M},           {"L_star", a.L_star},
              {"delta", a.delta}, {"r", a.r},         {"psi", dioph::to_json(psi)}};
  const json report = dioph::to_json(led);

  if (!a.common.quiet) {
    const json& rep = report;
    std::fprintf(stderr, "%-16s %16s %24s\n", "constant", "log10", "value");
    for (auto it = rep.begin(); it != rep.end(); ++it) {
      if (!it.value().is_object() || !it.value().contains("log10")) continue;
      const json& v = it.value();
      const std::string lg = v["log10"].is_null() ? "-inf" : fmt(v["log10"].get<double>(), 12);
      const std::string lin = v["value"].is_null() ? "-" : fmt(v["value"].get<double>(), 12);
      std::fprintf(stderr, "%-16s %16s %24s\n", it.key().c_str(), lg.c_str(), lin.c_str());
    }
    std::fprintf(stderr, "%-16s %16s\n", "active_branch",
                 rep["active_branch"].get<std::string>().c_str());
  }

  if (a.common.out == "csv") {
    std::string text = csv_header("constants-manifold", config) + "constant,log10,value\n";
    const int prec = a.common.display ? 6 : 17;
    for (auto it = report.begin(); it != report.end(); ++it) {
      if (!it.value().is_object() || !it.value().contains("log10")) continue;
      const json& v = it.value();
      text += it.key() + ",";
      text += (v["log10"].is_null() ? std::string("") : fmt(v["log10"].get<double>(), prec));
      text += ",";
      text += (v["value"].is_null() ? std::string("") : fmt(v["value"].get<double>(), prec));
      text += "\n";
    }
    write_report(a.common, text);
    return 0;
  }
  write_report(a.common, envelope("constants-manifold", config, report));
  return 0;
}

struct TableArgs {
  CommonFlags common;
  std::vector<double> deltas{0.5, 0.25, 0.1, 0.01, 1e-3, 1e-5};
  double sigma = 0.0;
  bool sigma_given = false;
};

int run_table(const TableArgs& a) {
  const double sigma =
      a.sigma_given ? a.sigma
                    : dioph::sigma_psi(ApproxFunction::log_square_decay(), 1, 1, 1e-9,
                                       dioph::SumConvention::one_sided)
                          .value;
  const auto rows = dioph::gaussian_scalar_table(a.deltas, sigma);

  json config{{"delta", a.deltas}, {"sigma", sigma}};
  if (a.common.out == "json") {
    json report = json::array();
    for (const auto& r : rows) report.push_back(dioph::to_json(r));
    write_report(a.common, envelope("table", config, report));
    return 0;
  }
  std::string text = csv_header("table", config) + "delta,N,kappa\n";
  for (const auto& r : rows) {
    if (a.common.display)
      text += fmt(r.delta, 6) + "," + std::to_string(r.N) + "," + fmt(r.kappa, 2) + "\n";
    else
      text += fmt(r.delta) + "," + std::to_string(r.N) + "," + fmt(r.kappa) + "\n";
  }
  write_report(a.common, text);
  return 0;
}

struct VerifyArgs {
  CommonFlags common;
  PsiFlags psi;
  std::string config_file;
  int m = 1, n = 1;
  double kappa = 0.0;
  double delta = 0.0;
  bool kappa_given = false, delta_given = false;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::int64_t cutoff = 0;
  std::string dist = "gaussian";
  double side = 1.0;
  int threads = 0;
};

int run_verify(const VerifyArgs& a) {
  dioph::TrialConfig cfg;
  json derivation;

  if (!a.config_file.empty()) {
    cfg = dioph::trial_config_from_json(load_json_file(a.config_file));
    cfg.threads = a.threads;
  } else {
    cfg.m = a.m;
    cfg.n = a.n;
    cfg.psi = build_psi(a.psi);
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    cfg.cutoff = a.cutoff;
    cfg.side = a.side;
    cfg.threads = a.threads;
    cfg.dist = a.dist == "cube" ? dioph::DensityKind::uniform_cube
                                : dioph::DensityKind::standard_gaussian;
    if (a.kappa_given) {
      cfg.kappa = a.kappa;
    } else if (a.delta_given) {
      // derive kappa from the matching explicit formula
      if (a.dist == "gaussian" && a.m == 1 && a.n == 1) {
        const double sigma =
            dioph::sigma_psi(cfg.psi, 1, 1, 1e-9, dioph::SumConvention::one_sided).value;
        const auto rep = dioph::kappa_gaussian_scalar(a.delta, sigma);
        cfg.kappa = rep.kappa;
        derivation = dioph::to_json(rep);
      } else {
        const dioph::DensityModel model = a.dist == "cube"
                                              ? dioph::DensityModel::uniform_cube(a.side)
                                              : dioph::DensityModel::standard_gaussian();
        const double sigma =
            dioph::sigma_psi(cfg.psi, a.m, a.n, 1e-9, dioph::SumConvention::symmetric).value;
        const auto rep =
            dioph::kappa_corollary2(a.m, a.n, model, sigma, dioph::m_psi(cfg.psi), a.delta);
        cfg.kappa = rep.kappa;
        derivation = dioph::to_json(rep);
      }
    } else {
      throw UsageError("verify requires --kappa or --delta");
    }
  }

  const dioph::TrialReport rep = dioph::estimate_B_measure(cfg);
  json config = dioph::to_json(cfg);
  json report = dioph::to_json(rep);
  if (!derivation.is_null()) report["kappa_derivation"] = derivation;

  if (a.common.out == "csv") {
    std::string text = csv_header("verify", config) +
                       "trials,members,estimate,ci_lo,ci_hi,exhaustive,cutoff\n";
    const int prec = a.common.display ? 6 : 17;
    text += std::to_string(rep.trials) + "," + std::to_string(rep.members) + "," +
            fmt(rep.estimate, prec) + "," + fmt(rep.ci.lo, prec) + "," + fmt(rep.ci.hi, prec) +
            "," + (rep.exhaustive ? "1" : "0") + "," + std::to_string(rep.cutoff) + "\n";
    write_report(a.common, text);
    return 0;
  }
  write_report(a.common, envelope("verify", config, report));
  return 0;
}

struct MeasureWArgs {
  CommonFlags common;
  std::vector<std::int64_t> a;
  double epsilon = 0.0;
  int m = 1;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
};

int run_measure_w(const MeasureWArgs& a) {
  const dioph::WMeasureReport rep =
      dioph::measure_of_W(a.a, a.epsilon, a.m, a.samples, a.seed);
  json config{{"a", a.a},       {"epsilon", a.epsilon}, {"m", a.m},
              {"samples", a.samples}, {"seed", a.seed}};
  if (a.common.out == "csv") {
    std::string text = csv_header("measure-w", config) +
                       "epsilon,m,samples,hits,empirical,exact,ci_lo,ci_hi\n";
    const int prec = a.common.display ? 6 : 17;
    text += fmt(rep.epsilon, prec) + "," + std::to_string(rep.m) + "," +
            std::to_string(rep.samples) + "," + std::to_string(rep.hits) + "," +
            fmt(rep.empirical, prec) + "," + fmt(rep.exact, prec) + "," + fmt(rep.ci.lo, prec) +
            "," + fmt(rep.ci.hi, prec) + "\n";
    write_report(a.common, text);
    return 0;
  }
  write_report(a.common, envelope("measure-w", config, dioph::to_json(rep)));
  return 0;
}

struct IaSimArgs {
  CommonFlags common;
  std::string config_file;
  std::string channel;
  double h1 = 0.0, h2 = -1.0;
  double h11 = 0.0, h12 = 0.0, h21 = 0.0, h22 = 0.0;
  bool h1_given = false;
  std::string precode = "aligned";
  std::vector<double> levels;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::string noise = "uniform";
  bool sweep_flags_given = false;
};

int run_ia_sim(const IaSimArgs& a) {
  dioph::ChannelInstance ch = dioph::MacChannel{};
  dioph::Precoding pre = dioph::Precoding::aligned;
  dioph::SweepConfig sweep;
  bool do_sweep = false;

  if (!a.config_file.empty()) {
    const dioph::SweepBundle bundle = dioph::sweep_from_json(load_json_file(a.config_file));
    ch = bundle.channel;
    pre = bundle.precoding;
    sweep = bundle.config;
    do_sweep = true;
  } else {
    if (a.channel.empty()) throw UsageError("ia-sim requires --channel mac|x or --config");
    if (a.channel == "mac") {
      if (!a.h1_given) throw UsageError("--channel mac requires --h1");
      dioph::MacChannel mac;
      mac.h1 = a.h1;
      mac.h2 = a.h2 < 0.0 ? 1.0 - a.h1 : a.h2;
      ch = mac;
    } else {
      dioph::XChannel x{a.h11, a.h12, a.h21, a.h22};
      ch = x;
    }
    pre = a.precode == "none" ? dioph::Precoding::none : dioph::Precoding::aligned;
    if (!a.levels.empty()) {
      sweep.levels = a.levels;
      sweep.trials = a.trials;
      sweep.seed = a.seed;
      sweep.noise =
          a.noise == "gaussian" ? dioph::NoiseKind::gaussian : dioph::NoiseKind::uniform;
      do_sweep = true;
    }
  }

  if (do_sweep) {
    const auto rows = dioph::run_noise_sweep(ch, pre, sweep);
    const json config = dioph::to_json(sweep, ch, pre);
    if (a.common.out == "json") {
      write_report(a.common, envelope("ia-sim", config, dioph::to_json(rows)));
      return 0;
    }
    std::string text = csv_header("ia-sim", config) + "noise_level,trials,successes,rate\n";
    const int prec = a.common.display ? 6 : 17;
    for (const auto& r : rows)
      text += fmt(r.level, prec) + "," + std::to_string(r.trials) + "," +
              std::to_string(r.successes) + "," + fmt(r.rate, prec) + "\n";
    write_report(a.common, text);
    return 0;
  }

  // no sweep requested: emit the noiseless outcome tables
  json config{{"channel", dioph::to_json(ch)},
              {"precoding", pre == dioph::Precoding::aligned ? "aligned" : "none"}};
  if (const dioph::MacChannel* mac = std::get_if<dioph::MacChannel>(&ch)) {
    const dioph::OutcomeSet outcomes = dioph::mac_outcomes(*mac, pre);
    if (a.common.out == "json") {
      write_report(a.common, envelope("ia-sim", config, dioph::to_json(outcomes)));
      return 0;
    }
    std::string text = csv_header("ia-sim", config) + "value,u,v\n";
    const int prec = a.common.display ? 6 : 17;
    for (std::size_t i = 0; i < outcomes.values.size(); ++i)
      text += fmt(outcomes.values[i], prec) + "," + std::to_string(outcomes.labels[i].first) +
              "," + std::to_string(outcomes.labels[i].second) + "\n";
    text += "# min_separation=" + fmt(outcomes.min_separation, prec) + "\n";
    text += "# tolerance=" + fmt(outcomes.tolerance, prec) + "\n";
    write_report(a.common, text);
    return 0;
  }

  const dioph::XChannel& x = std::get<dioph::XChannel>(ch);
  json report = json::array();
  std::string text = csv_header("ia-sim", config) + "receiver,value,own1,own2,w\n";
  const int prec = a.common.display ? 6 : 17;
  for (int receiver = 1; receiver <= 2; ++receiver) {
    const dioph::XOutcomeTable table = dioph::x_receiver_table(x, receiver, pre);
    json labels = json::array();
    for (const auto& lab : table.labels) labels.push_back({lab[0], lab[1], lab[2]});
    report.push_back({{"receiver", receiver},
                      {"values", table.values},
                      {"labels", labels},
                      {"min_separation", table.min_separation},
                      {"tolerance", table.tolerance}});
    for (std::size_t i = 0; i < table.values.size(); ++i)
      text += std::to_string(receiver) + "," + fmt(table.values[i], prec) + "," +
              std::to_string(table.labels[i][0]) + "," + std::to_string(table.labels[i][1]) +
              "," + std::to_string(table.labels[i][2]) + "\n";
  }
  if (a.common.out == "json") {
    write_report(a.common, envelope("ia-sim", config, report));
    return 0;
  }
  write_report(a.common, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"effective badly-approximable constants: computation, verification, simulation"};
  app.require_subcommand(1);

  ScalarArgs sc;
  CLI::App* sub_sc = app.add_subcommand(
      "constants-scalar", "explicit kappa for random systems of linear forms");
  add_common(sub_sc, sc.common, "json");
  add_psi(sub_sc, sc.psi, "log-square");
  sub_sc->add_option("--formula", sc.formula, "which bound to evaluate")
      ->check(CLI::IsMember({"gaussian", "density", "cube"}))
      ->capture_default_str();
  sub_sc->add_option("--delta", sc.delta, "failure probability budget")->required();
  sub_sc->add_option("--m", sc.m, "number of linear forms")->capture_default_str();
  sub_sc->add_option("--n", sc.n, "number of integer variables")->capture_default_str();
  sub_sc->add_option("--p", sc.p, "density norm exponent, a number or inf")
      ->capture_default_str();
  sub_sc->add_option("--sigma-f", sc.sigma_f, "density norm value for --formula density");
  sub_sc->add_option("--density", sc.density, "entry distribution for --formula cube")
      ->check(CLI::IsMember({"gaussian", "cube", "bounded"}))
      ->capture_default_str();
  sub_sc->add_option("--side", sc.side, "cube side for --density cube")->capture_default_str();
  sub_sc->add_option("--K", sc.K, "density sup bound for --density bounded");
  sub_sc->add_option("--coverage", sc.coverage,
                     "cube coverage table entries T=mass for --density bounded")
      ->delimiter(',');
  sub_sc->add_flag("--even-psi", sc.even_psi, "halve the symmetric series (even psi refinement)");
  sub_sc->add_option("--sigma", sc.sigma_override, "override the computed series value");
  sub_sc->add_option("--m-psi", sc.m_psi_override, "override the computed sup of psi");

  ManifoldArgs mf;
  CLI::App* sub_mf = app.add_subcommand(
      "constants-manifold", "explicit kappa for points on a nondegenerate manifold");
  add_common(sub_mf, mf.common, "json");
  add_psi(sub_mf, mf.psi, "power");
  sub_mf->add_option("--d", mf.d, "manifold dimension")->required();
  sub_mf->add_option("--n", mf.n, "ambient dimension")->required();
  sub_mf->add_option("--l", mf.l, "non-degeneracy order")->capture_default_str();
  sub_mf->add_option("--s0", mf.s0, "measure of non-degeneracy")->capture_default_str();
  sub_mf->add_option("--M", mf.M, "derivative sup bound")->capture_default_str();
  sub_mf->add_option("--L-star", mf.L_star, "second-derivative sup bound (0 uses M)")
      ->capture_default_str();
  sub_mf->add_option("--delta", mf.delta, "failure probability budget")->required();
  sub_mf->add_option("--r", mf.r, "ball radius: auto or a number (scientific ok)")
      ->capture_default_str();

  TableArgs tb;
  CLI::App* sub_tb =
      app.add_subcommand("table", "delta/N/kappa table for the gaussian scalar bound");
  add_common(sub_tb, tb.common, "csv");
  sub_tb->add_option("--delta", tb.deltas, "comma-separated delta list")->delimiter(',');
  sub_tb->add_option("--sigma", tb.sigma, "series value (computed when omitted)");

  VerifyArgs vf;
  CLI::App* sub_vf = app.add_subcommand(
      "verify", "Monte Carlo estimate of the badly-approximable probability");
  add_common(sub_vf, vf.common, "json");
  add_psi(sub_vf, vf.psi, "log-square");
  sub_vf->add_option("--config", vf.config_file, "re-run from an emitted JSON config");
  sub_vf->add_option("--m", vf.m, "number of linear forms")->capture_default_str();
  sub_vf->add_option("--n", vf.n, "number of integer variables")->capture_default_str();
  sub_vf->add_option("--kappa", vf.kappa, "threshold constant");
  sub_vf->add_option("--delta", vf.delta, "derive kappa from the explicit formula");
  sub_vf->add_option("--trials", vf.trials, "sampled matrices")->capture_default_str();
  sub_vf->add_option("--seed", vf.seed, "RNG seed")->capture_default_str();
  sub_vf->add_option("--cutoff", vf.cutoff, "max ||a||_inf scanned (0 = policy default)")
      ->capture_default_str();
  sub_vf->add_option("--dist", vf.dist, "matrix entry distribution")
      ->check(CLI::IsMember({"gaussian", "cube"}))
      ->capture_default_str();
  sub_vf->add_option("--side", vf.side, "cube side for --dist cube")->capture_default_str();
  sub_vf->add_option("--threads", vf.threads, "worker count (0 = hardware)")
      ->capture_default_str();

  MeasureWArgs mw;
  CLI::App* sub_mw = app.add_subcommand(
      "measure-w", "empirical vs exact measure of the neighbourhood event");
  add_common(sub_mw, mw.common, "json");
  sub_mw->add_option("--a", mw.a, "integer vector, comma separated")
      ->delimiter(',')
      ->required();
  sub_mw->add_option("--epsilon", mw.epsilon, "neighbourhood half-width")->required();
  sub_mw->add_option("--m", mw.m, "number of rows")->capture_default_str();
  sub_mw->add_option("--samples", mw.samples, "sampled matrices")->capture_default_str();
  sub_mw->add_option("--seed", mw.seed, "RNG seed")->capture_default_str();

  IaSimArgs ia;
  CLI::App* sub_ia = app.add_subcommand(
      "ia-sim", "interference channel outcome tables and noise sweeps");
  add_common(sub_ia, ia.common, "csv");
  sub_ia->add_option("--config", ia.config_file, "re-run a sweep from an emitted JSON config");
  sub_ia->add_option("--channel", ia.channel, "mac or x")
      ->check(CLI::IsMember({"mac", "x"}));
  sub_ia->add_option("--h1", ia.h1, "mac gain for user 1");
  sub_ia->add_option("--h2", ia.h2, "mac gain for user 2 (1 - h1 when omitted)");
  sub_ia->add_option("--h11", ia.h11, "x-channel gain receiver 1 <- user 1");
  sub_ia->add_option("--h12", ia.h12, "x-channel gain receiver 1 <- user 2");
  sub_ia->add_option("--h21", ia.h21, "x-channel gain receiver 2 <- user 1");
  sub_ia->add_option("--h22", ia.h22, "x-channel gain receiver 2 <- user 2");
  sub_ia->add_option("--precode", ia.precode, "none or aligned")
      ->check(CLI::IsMember({"none", "aligned"}))
      ->capture_default_str();
  sub_ia->add_option("--levels", ia.levels, "noise magnitudes for a sweep")->delimiter(',');
  sub_ia->add_option("--trials", ia.trials, "trials per level")->capture_default_str();
  sub_ia->add_option("--seed", ia.seed, "RNG seed")->capture_default_str();
  sub_ia->add_option("--noise", ia.noise, "uniform or gaussian")
      ->check(CLI::IsMember({"uniform", "gaussian"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  sc.sigma_given = sub_sc->count("--sigma") > 0;
  sc.m_psi_given = sub_sc->count("--m-psi") > 0;
  sc.sigma_f_given = sub_sc->count("--sigma-f") > 0;
  sc.K_given = sub_sc->count("--K") > 0;
  tb.sigma_given = sub_tb->count("--sigma") > 0;
  vf.kappa_given = sub_vf->count("--kappa") > 0;
  vf.delta_given = sub_vf->count("--delta") > 0;
  ia.h1_given = sub_ia->count("--h1") > 0;

  try {
    if (sub_sc->parsed()) return run_constants_scalar(sc);
    if (sub_mf->parsed()) return run_constants_manifold(mf);
    if (sub_tb->parsed()) return run_table(tb);
    if (sub_vf->parsed()) return run_verify(vf);
    if (sub_mw->parsed()) return run_measure_w(mw);
    if (sub_ia->parsed()) return run_ia_sim(ia);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 64;
}
