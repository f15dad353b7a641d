#include "dioph/json_io.hpp"

#include <cmath>
#include <iterator>
#include <map>
#include <memory>

namespace dioph {

using nlohmann::json;

namespace {

json double_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

json to_json(const LogReal& v) {
  json j;
  if (v.is_zero()) {
    j["log10"] = nullptr;
    j["value"] = 0.0;
    return j;
  }
  j["log10"] = v.sign() > 0 ? v.log10_abs() : -v.log10_abs();
  j["value"] = double_or_null(v.linear_or_nan());
  return j;
}

json to_json(const ApproxFunction& psi) {
  json j;
  switch (psi.variant()) {
    case PsiVariant::log_square_decay:
      j["variant"] = "log-square-decay";
      break;
    case PsiVariant::uniform_cutoff:
      j["variant"] = "uniform-cutoff";
      j["Q"] = psi.cutoff_Q();
      break;
    case PsiVariant::power_decay:
      j["variant"] = "power-decay";
      j["c"] = psi.power_c();
      j["s"] = psi.power_s();
      break;
    case PsiVariant::tabulated:
      j["variant"] = "tabulated";
      j["values"] = psi.table();
      j["tail_bound"] = psi.table_tail_bound();
      break;
  }
  return j;
}

ApproxFunction approx_function_from_json(const json& j) {
  const std::string v = j.at("variant").get<std::string>();
  if (v == "log-square-decay") return ApproxFunction::log_square_decay();
  if (v == "uniform-cutoff") return ApproxFunction::uniform_cutoff(j.at("Q").get<std::int64_t>());
  if (v == "power-decay")
    return ApproxFunction::power_decay(j.at("c").get<double>(), j.at("s").get<double>());
  if (v == "tabulated")
    return ApproxFunction::tabulated(j.at("values").get<std::vector<double>>(),
                                     j.value("tail_bound", 0.0));
  throw std::invalid_argument("unknown psi variant: " + v);
}

json to_json(const DensityModel& d) {
  json j;
  switch (d.kind) {
    case DensityKind::standard_gaussian:
      j["kind"] = "standard-gaussian";
      break;
    case DensityKind::uniform_cube:
      j["kind"] = "uniform-cube";
      j["side"] = d.side;
      break;
    case DensityKind::bounded_density:
      j["kind"] = "bounded-density";
      j["K"] = d.sup_density;
      if (!d.coverage_rows.empty()) {
        json rows = json::array();
        for (const auto& [t, mass] : d.coverage_rows) rows.push_back({t, mass});
        j["coverage"] = rows;
      }
      break;
  }
  return j;
}

DensityModel density_model_from_json(const json& j) {
  const std::string k = j.at("kind").get<std::string>();
  if (k == "standard-gaussian") return DensityModel::standard_gaussian();
  if (k == "uniform-cube") return DensityModel::uniform_cube(j.at("side").get<double>());
  if (k == "bounded-density") {
    std::function<double(std::int64_t)> cov;
    std::vector<std::pair<std::int64_t, double>> rows;
    if (j.contains("coverage")) {
      // rows [T, mass]; queries walk the largest tabulated T <= query
      auto table = std::make_shared<std::map<std::int64_t, double>>();
      for (const auto& row : j.at("coverage"))
        (*table)[row.at(0).get<std::int64_t>()] = row.at(1).get<double>();
      cov = [table](std::int64_t T) {
        auto it = table->upper_bound(T);
        if (it == table->begin()) return 0.0;
        return std::prev(it)->second;
      };
      rows.assign(table->begin(), table->end());
    }
    DensityModel d = DensityModel::bounded(j.at("K").get<double>(), std::move(cov));
    d.coverage_rows = std::move(rows);
    return d;
  }
  throw std::invalid_argument("unknown density kind: " + k);
}

json to_json(const ApproxSummary& s) {
  return json{{"sigma_one_sided", s.sigma_one_sided},
              {"sigma_one_sided_tail", s.sigma_one_sided_tail},
              {"sigma_symmetric", s.sigma_symmetric},
              {"sigma_symmetric_tail", s.sigma_symmetric_tail},
              {"c_psi", s.c_psi},
              {"c_psi_certified", s.c_psi_certified},
              {"m_psi", s.m_psi},
              {"globally_monotone", s.globally_monotone}};
}

namespace {

const char* formula_name(KappaFormula f) {
  switch (f) {
    case KappaFormula::theorem_density:
      return "density";
    case KappaFormula::corollary_cube:
      return "cube-truncation";
    case KappaFormula::gaussian_scalar:
      return "gaussian-scalar";
  }
  return "";
}

}  // namespace

json to_json(const KappaReport& r) {
  json j{{"kappa", r.kappa},
         {"delta", r.delta},
         {"formula", formula_name(r.formula)},
         {"branch", r.branch == KappaBranch::sup_bound ? "sup-bound" : "measure-bound"},
         {"branch_sup", r.branch_sup},
         {"branch_measure", r.branch_measure},
         {"m", r.m},
         {"n", r.n},
         {"sigma_psi", r.sigma_psi},
         {"m_psi", r.m_psi},
         {"even_psi", r.even_psi}};
  j["p"] = std::isinf(r.p) ? json("inf") : json(r.p);
  if (r.N_or_T >= 0) j["T"] = r.N_or_T;
  if (r.sigma_f > 0.0) j["sigma_f"] = r.sigma_f;
  if (r.K > 0.0) j["K"] = r.K;
  return j;
}

json to_json(const GaussianScalarReport& r) {
  return json{{"delta", r.delta},         {"sigma", r.sigma},
              {"N", r.N},                 {"N_literal", r.N_literal},
              {"z_threshold", r.z_threshold}, {"kappa", r.kappa}};
}

json to_json(const ConstantsLedger& led) {
  json j;
  j["inputs"] = {{"d", led.params.d},     {"n", led.params.n},
                 {"l", led.params.l},     {"s0", led.params.s0},
                 {"M", led.params.M},     {"L_star", led.params.L_star},
                 {"delta", led.delta},    {"sigma_psi", led.sigma_psi},
                 {"c_psi", led.c_psi},    {"r_auto", led.r_auto}};
  j["r"] = to_json(led.r);
  j["r_max"] = to_json(led.r_max);
  j["r_arm_sigma"] = to_json(led.r_arm_sigma);
  j["r_arm_eta"] = to_json(led.r_arm_eta);
  j["v_d"] = to_json(led.v_d);
  j["n_d"] = to_json(led.n_d);
  j["k_d"] = to_json(led.k_d);
  j["sigma_ld"] = to_json(led.sigma);
  j["eta"] = to_json(led.eta);
  j["tau"] = to_json(led.tau);
  j["rho1"] = to_json(led.rho1);
  j["rho2"] = to_json(led.rho2);
  j["rho"] = to_json(led.rho);
  j["c1_star"] = to_json(led.c1_star);
  j["c_dl"] = to_json(led.c_dl);
  j["c"] = to_json(led.c_big);
  j["alpha"] = {{"num", led.alpha_num}, {"den", led.alpha_den}};
  j["L"] = to_json(led.l_bound);
  j["E"] = to_json(led.e_big);
  j["k0"] = to_json(led.k0);
  j["s_n"] = led.s_n;
  j["s_n_tail"] = led.s_n_tail;
  j["branch_sup"] = to_json(led.branch_sup);
  j["branch_measure"] = to_json(led.branch_measure);
  j["branch_series"] = to_json(led.branch_series);
  j["kappa"] = to_json(led.kappa);
  const char* names[] = {"sup-bound", "measure-bound", "series-bound"};
  j["active_branch"] = names[led.active_branch];
  return j;
}

namespace {

const char* density_kind_name(DensityKind k) {
  switch (k) {
    case DensityKind::standard_gaussian:
      return "standard-gaussian";
    case DensityKind::uniform_cube:
      return "uniform-cube";
    case DensityKind::bounded_density:
      return "bounded-density";
  }
  return "";
}

DensityKind density_kind_from_name(const std::string& s) {
  if (s == "standard-gaussian") return DensityKind::standard_gaussian;
  if (s == "uniform-cube") return DensityKind::uniform_cube;
  if (s == "bounded-density") return DensityKind::bounded_density;
  throw std::invalid_argument("unknown density kind: " + s);
}

}  // namespace

// threads is an execution hint, not part of the experiment: the echo omits
// it so reports stay byte-identical across worker counts
json to_json(const TrialConfig& cfg) {
  return json{{"m", cfg.m},
              {"n", cfg.n},
              {"psi", to_json(cfg.psi)},
              {"kappa", cfg.kappa},
              {"trials", cfg.trials},
              {"seed", cfg.seed},
              {"cutoff", cfg.cutoff},
              {"dist", density_kind_name(cfg.dist)},
              {"side", cfg.side}};
}

TrialConfig trial_config_from_json(const json& j) {
  TrialConfig cfg;
  cfg.m = j.at("m").get<int>();
  cfg.n = j.at("n").get<int>();
  cfg.psi = approx_function_from_json(j.at("psi"));
  cfg.kappa = j.at("kappa").get<double>();
  cfg.trials = j.at("trials").get<std::uint64_t>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.cutoff = j.value("cutoff", std::int64_t(0));
  cfg.dist = density_kind_from_name(j.value("dist", std::string("standard-gaussian")));
  cfg.side = j.value("side", 1.0);
  cfg.threads = j.value("threads", 0);
  return cfg;
}

json to_json(const TrialReport& rep) {
  json viols = json::array();
  for (const auto& [trial, witness] : rep.sample_violations)
    viols.push_back({{"trial", trial}, {"a", witness}});
  return json{{"config", to_json(rep.config)},
              {"trials", rep.trials},
              {"members", rep.members},
              {"estimate", rep.estimate},
              {"ci_lo", rep.ci.lo},
              {"ci_hi", rep.ci.hi},
              {"exhaustive", rep.exhaustive},
              {"cutoff", rep.cutoff},
              {"sample_violations", viols}};
}

json to_json(const WMeasureReport& rep) {
  return json{{"a", rep.a},
              {"epsilon", rep.epsilon},
              {"m", rep.m},
              {"samples", rep.samples},
              {"hits", rep.hits},
              {"seed", rep.seed},
              {"empirical", rep.empirical},
              {"exact", rep.exact},
              {"ci_lo", rep.ci.lo},
              {"ci_hi", rep.ci.hi}};
}

json to_json(const OutcomeSet& o) {
  json labels = json::array();
  for (const auto& [u, v] : o.labels) labels.push_back({u, v});
  return json{{"values", o.values},
              {"labels", labels},
              {"min_separation", o.min_separation},
              {"tolerance", o.tolerance}};
}

json to_json(const ChannelInstance& ch) {
  if (const MacChannel* mac = std::get_if<MacChannel>(&ch))
    return json{{"type", "mac"}, {"h1", mac->h1}, {"h2", mac->h2}};
  const XChannel& x = std::get<XChannel>(ch);
  return json{{"type", "x"}, {"h11", x.h11}, {"h12", x.h12}, {"h21", x.h21}, {"h22", x.h22}};
}

ChannelInstance channel_from_json(const json& j) {
  const std::string t = j.at("type").get<std::string>();
  if (t == "mac") return MacChannel{j.at("h1").get<double>(), j.at("h2").get<double>()};
  if (t == "x")
    return XChannel{j.at("h11").get<double>(), j.at("h12").get<double>(),
                    j.at("h21").get<double>(), j.at("h22").get<double>()};
  throw std::invalid_argument("unknown channel type: " + t);
}

json to_json(const SweepConfig& cfg, const ChannelInstance& ch, Precoding pre) {
  return json{{"channel", to_json(ch)},
              {"precoding", pre == Precoding::aligned ? "aligned" : "none"},
              {"levels", cfg.levels},
              {"trials", cfg.trials},
              {"seed", cfg.seed},
              {"noise", cfg.noise == NoiseKind::uniform ? "uniform" : "gaussian"}};
}

SweepBundle sweep_from_json(const json& j) {
  SweepBundle b;
  b.channel = channel_from_json(j.at("channel"));
  const std::string pre = j.value("precoding", std::string("aligned"));
  if (pre != "aligned" && pre != "none")
    throw std::invalid_argument("unknown precoding: " + pre);
  b.precoding = pre == "aligned" ? Precoding::aligned : Precoding::none;
  b.config.levels = j.at("levels").get<std::vector<double>>();
  b.config.trials = j.at("trials").get<std::uint64_t>();
  b.config.seed = j.at("seed").get<std::uint64_t>();
  const std::string noise = j.value("noise", std::string("uniform"));
  if (noise != "uniform" && noise != "gaussian")
    throw std::invalid_argument("unknown noise kind: " + noise);
  b.config.noise = noise == "uniform" ? NoiseKind::uniform : NoiseKind::gaussian;
  return b;
}

json to_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const SweepRow& r : rows)
    arr.push_back({{"level", r.level},
                   {"trials", r.trials},
                   {"successes", r.successes},
                   {"rate", r.rate}});
  return arr;
}

}  // namespace dioph
