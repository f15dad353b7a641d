#include <cmath>
#include <cstdint>
#include <vector>

#include "dioph/json_io.hpp"
#include "dioph/manifold.hpp"
#include "dioph/verifier.hpp"
#include "doctest.h"

using dioph::ApproxFunction;
using dioph::LogReal;
using nlohmann::json;

TEST_SUITE("json_io") {

TEST_CASE("logreal carries both the log and a linear mirror") {
  const json z = dioph::to_json(LogReal::zero());
  CHECK(z.at("log10").is_null());
  CHECK(z.at("value") == 0.0);

  const json small = dioph::to_json(LogReal::from_double(-2.5));
  CHECK(small.at("log10") == doctest::Approx(-std::log10(2.5)));
  CHECK(small.at("value") == doctest::Approx(-2.5));

  // outside the double-friendly window only the log survives
  const json huge = dioph::to_json(LogReal::from_log10(-5000.0));
  CHECK(huge.at("log10") == -5000.0);
  CHECK(huge.at("value").is_null());
}

TEST_CASE("approximating functions round-trip") {
  const std::vector<ApproxFunction> cases{
      ApproxFunction::log_square_decay(), ApproxFunction::uniform_cutoff(17),
      ApproxFunction::power_decay(2.5, 1.75),
      ApproxFunction::tabulated({0.5, 0.25, 0.1}, 1e-6)};
  for (const auto& psi : cases) {
    const auto back = dioph::approx_function_from_json(dioph::to_json(psi));
    CHECK(back.variant() == psi.variant());
    for (std::int64_t q = 1; q <= 20; ++q)
      CHECK(back.eval_scalar(q) == psi.eval_scalar(q));
  }
  CHECK(dioph::to_json(cases[0]).at("variant") == "log-square-decay");
  CHECK(dioph::to_json(cases[1]).at("Q") == 17);

  CHECK_THROWS(dioph::approx_function_from_json(json{{"variant", "no-such"}}));
  CHECK_THROWS(dioph::approx_function_from_json(json{{"variant", "uniform-cutoff"}}));
}

TEST_CASE("density models round-trip, coverage table included") {
  const auto g = dioph::density_model_from_json(
      dioph::to_json(dioph::DensityModel::standard_gaussian()));
  CHECK(g.kind == dioph::DensityKind::standard_gaussian);

  const auto c =
      dioph::density_model_from_json(dioph::to_json(dioph::DensityModel::uniform_cube(3.0)));
  CHECK(c.kind == dioph::DensityKind::uniform_cube);
  CHECK(c.side == 3.0);

  const json b{{"kind", "bounded-density"},
               {"K", 2.0},
               {"coverage", json::array({json::array({1, 0.5}), json::array({3, 1.0})})}};
  const auto bd = dioph::density_model_from_json(b);
  CHECK(bd.sup(1) == 2.0);
  CHECK(bd.cube_mass(1, 1) == 0.5);
  CHECK(bd.cube_mass(2, 1) == 0.5);   // step table: last threshold <= T
  CHECK(bd.cube_mass(5, 1) == 1.0);
  const json round = dioph::to_json(bd);
  CHECK(round.at("K") == 2.0);
  CHECK(dioph::density_model_from_json(round).cube_mass(3, 1) == 1.0);

  CHECK_THROWS(dioph::density_model_from_json(json{{"kind", "what"}}));
}

TEST_CASE("trial config round-trips, excluding the thread hint") {
  dioph::TrialConfig cfg;
  cfg.m = 2;
  cfg.n = 3;
  cfg.psi = ApproxFunction::uniform_cutoff(9);
  cfg.kappa = 0.03;
  cfg.trials = 5000;
  cfg.seed = 77;
  cfg.cutoff = 12;
  cfg.dist = dioph::DensityKind::uniform_cube;
  cfg.side = 2.0;
  cfg.threads = 6;

  const json j = dioph::to_json(cfg);
  CHECK_FALSE(j.contains("threads"));  // execution hint, not experiment state
  const auto back = dioph::trial_config_from_json(j);
  CHECK(back.m == 2);
  CHECK(back.n == 3);
  CHECK(back.psi.cutoff_Q() == 9);
  CHECK(back.kappa == 0.03);
  CHECK(back.trials == 5000);
  CHECK(back.seed == 77);
  CHECK(back.cutoff == 12);
  CHECK(back.dist == dioph::DensityKind::uniform_cube);
  CHECK(back.side == 2.0);
  CHECK(back.threads == 0);

  // a threads key is tolerated on input
  json j2 = j;
  j2["threads"] = 3;
  CHECK(dioph::trial_config_from_json(j2).threads == 3);
}

TEST_CASE("trial report serialization") {
  dioph::TrialConfig cfg;
  cfg.m = 1;
  cfg.n = 1;
  cfg.psi = ApproxFunction::uniform_cutoff(1);
  cfg.kappa = 0.25;
  cfg.trials = 500;
  cfg.seed = 3;
  cfg.dist = dioph::DensityKind::uniform_cube;
  const auto rep = dioph::estimate_B_measure(cfg);
  const json j = dioph::to_json(rep);
  CHECK(j.at("trials") == 500);
  CHECK(j.at("members") == rep.members);
  CHECK(j.at("estimate") == rep.estimate);
  CHECK(j.at("ci_lo") == rep.ci.lo);
  CHECK(j.at("ci_hi") == rep.ci.hi);
  CHECK(j.at("exhaustive") == true);
  CHECK(j.at("config").at("kappa") == 0.25);
  if (!rep.sample_violations.empty()) {
    CHECK(j.at("sample_violations")[0].at("trial") == rep.sample_violations[0].first);
    CHECK(j.at("sample_violations")[0].at("a").get<std::vector<std::int64_t>>() ==
          rep.sample_violations[0].second);
  }
}

TEST_CASE("channels and sweeps round-trip") {
  const dioph::ChannelInstance m = dioph::MacChannel{0.25, 0.75};
  const json jm = dioph::to_json(m);
  CHECK(jm.at("type") == "mac");
  const auto m2 = dioph::channel_from_json(jm);
  CHECK(std::get<dioph::MacChannel>(m2).h1 == 0.25);

  const dioph::ChannelInstance x = dioph::XChannel{1.0, 2.0, 3.0, 4.0};
  const auto x2 = dioph::channel_from_json(dioph::to_json(x));
  CHECK(std::get<dioph::XChannel>(x2).h21 == 3.0);

  dioph::SweepConfig sc;
  sc.levels = {0.0, 0.125};
  sc.trials = 123;
  sc.seed = 9;
  sc.noise = dioph::NoiseKind::gaussian;
  const json js = dioph::to_json(sc, m, dioph::Precoding::aligned);
  const auto bundle = dioph::sweep_from_json(js);
  CHECK(bundle.precoding == dioph::Precoding::aligned);
  CHECK(bundle.config.levels == sc.levels);
  CHECK(bundle.config.trials == 123);
  CHECK(bundle.config.noise == dioph::NoiseKind::gaussian);
  CHECK(std::get<dioph::MacChannel>(bundle.channel).h2 == 0.75);

  CHECK_THROWS(dioph::channel_from_json(json{{"type", "relay"}}));
  json bad = js;
  bad["precoding"] = "mystery";
  CHECK_THROWS(dioph::sweep_from_json(bad));
}

TEST_CASE("constants ledger serializes every stage") {
  dioph::ManifoldParams p;
  dioph::ApproxSummary s;
  s.sigma_symmetric = 1.0;
  s.c_psi = 1.0;
  s.c_psi_certified = true;
  s.m_psi = 0.5;
  s.globally_monotone = true;
  const auto led = dioph::kappa_theorem5(p, LogReal::zero(), s, 0.1);
  const json j = dioph::to_json(led);
  CHECK(j.at("inputs").at("d") == 1);
  CHECK(j.at("inputs").at("n") == 2);
  CHECK(j.at("inputs").at("delta") == 0.1);
  CHECK(j.at("alpha").at("num") == 1);
  CHECK(j.at("alpha").at("den") == 1);
  CHECK(j.at("kappa").at("log10") == doctest::Approx(led.kappa.log10_abs()));
  CHECK(j.at("active_branch") == "series-bound");
  CHECK(j.at("v_d").at("value") == doctest::Approx(2.0));
  CHECK(j.at("s_n") == doctest::Approx(led.s_n));
  // the radius landed outside the linear window, so its mirror is null
  CHECK(j.at("r").at("value").is_null() == (std::fabs(led.r.log10_abs()) >= 280.0));
}

TEST_CASE("outcome sets serialize sorted values with labels") {
  const auto outs = dioph::mac_outcomes(dioph::MacChannel{0.2, 0.8}, dioph::Precoding::none);
  const json j = dioph::to_json(outs);
  REQUIRE(j.at("values").size() == 4);
  CHECK(j.at("values")[1] == doctest::Approx(0.2));
  CHECK(j.at("labels")[1][0] == 1);  // [u, v] pairs
  CHECK(j.at("labels")[1][1] == 0);
  CHECK(j.at("min_separation") == doctest::Approx(0.2));
  CHECK(j.at("tolerance") == doctest::Approx(0.1));
}

TEST_CASE("sweep rows serialize as a flat table") {
  std::vector<dioph::SweepRow> rows{{0.1, 100, 90, 0.9}, {0.2, 100, 50, 0.5}};
  const json j = dioph::to_json(rows);
  REQUIRE(j.size() == 2);
  CHECK(j[0].at("level") == 0.1);
  CHECK(j[0].at("successes") == 90);
  CHECK(j[1].at("rate") == 0.5);
}

}  // TEST_SUITE
