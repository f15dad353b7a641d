#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dioph/ia_channel.hpp"
#include "doctest.h"

using dioph::MacChannel;
using dioph::Precoding;
using dioph::XChannel;

namespace {

MacChannel mac(double h1) { return {h1, 1.0 - h1}; }

}  // namespace

TEST_SUITE("ia_channel") {

TEST_CASE("channel validation") {
  CHECK_NOTHROW(dioph::validate(mac(0.3)));
  CHECK_THROWS_AS(dioph::validate(MacChannel{0.3, 0.8}), std::invalid_argument);
  CHECK_THROWS_AS(dioph::validate(MacChannel{-0.2, 1.2}), std::invalid_argument);
  CHECK_NOTHROW(dioph::validate(XChannel{1.0, 2.0, 0.5, 0.7}));
  CHECK_THROWS_AS(dioph::validate(XChannel{1.0, 0.0, 0.5, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(dioph::validate(XChannel{1.0, 2.0, -0.5, 0.7}), std::invalid_argument);
}

TEST_CASE("received values with and without gain inversion") {
  const MacChannel ch = mac(0.2);
  CHECK(dioph::mac_received(ch, 0, 0, Precoding::none) == 0.0);
  CHECK(dioph::mac_received(ch, 1, 0, Precoding::none) == doctest::Approx(0.2));
  CHECK(dioph::mac_received(ch, 0, 1, Precoding::none) == doctest::Approx(0.8));
  CHECK(dioph::mac_received(ch, 1, 1, Precoding::none) == doctest::Approx(1.0));
  CHECK(dioph::mac_received(ch, 1, 0, Precoding::aligned) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(dioph::mac_received(ch, 0, 1, Precoding::aligned) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(dioph::mac_received(ch, 1, 1, Precoding::aligned) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("outcome sets of the two-user channel") {
  // gains already at the optimum: outcomes 0, 1/3, 2/3, 1 without any coding
  const auto nat = dioph::mac_outcomes(mac(1.0 / 3.0), Precoding::none);
  REQUIRE(nat.values.size() == 4);
  CHECK(nat.values[0] == 0.0);
  CHECK(nat.values[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(nat.values[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(nat.values[3] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(nat.min_separation == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(nat.tolerance == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(nat.tolerance == 0.5 * nat.min_separation);

  const auto skew = dioph::mac_outcomes(mac(0.2), Precoding::none);
  CHECK(skew.values[1] == doctest::Approx(0.2));
  CHECK(skew.values[2] == doctest::Approx(0.8));
  CHECK(skew.min_separation == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(skew.labels[1].first == 1);   // 0.2 comes from (u, v) = (1, 0)
  CHECK(skew.labels[1].second == 0);
  CHECK(skew.labels[2].first == 0);
  CHECK(skew.labels[2].second == 1);
}

TEST_CASE("gain inversion pins the outcomes regardless of the channel") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(1e-3, 1.0 - 1e-3);
  for (int i = 0; i < 1000; ++i) {
    const auto outs = dioph::mac_outcomes(mac(u(gen)), Precoding::aligned);
    CHECK(std::fabs(outs.values[0] - 0.0) <= 1e-12);
    CHECK(std::fabs(outs.values[1] - 1.0 / 3.0) <= 1e-12);
    CHECK(std::fabs(outs.values[2] - 2.0 / 3.0) <= 1e-12);
    CHECK(std::fabs(outs.values[3] - 1.0) <= 1e-12);
  }
}

TEST_CASE("equal gains are degenerate only without precoding") {
  CHECK_THROWS_AS(dioph::mac_outcomes(mac(0.5), Precoding::none),
                  dioph::DegenerateChannelError);
  CHECK_NOTHROW(dioph::mac_outcomes(mac(0.5), Precoding::aligned));
  // distinct gains keep all four outcomes apart
  const auto outs = dioph::mac_outcomes(mac(0.4), Precoding::none);
  CHECK(outs.min_separation > 0.0);
}

TEST_CASE("nearest-outcome decoding and the tie rule") {
  const std::vector<double> outs{0.0, 0.25, 1.0};
  CHECK(dioph::decode_nearest(outs, 0.25) == 1);
  CHECK(dioph::decode_nearest(outs, 0.26) == 1);
  CHECK(dioph::decode_nearest(outs, 0.97) == 2);
  CHECK(dioph::decode_nearest(outs, 0.125) == 0);   // exact midpoint: smaller wins
  CHECK(dioph::decode_nearest(outs, 0.625) == 1);
  CHECK(dioph::decode_nearest(outs, -5.0) == 0);

  const auto set = dioph::mac_outcomes(mac(1.0 / 3.0), Precoding::none);
  const auto dec = dioph::mac_decode(set, 0.3);
  CHECK(dec.u == 1);
  CHECK(dec.v == 0);
}

TEST_CASE("decoding flips exactly at the noise tolerance") {
  const auto set = dioph::mac_outcomes(mac(1.0 / 3.0), Precoding::aligned);
  const double y = set.values[1];  // interior outcome 1/3, message (1, 0)
  const double tol = set.tolerance;
  for (double sgn : {1.0, -1.0}) {
    const auto good = dioph::mac_decode(set, y + sgn * (tol - 1e-6));
    CHECK(good.index == 1);
    const auto bad = dioph::mac_decode(set, y + sgn * (tol + 1e-6));
    CHECK(bad.index != 1);
  }
}

TEST_CASE("x channel: aligned transmit collapses the interference") {
  const XChannel ch{1.1, 0.7, 1.3, 0.9};
  const auto zero = dioph::xchannel_received(ch, 0, 0, 0, 0, Precoding::aligned);
  CHECK(zero.y1 == 0.0);
  CHECK(zero.y2 == 0.0);
  const auto u1 = dioph::xchannel_received(ch, 1, 0, 0, 0, Precoding::aligned);
  CHECK(u1.y1 == doctest::Approx(ch.h11 * ch.h22).epsilon(1e-15));
  CHECK(u1.y2 == doctest::Approx(ch.h21 * ch.h22).epsilon(1e-15));
}

TEST_CASE("alignment identity over random channels") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const XChannel ch{u(gen), u(gen), u(gen), u(gen)};
    for (int msg = 0; msg < 16; ++msg) {
      const int u1 = msg & 1, v1 = (msg >> 1) & 1;
      const int u2 = (msg >> 2) & 1, v2 = (msg >> 3) & 1;
      const auto y = dioph::xchannel_received(ch, u1, v1, u2, v2, Precoding::aligned);
      // direct two-hop expansion, written independently of the library path
      const double x1 = ch.h22 * u1 + ch.h12 * v1;
      const double x2 = ch.h21 * u2 + ch.h11 * v2;
      CHECK(std::fabs(y.y1 - (ch.h11 * x1 + ch.h12 * x2)) <= 1e-12);
      CHECK(std::fabs(y.y2 - (ch.h21 * x1 + ch.h22 * x2)) <= 1e-12);
      // collapsed lattice form: own messages plus the shared v1 + v2 term
      const double aligned1 = ch.h11 * ch.h22 * u1 + ch.h21 * ch.h12 * u2 +
                              ch.h11 * ch.h12 * (v1 + v2);
      const double aligned2 = ch.h21 * ch.h12 * v1 + ch.h11 * ch.h22 * v2 +
                              ch.h21 * ch.h22 * (u1 + u2);
      CHECK(std::fabs(y.y1 - aligned1) <= 1e-12);
      CHECK(std::fabs(y.y2 - aligned2) <= 1e-12);
    }
  }
}

TEST_CASE("per-receiver outcome lattice") {
  const XChannel ch{1.1, 0.7, 1.3, 0.9};
  const auto t1 = dioph::x_receiver_table(ch, 1, Precoding::aligned);
  REQUIRE(t1.values.size() == 12);  // 2 x 2 own bits x 3 interference levels
  const double A = ch.h11 * ch.h22, B = ch.h21 * ch.h12, C = ch.h11 * ch.h12;
  for (std::size_t i = 0; i < t1.values.size(); ++i) {
    const auto& lab = t1.labels[i];
    CHECK(t1.values[i] ==
          doctest::Approx(A * lab[0] + B * lab[1] + C * lab[2]).epsilon(1e-14));
  }
  CHECK(t1.min_separation > 0.0);
  CHECK(t1.tolerance == 0.5 * t1.min_separation);

  const auto t2 = dioph::x_receiver_table(ch, 2, Precoding::aligned);
  const double A2 = ch.h21 * ch.h12, C2 = ch.h21 * ch.h22;
  CHECK(t2.values[6 + 0] == doctest::Approx(A2).epsilon(1e-14));  // (1,0,0)
  CHECK(t2.values[2] == doctest::Approx(2.0 * C2).epsilon(1e-14));  // (0,0,2)
  CHECK_THROWS_AS(dioph::x_receiver_table(ch, 3, Precoding::aligned),
                  std::invalid_argument);

  // decoding an exact lattice point returns its own-message pair
  const auto dec = dioph::x_decode(t1, A + 2.0 * C);
  CHECK(dec.own1 == 1);
  CHECK(dec.own2 == 0);
}

TEST_CASE("x decode resolves ties toward the smaller value") {
  dioph::XOutcomeTable t;
  t.values = {1.0, 0.0};          // enumeration order deliberately unsorted
  t.labels = {{1, 1, 0}, {0, 0, 0}};
  const auto dec = dioph::x_decode(t, 0.5);  // equidistant: 0.0 wins
  CHECK(dec.own1 == 0);
  CHECK(dec.own2 == 0);
}

TEST_CASE("noise sweep on the two-user channel") {
  const dioph::ChannelInstance ch = mac(1.0 / 3.0);
  dioph::SweepConfig cfg;
  cfg.levels = {0.0, 0.1, 0.25};
  cfg.trials = 10000;
  cfg.seed = 7;
  const auto rows = dioph::run_noise_sweep(ch, Precoding::none, cfg);
  REQUIRE(rows.size() == 3);
  // anything below the 1/6 tolerance decodes every time
  CHECK(rows[0].rate == 1.0);
  CHECK(rows[1].rate == 1.0);
  CHECK(rows[2].rate < 1.0);
  // level 0.25: interior outcomes survive z in (-1/6,1/6) of the +-1/4 range,
  // edge outcomes also survive outward noise; averaging gives exactly 3/4
  const double expect = 0.75;
  const double sd = std::sqrt(expect * (1.0 - expect) / double(cfg.trials));
  CHECK(std::fabs(rows[2].rate - expect) < 3.0 * sd);

  const auto again = dioph::run_noise_sweep(ch, Precoding::none, cfg);
  CHECK(again[2].successes == rows[2].successes);
  cfg.seed = 8;
  const auto other = dioph::run_noise_sweep(ch, Precoding::none, cfg);
  CHECK(other[2].successes != rows[2].successes);
}

TEST_CASE("noise sweep on the x channel") {
  const dioph::ChannelInstance ch = XChannel{1.1, 0.7, 1.3, 0.9};
  dioph::SweepConfig cfg;
  cfg.levels = {0.0, 0.02};
  cfg.trials = 2000;
  cfg.seed = 21;
  const auto rows = dioph::run_noise_sweep(ch, Precoding::aligned, cfg);
  CHECK(rows[0].rate == 1.0);
  CHECK(rows[1].rate <= 1.0);
  CHECK(rows[1].rate > 0.0);
}

TEST_CASE("gaussian noise model") {
  const dioph::ChannelInstance ch = mac(1.0 / 3.0);
  dioph::SweepConfig cfg;
  cfg.levels = {0.1};
  cfg.trials = 5000;
  cfg.seed = 11;
  cfg.noise = dioph::NoiseKind::gaussian;
  const auto rows = dioph::run_noise_sweep(ch, Precoding::none, cfg);
  // sd 0.1 leaves a visible tail beyond the 1/6 tolerance
  CHECK(rows[0].rate < 1.0);
  CHECK(rows[0].rate > 0.5);
  const auto again = dioph::run_noise_sweep(ch, Precoding::none, cfg);
  CHECK(again[0].successes == rows[0].successes);
}

TEST_CASE("sweep configuration is validated") {
  const dioph::ChannelInstance ch = mac(0.3);
  dioph::SweepConfig cfg;
  cfg.levels = {};
  CHECK_THROWS_AS(dioph::run_noise_sweep(ch, Precoding::none, cfg),
                  std::invalid_argument);
  cfg.levels = {-0.1};
  CHECK_THROWS_AS(dioph::run_noise_sweep(ch, Precoding::none, cfg),
                  std::invalid_argument);
  cfg.levels = {0.1};
  cfg.trials = 0;
  CHECK_THROWS_AS(dioph::run_noise_sweep(ch, Precoding::none, cfg),
                  std::invalid_argument);
}

}  // TEST_SUITE
