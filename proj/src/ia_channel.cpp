#include "dioph/ia_channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dioph/philox.hpp"
#include "dioph/scalar_bounds.hpp"

namespace dioph {

void validate(const MacChannel& ch) {
  if (!(ch.h1 > 0.0) || !(ch.h2 > 0.0) || !std::isfinite(ch.h1) || !std::isfinite(ch.h2))
    throw std::invalid_argument("mac channel: gains must be positive and finite");
  if (std::fabs(ch.h1 + ch.h2 - 1.0) > 1e-12)
    throw std::invalid_argument("mac channel: h1 + h2 must equal 1 within 1e-12");
}

void validate(const XChannel& ch) {
  for (double h : {ch.h11, ch.h12, ch.h21, ch.h22})
    if (!(h > 0.0) || !std::isfinite(h))
      throw std::invalid_argument("x channel: gains must be positive and finite");
}

double mac_received(const MacChannel& ch, int u, int v, Precoding pre) {
  validate(ch);
  if (pre == Precoding::none) return ch.h1 * u + ch.h2 * v;
  // gain-inverting codebooks: x1 = u/(3 h1), x2 = 2v/(3 h2); the received
  // point lands on {0, 1/3, 2/3, 1} whatever the gains are
  const double x1 = double(u) / (3.0 * ch.h1);
  const double x2 = 2.0 * double(v) / (3.0 * ch.h2);
  return ch.h1 * x1 + ch.h2 * x2;
}

OutcomeSet mac_outcomes(const MacChannel& ch, Precoding pre) {
  validate(ch);
  if (pre == Precoding::none && ch.h1 == ch.h2)
    throw DegenerateChannelError(
        "mac channel: h1 = h2 collapses the (1,0) and (0,1) outcomes; recovery "
        "needs distinct gains");
  OutcomeSet out;
  for (int u = 0; u <= 1; ++u)
    for (int v = 0; v <= 1; ++v) {
      out.values.push_back(mac_received(ch, u, v, pre));
      out.labels.emplace_back(u, v);
    }
  // sort values and labels together
  std::vector<std::size_t> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return out.values[i] < out.values[j]; });
  OutcomeSet sorted;
  for (std::size_t i : order) {
    sorted.values.push_back(out.values[i]);
    sorted.labels.push_back(out.labels[i]);
  }
  sorted.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.values.size(); ++i)
    sorted.min_separation =
        std::min(sorted.min_separation, sorted.values[i] - sorted.values[i - 1]);
  sorted.tolerance = 0.5 * sorted.min_separation;
  return sorted;
}

std::size_t decode_nearest(const std::vector<double>& outcomes, double y) {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const double d = std::fabs(y - outcomes[i]);
    if (d < best_dist) {  // ties keep the earlier (smaller) outcome
      best_dist = d;
      best = i;
    }
  }
  return best;
}

MacDecode mac_decode(const OutcomeSet& outcomes, double y) {
  MacDecode d;
  d.index = decode_nearest(outcomes.values, y);
  d.u = outcomes.labels[d.index].first;
  d.v = outcomes.labels[d.index].second;
  return d;
}

XReceived xchannel_received(const XChannel& ch, int u1, int v1, int u2, int v2,
                            Precoding pre) {
  validate(ch);
  double x1, x2;
  if (pre == Precoding::none) {
    x1 = double(u1 + v1);
    x2 = double(u2 + v2);
  } else {
    x1 = ch.h22 * u1 + ch.h12 * v1;
    x2 = ch.h21 * u2 + ch.h11 * v2;
  }
  return {ch.h11 * x1 + ch.h12 * x2, ch.h21 * x1 + ch.h22 * x2};
}

XOutcomeTable x_receiver_table(const XChannel& ch, int receiver, Precoding pre) {
  validate(ch);
  if (receiver != 1 && receiver != 2)
    throw std::invalid_argument("x channel: receiver must be 1 or 2");
  XOutcomeTable t;
  if (pre == Precoding::aligned) {
    // receiver 1 sees h11h22 u1 + h21h12 u2 + h11h12 (v1+v2); receiver 2 the
    // mirror with u and v swapped
    const double A = receiver == 1 ? ch.h11 * ch.h22 : ch.h21 * ch.h12;
    const double B = receiver == 1 ? ch.h21 * ch.h12 : ch.h11 * ch.h22;
    const double C = receiver == 1 ? ch.h11 * ch.h12 : ch.h21 * ch.h22;
    for (int m1 = 0; m1 <= 1; ++m1)
      for (int m2 = 0; m2 <= 1; ++m2)
        for (int w = 0; w <= 2; ++w) {
          t.values.push_back(A * m1 + B * m2 + C * w);
          t.labels.push_back({m1, m2, w});
        }
  } else {
    // no alignment: enumerate all 16 message tuples; the interfering pair
    // shows up as an unresolvable 4-fold ambiguity
    for (int u1 = 0; u1 <= 1; ++u1)
      for (int u2 = 0; u2 <= 1; ++u2)
        for (int v1 = 0; v1 <= 1; ++v1)
          for (int v2 = 0; v2 <= 1; ++v2) {
            const XReceived y = xchannel_received(ch, u1, v1, u2, v2, Precoding::none);
            t.values.push_back(receiver == 1 ? y.y1 : y.y2);
            t.labels.push_back(receiver == 1 ? std::array<int, 3>{u1, u2, v1 * 2 + v2}
                                             : std::array<int, 3>{v1, v2, u1 * 2 + u2});
          }
  }
  t.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.values.size(); ++i)
    for (std::size_t j = i + 1; j < t.values.size(); ++j) {
      const double gap = std::fabs(t.values[i] - t.values[j]);
      if (gap > 0.0) t.min_separation = std::min(t.min_separation, gap);
    }
  t.tolerance = 0.5 * t.min_separation;
  return t;
}

XDecode x_decode(const XOutcomeTable& table, double y) {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    const double d = std::fabs(y - table.values[i]);
    if (d < best_dist ||
        (d == best_dist && table.values[i] < table.values[best])) {
      best_dist = d;
      best = i;
    }
  }
  return {table.labels[best][0], table.labels[best][1]};
}

std::vector<SweepRow> run_noise_sweep(const ChannelInstance& ch, Precoding pre,
                                      const SweepConfig& cfg) {
  if (cfg.levels.empty()) throw std::invalid_argument("noise sweep: no levels given");
  for (double lv : cfg.levels)
    if (!(lv >= 0.0) || !std::isfinite(lv))
      throw std::invalid_argument("noise sweep: levels must be finite and >= 0");
  if (cfg.trials < 1) throw std::invalid_argument("noise sweep: need at least one trial");

  const auto draw_noise = [&](RandomStream& rs, double level) {
    if (cfg.noise == NoiseKind::uniform) return rs.next_symmetric(level);
    return normal_cdf_inv(rs.next_uniform()) * level;
  };
  constexpr std::uint64_t kLevelStride = std::uint64_t(1) << 42;

  std::vector<SweepRow> rows;
  if (const MacChannel* mac = std::get_if<MacChannel>(&ch)) {
    const OutcomeSet outs = mac_outcomes(*mac, pre);
    for (std::size_t li = 0; li < cfg.levels.size(); ++li) {
      SweepRow row{cfg.levels[li], cfg.trials, 0, 0.0};
      for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        RandomStream rs(cfg.seed, li * kLevelStride + t);
        const int u = rs.next_bit();
        const int v = rs.next_bit();
        const double y = mac_received(*mac, u, v, pre) + draw_noise(rs, row.level);
        const MacDecode dec = mac_decode(outs, y);
        if (dec.u == u && dec.v == v) ++row.successes;
      }
      row.rate = double(row.successes) / double(row.trials);
      rows.push_back(row);
    }
    return rows;
  }

  const XChannel& xch = std::get<XChannel>(ch);
  const XOutcomeTable t1 = x_receiver_table(xch, 1, pre);
  const XOutcomeTable t2 = x_receiver_table(xch, 2, pre);
  for (std::size_t li = 0; li < cfg.levels.size(); ++li) {
    SweepRow row{cfg.levels[li], cfg.trials, 0, 0.0};
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
      RandomStream rs(cfg.seed, li * kLevelStride + t);
      const int u1 = rs.next_bit(), v1 = rs.next_bit();
      const int u2 = rs.next_bit(), v2 = rs.next_bit();
      const XReceived y = xchannel_received(xch, u1, v1, u2, v2, pre);
      const double z1 = draw_noise(rs, row.level);
      const double z2 = draw_noise(rs, row.level);
      const XDecode d1 = x_decode(t1, y.y1 + z1);
      const XDecode d2 = x_decode(t2, y.y2 + z2);
      if (d1.own1 == u1 && d1.own2 == u2 && d2.own1 == v1 && d2.own2 == v2)
        ++row.successes;
    }
    row.rate = double(row.successes) / double(row.trials);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dioph
