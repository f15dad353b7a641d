#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "dioph/errors.hpp"

// Integer-message transmission over the noiseless/noisy scalar channels that
// motivate the badly-approximable constants: the two-user multiple-access
// channel and the two-user X-channel, each with the precoding that inverts
// the channel gains and collapses interference onto shared lattice points.

namespace dioph {

enum class Precoding { none, aligned };
enum class NoiseKind { uniform, gaussian };

struct MacChannel {
  double h1 = 1.0 / 3.0;
  double h2 = 2.0 / 3.0;  // h1 + h2 = 1 within 1e-12, both positive
};
void validate(const MacChannel& ch);

struct XChannel {
  double h11 = 1.0, h12 = 1.0, h21 = 1.0, h22 = 1.0;  // all positive
};
void validate(const XChannel& ch);

using ChannelInstance = std::variant<MacChannel, XChannel>;

struct OutcomeSet {
  std::vector<double> values;  // ascending
  std::vector<std::pair<int, int>> labels;  // (u, v) producing values[i]
  double min_separation = 0.0;
  double tolerance = 0.0;  // min_separation / 2: decoding radius
};

// noiseless received value for messages u, v in {0,1}
double mac_received(const MacChannel& ch, int u, int v, Precoding pre);

// the four noiseless outcomes; unprecoded with h1 == h2 cannot separate the
// two cross messages and throws DegenerateChannelError
OutcomeSet mac_outcomes(const MacChannel& ch, Precoding pre);

// index of the outcome nearest to y; exact ties resolve to the smaller value
std::size_t decode_nearest(const std::vector<double>& outcomes, double y);

struct MacDecode {
  int u = 0, v = 0;
  std::size_t index = 0;
};
MacDecode mac_decode(const OutcomeSet& outcomes, double y);

struct XReceived {
  double y1 = 0.0, y2 = 0.0;
};
// aligned precoding sends x1 = h22 u1 + h12 v1, x2 = h21 u2 + h11 v2, which
// collapses receiver 1 onto h11h22 u1 + h21h12 u2 + h11h12 (v1 + v2) and
// symmetrically for receiver 2
XReceived xchannel_received(const XChannel& ch, int u1, int v1, int u2, int v2,
                            Precoding pre);

// per-receiver outcome lattice: value = A u_1 + B u_2 + C w with w = v1 + v2
// in {0,1,2} (receiver 1), and the mirror image for receiver 2
struct XOutcomeTable {
  std::vector<double> values;                 // enumeration order
  std::vector<std::array<int, 3>> labels;     // (own1, own2, w)
  double min_separation = 0.0;                // over distinct values
  double tolerance = 0.0;
};
XOutcomeTable x_receiver_table(const XChannel& ch, int receiver, Precoding pre);

struct XDecode {
  int own1 = 0, own2 = 0;
};
// nearest lattice value; ties toward the smaller value, then enumeration order
XDecode x_decode(const XOutcomeTable& table, double y);

struct SweepConfig {
  std::vector<double> levels;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  NoiseKind noise = NoiseKind::uniform;  // uniform on [-level, level], or
                                         // gaussian with sd = level
};

struct SweepRow {
  double level = 0.0;
  std::uint64_t trials = 0, successes = 0;
  double rate = 0.0;
};

// success = every receiver recovers its own message pair from y + z;
// deterministic per (seed, level index, trial index)
std::vector<SweepRow> run_noise_sweep(const ChannelInstance& ch, Precoding pre,
                                      const SweepConfig& cfg);

}  // namespace dioph
