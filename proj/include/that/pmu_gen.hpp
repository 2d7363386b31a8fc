#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "that/schema.hpp"
#include "that/stream.hpp"

namespace that {

/// One synchrophasor oscillation signature: an oscillation-frequency band and
/// the event-duration threshold separating oscillation events from normal ones.
struct SignatureSpec {
  double freq_low = 0;
  double freq_high = 0;
  double duration_threshold = 0;  // seconds
  std::string cause;
  std::size_t n_per_class = 2000;
};

/// The four built-in signatures, index 0 = signature 1.
const std::vector<SignatureSpec>& signature_table();

constexpr int kLabelOscillation = 0;
constexpr int kLabelNormal = 1;

/// Attributes f_osc, duration, v_mag, i_mag, phase_angle (all numeric);
/// labels {oscillation, normal}.
Schema pmu_schema();

/// Table lookup rule: duration above the threshold means oscillation, at or
/// below it normal. Throws when osc_freq lies outside the signature's band.
int label_event(double osc_freq, double duration, const SignatureSpec& spec);

/// Gradual concept changes: at each position the duration threshold ramps
/// between its base value and base * (1 + threshold_shift), alternating
/// direction (in, out, in, ...).
struct DriftSpec {
  std::vector<std::uint64_t> positions{1000, 2000};
  double width = 300;            // instances over which a ramp mixes
  double threshold_shift = 0.25;  // in [0, 0.75); successive drifts alternate sign
};

/// Probability that one ramp centered at `position` has switched by instance
/// t (1-based): a sigmoid of slope 4/width, clipped to exactly 0 at or before
/// position - width and exactly 1 at or after position + width.
double ramp_mix(std::uint64_t t, std::uint64_t position, double width);

/// Duration-threshold factor once `crossings` ramps have switched: 1 before
/// any drift, then alternating 1 + shift, 1 - shift, ... so every drift event
/// moves the concept instead of undoing the previous one.
double threshold_multiplier(std::uint64_t crossings, double shift);

/// Balanced labeled stream of 2 * n_per_class instances. Classes arrive in
/// paired runs of sixteen per class with burst order randomized, keeping any
/// 500-instance window near 50/50 while overall counts stay exact.
/// Deterministic in the seed.
VectorStream generate_signature(const SignatureSpec& spec, const DriftSpec& drift,
                                std::uint64_t seed);

struct BalanceReport {
  std::vector<std::uint64_t> class_totals;
  std::size_t window = 0;
  double min_window_positive_share = 0;  // share of label 0 over sliding windows
  double max_window_positive_share = 0;
  bool has_windows = false;              // false when the stream is shorter than one window
};

BalanceReport class_balance(const std::vector<Instance>& instances, std::size_t window = 500);

/// key=value sidecar describing a generated file; contains no timestamps so
/// byte-identical reruns stay byte-identical.
void write_signature_meta(std::ostream& out, const SignatureSpec& spec, const DriftSpec& drift,
                          std::uint64_t seed, std::size_t rows);

}  // namespace that
