#include "that/pmu_gen.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "that/rng.hpp"
#include "that/text.hpp"

namespace that {

const std::vector<SignatureSpec>& signature_table() {
  static const std::vector<SignatureSpec> table = {
      {0.10, 0.15, 400.0, "Generators", 2000},
      {0.15, 1.0, 120.0, "Local plant control", 2000},
      {1.0, 5.0, 60.0, "Inter-area oscillation", 2000},
      {5.0, 14.0, 50.0, "Local plant control", 2000},
  };
  return table;
}

Schema pmu_schema() {
  return Schema({AttributeSpec::numeric("f_osc"), AttributeSpec::numeric("duration"),
                 AttributeSpec::numeric("v_mag"), AttributeSpec::numeric("i_mag"),
                 AttributeSpec::numeric("phase_angle")},
                {"oscillation", "normal"});
}

namespace {

void check_spec(const SignatureSpec& spec) {
  if (!(spec.freq_low > 0) || !(spec.freq_high > spec.freq_low))
    throw std::invalid_argument("SignatureSpec: need 0 < freq_low < freq_high");
  if (!(spec.duration_threshold > 0))
    throw std::invalid_argument("SignatureSpec: duration_threshold must be positive");
}

void check_drift(const DriftSpec& drift, std::size_t stream_length) {
  if (!(drift.width > 0)) throw std::invalid_argument("DriftSpec: width must be positive");
  if (!std::is_sorted(drift.positions.begin(), drift.positions.end()))
    throw std::invalid_argument("DriftSpec: positions must be sorted");
  for (std::uint64_t p : drift.positions)
    if (p == 0 || p > stream_length)
      throw std::invalid_argument("DriftSpec: positions must lie within the stream");
  if (!(drift.threshold_shift >= 0 && drift.threshold_shift < 0.75))
    throw std::invalid_argument(
        "DriftSpec: threshold_shift must be in [0, 0.75) so every concept's "
        "threshold stays inside the duration range");
}

}  // namespace

int label_event(double osc_freq, double duration, const SignatureSpec& spec) {
  check_spec(spec);
  if (osc_freq < spec.freq_low || osc_freq > spec.freq_high)
    throw std::invalid_argument("label_event: osc_freq outside the signature band");
  return duration > spec.duration_threshold ? kLabelOscillation : kLabelNormal;
}

double ramp_mix(std::uint64_t t, std::uint64_t position, double width) {
  const double x = (static_cast<double>(t) - static_cast<double>(position));
  if (x <= -width) return 0.0;
  if (x >= width) return 1.0;
  return 1.0 / (1.0 + std::exp(-4.0 * x / width));
}

double threshold_multiplier(std::uint64_t crossings, double shift) {
  if (crossings == 0) return 1.0;
  return crossings % 2 == 1 ? 1.0 + shift : 1.0 - shift;
}

VectorStream generate_signature(const SignatureSpec& spec, const DriftSpec& drift,
                                std::uint64_t seed) {
  check_spec(spec);
  const std::size_t total = 2 * spec.n_per_class;
  check_drift(drift, total);

  // Label order: grid events arrive in bursts, so emit runs of each class and
  // randomize only which class of a pair bursts first. Paired runs keep every
  // window near balance while overall counts stay exact.
  constexpr std::size_t kRunLength = 16;
  Rng order_rng(Rng::substream_seed(seed, 0));
  std::vector<int> labels;
  labels.reserve(total);
  std::size_t osc_left = spec.n_per_class;
  std::size_t norm_left = spec.n_per_class;
  while (osc_left + norm_left > 0) {
    const std::size_t a = std::min(kRunLength, osc_left);
    const std::size_t b = std::min(kRunLength, norm_left);
    const bool osc_first = order_rng.next_u64() % 2 == 0;
    labels.insert(labels.end(), osc_first ? a : b, osc_first ? kLabelOscillation : kLabelNormal);
    labels.insert(labels.end(), osc_first ? b : a, osc_first ? kLabelNormal : kLabelOscillation);
    osc_left -= a;
    norm_left -= b;
  }

  Rng rng(Rng::substream_seed(seed, 1));
  const double t_base = spec.duration_threshold;
  const double d_low = 0.25 * t_base;
  const double d_high = 1.75 * t_base;
  std::vector<Instance> instances;
  instances.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    const std::uint64_t t = static_cast<std::uint64_t>(i) + 1;

    std::uint64_t crossed = 0;
    for (std::uint64_t p : drift.positions)
      if (rng.uniform01() < ramp_mix(t, p, drift.width)) ++crossed;
    const double t_active = t_base * threshold_multiplier(crossed, drift.threshold_shift);

    const int label = labels[i];
    const double f = rng.uniform(spec.freq_low, spec.freq_high);
    double duration;
    if (label == kLabelOscillation) {
      duration = t_active + rng.uniform01_open_low() * (d_high - t_active);
    } else {
      duration = d_low + rng.uniform01() * (t_active - d_low);
    }
    const bool osc = label == kLabelOscillation;
    const double v = rng.normal(osc ? 1.05 : 1.0, 0.05);
    const double im = rng.normal(osc ? 0.9 : 0.8, 0.1);
    const double phi = rng.normal(0.0, 15.0);

    instances.push_back(Instance{{f, duration, v, im, phi}, label, 1.0});
  }
  return VectorStream(pmu_schema(), std::move(instances));
}

BalanceReport class_balance(const std::vector<Instance>& instances, std::size_t window) {
  if (window < 1) throw std::invalid_argument("class_balance: window must be >= 1");
  BalanceReport report;
  report.window = window;
  for (const Instance& inst : instances) {
    const auto label = static_cast<std::size_t>(inst.label);
    if (label >= report.class_totals.size()) report.class_totals.resize(label + 1, 0);
    ++report.class_totals[label];
  }
  if (instances.size() < window) return report;

  std::size_t positives = 0;
  for (std::size_t i = 0; i < window; ++i) positives += instances[i].label == 0 ? 1 : 0;
  double lo = static_cast<double>(positives) / static_cast<double>(window);
  double hi = lo;
  for (std::size_t i = window; i < instances.size(); ++i) {
    positives += instances[i].label == 0 ? 1 : 0;
    positives -= instances[i - window].label == 0 ? 1 : 0;
    const double share = static_cast<double>(positives) / static_cast<double>(window);
    lo = std::min(lo, share);
    hi = std::max(hi, share);
  }
  report.has_windows = true;
  report.min_window_positive_share = lo;
  report.max_window_positive_share = hi;
  return report;
}

void write_signature_meta(std::ostream& out, const SignatureSpec& spec, const DriftSpec& drift,
                          std::uint64_t seed, std::size_t rows) {
  out << "seed=" << seed << '\n';
  out << "rows=" << rows << '\n';
  out << "n_per_class=" << spec.n_per_class << '\n';
  out << "freq_low=" << format_double(spec.freq_low) << '\n';
  out << "freq_high=" << format_double(spec.freq_high) << '\n';
  out << "duration_threshold=" << format_double(spec.duration_threshold) << '\n';
  out << "cause=" << spec.cause << '\n';
  out << "drift_positions=";
  for (std::size_t i = 0; i < drift.positions.size(); ++i) {
    if (i) out << ',';
    out << drift.positions[i];
  }
  out << '\n';
  out << "drift_width=" << format_double(drift.width) << '\n';
  out << "threshold_shift=" << format_double(drift.threshold_shift) << '\n';
}

}  // namespace that
