#include "that/evaluation.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <deque>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace that {
namespace {

void bump(ConfusionCounts& c, int predicted, int actual, std::int64_t step) {
  const bool pred_pos = predicted == 0;
  const bool is_pos = actual == 0;
  std::uint64_t* cell = nullptr;
  if (pred_pos && is_pos) cell = &c.tp;
  else if (!pred_pos && !is_pos) cell = &c.tn;
  else if (pred_pos) cell = &c.fp;
  else cell = &c.fn;
  if (step < 0 && *cell == 0) throw std::logic_error("ConfusionCounts: remove from empty cell");
  *cell = static_cast<std::uint64_t>(static_cast<std::int64_t>(*cell) + step);
}

/// Sliding (or unbounded, window_size = 0) tally of prediction outcomes.
class WindowScore {
 public:
  explicit WindowScore(std::size_t window_size) : window_size_(window_size) {}

  void push(int predicted, int actual) {
    if (window_size_ > 0) {
      if (outcomes_.size() == window_size_) {
        const auto [old_pred, old_actual] = outcomes_.front();
        outcomes_.pop_front();
        counts_.remove(old_pred, old_actual);
        if (old_pred == old_actual) --correct_;
      }
      outcomes_.emplace_back(predicted, actual);
    }
    counts_.add(predicted, actual);
    if (predicted == actual) ++correct_;
  }

  std::uint64_t size() const { return counts_.total(); }
  double acc() const { return static_cast<double>(correct_) / static_cast<double>(size()); }
  std::optional<double> kap() const { return kappa(counts_); }

 private:
  std::size_t window_size_;
  std::deque<std::pair<int, int>> outcomes_;
  ConfusionCounts counts_;
  std::uint64_t correct_ = 0;
};

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled) {}

  template <typename Fn>
  auto time(Fn&& fn) {
    if (!enabled_) return fn();
    const auto t0 = std::chrono::steady_clock::now();
    auto result = fn();
    const auto t1 = std::chrono::steady_clock::now();
    ns_ += std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    return result;
  }

  template <typename Fn>
  void time_void(Fn&& fn) {
    if (!enabled_) {
      fn();
      return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    ns_ += std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
  }

  double ms() const { return static_cast<double>(ns_) / 1e6; }

 private:
  bool enabled_;
  std::int64_t ns_ = 0;
};

EvalSummary summarize(const std::vector<EvalRecord>& records, std::uint64_t instances,
                      std::uint64_t correct, const WindowScore& window, double total_ms) {
  EvalSummary s;
  s.instances = instances;
  s.correct = correct;
  s.overall_accuracy = instances ? static_cast<double>(correct) / static_cast<double>(instances) : 0.0;
  s.mean_window_accuracy = mean_windowed_accuracy(records);
  if (window.size() > 0) {
    s.final_window_accuracy = window.acc();
    s.final_window_kappa = window.kap();
  }
  s.total_ms = total_ms;
  return s;
}

EvalResult test_then_train(Classifier& model, StreamSource& stream, std::size_t window_size,
                           const EvalOptions& options) {
  EvalResult result;
  WindowScore window(window_size);
  Stopwatch clock(options.timing);
  std::uint64_t index = 0;
  std::uint64_t correct = 0;
  while (auto inst = stream.next()) {
    ++index;
    const Prediction pred = clock.time([&] { return model.predict(*inst); });
    clock.time_void([&] { model.train(*inst); });
    window.push(pred.label, inst->label);
    if (pred.label == inst->label) ++correct;
    EvalRecord rec;
    rec.instance = index;
    rec.predicted = pred.label;
    rec.actual = inst->label;
    rec.win_acc = window.acc();
    rec.win_kappa = window.kap();
    rec.cum_ms_per_inst = clock.ms() / static_cast<double>(index);
    result.records.push_back(rec);
  }
  result.summary = summarize(result.records, index, correct, window, clock.ms());
  return result;
}

}  // namespace

void ConfusionCounts::add(int predicted, int actual) { bump(*this, predicted, actual, 1); }
void ConfusionCounts::remove(int predicted, int actual) { bump(*this, predicted, actual, -1); }

double accuracy(const ConfusionCounts& c) {
  const std::uint64_t total = c.total();
  if (total == 0) throw std::invalid_argument("accuracy: no outcomes recorded");
  return static_cast<double>(c.tp + c.tn) / static_cast<double>(total);
}

std::optional<double> kappa(const ConfusionCounts& c) {
  const std::uint64_t total = c.total();
  if (total == 0) throw std::invalid_argument("kappa: no outcomes recorded");
  const double t = static_cast<double>(total);
  const double pred_neg = static_cast<double>(c.tn + c.fn);
  const double is_neg = static_cast<double>(c.tn + c.fp);
  const double pred_pos = static_cast<double>(c.tp + c.fp);
  const double is_pos = static_cast<double>(c.tp + c.fn);
  const double random_acc = (is_neg * pred_neg + is_pos * pred_pos) / (t * t);
  if (random_acc == 1.0) return std::nullopt;
  return (accuracy(c) - random_acc) / (1.0 - random_acc);
}

EvalResult prequential_eval(Classifier& model, StreamSource& stream, std::size_t window_size,
                            const EvalOptions& options) {
  if (window_size < 1) throw std::invalid_argument("prequential_eval: window_size must be >= 1");
  return test_then_train(model, stream, window_size, options);
}

EvalResult interleaved_eval(Classifier& model, StreamSource& stream, const EvalOptions& options) {
  return test_then_train(model, stream, 0, options);
}

EvalResult holdout_eval(Classifier& model, StreamSource& stream, std::size_t train_chunk,
                        std::size_t test_chunk, std::size_t window_size,
                        const EvalOptions& options) {
  if (train_chunk < 1 || test_chunk < 1)
    throw std::invalid_argument("holdout_eval: chunk sizes must be >= 1");
  EvalResult result;
  WindowScore window(window_size);
  Stopwatch clock(options.timing);
  std::uint64_t index = 0;
  std::uint64_t tested = 0;
  std::uint64_t correct = 0;
  bool done = false;
  while (!done) {
    for (std::size_t i = 0; i < train_chunk; ++i) {
      auto inst = stream.next();
      if (!inst) {
        done = true;
        break;
      }
      ++index;
      clock.time_void([&] { model.train(*inst); });
    }
    if (done) break;
    for (std::size_t i = 0; i < test_chunk; ++i) {
      auto inst = stream.next();
      if (!inst) {
        done = true;
        break;
      }
      ++index;
      ++tested;
      const Prediction pred = clock.time([&] { return model.predict(*inst); });
      window.push(pred.label, inst->label);
      if (pred.label == inst->label) ++correct;
      EvalRecord rec;
      rec.instance = index;
      rec.predicted = pred.label;
      rec.actual = inst->label;
      rec.win_acc = window.acc();
      rec.win_kappa = window.kap();
      rec.cum_ms_per_inst = clock.ms() / static_cast<double>(index);
      result.records.push_back(rec);
    }
  }
  result.summary = summarize(result.records, tested, correct, window, clock.ms());
  return result;
}

double mean_windowed_accuracy(std::span<const EvalRecord> records) {
  if (records.empty()) return 0.0;
  double sum = 0;
  for (const auto& r : records) sum += r.win_acc;
  return sum / static_cast<double>(records.size());
}

namespace {

constexpr char kRecordHeader[] = "instance,predicted,actual,win_acc,win_kappa,cum_ms_per_inst";

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

template <typename T>
T parse_int_field(const std::string& field, std::size_t line_no, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::runtime_error("records line " + std::to_string(line_no) + ": bad " + what + " '" +
                             field + "'");
  return value;
}

double parse_double_field(const std::string& field, std::size_t line_no, const char* what) {
  double value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::runtime_error("records line " + std::to_string(line_no) + ": bad " + what + " '" +
                             field + "'");
  return value;
}

}  // namespace

void write_eval_records(std::ostream& out, std::span<const EvalRecord> records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    out << r.instance << ',' << r.predicted << ',' << r.actual << ',' << fixed6(r.win_acc) << ',';
    if (r.win_kappa) out << fixed6(*r.win_kappa);
    out << ',' << fixed6(r.cum_ms_per_inst) << '\n';
  }
}

void write_eval_records_file(const std::string& path, std::span<const EvalRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_eval_records(out, records);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<EvalRecord> read_eval_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordHeader)
    throw std::runtime_error("records line 1: bad header");
  std::vector<EvalRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 6)
      throw std::runtime_error("records line " + std::to_string(line_no) + ": expected 6 fields, got " +
                               std::to_string(fields.size()));
    EvalRecord r;
    r.instance = parse_int_field<std::uint64_t>(fields[0], line_no, "instance");
    r.predicted = parse_int_field<int>(fields[1], line_no, "predicted");
    r.actual = parse_int_field<int>(fields[2], line_no, "actual");
    r.win_acc = parse_double_field(fields[3], line_no, "win_acc");
    if (!fields[4].empty()) r.win_kappa = parse_double_field(fields[4], line_no, "win_kappa");
    r.cum_ms_per_inst = parse_double_field(fields[5], line_no, "cum_ms_per_inst");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<EvalRecord> read_eval_records_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_eval_records(in);
}

}  // namespace that
