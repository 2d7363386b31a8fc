#pragma once

#include <cstdint>
#include <deque>
#include <variant>
#include <vector>

namespace that {

/// Cut threshold for comparing two sub-window means: with m the harmonic mean
/// of the sub-window lengths and delta' = delta / (n0 + n1),
///   epsilon = sqrt( (1 / (2m)) * ln(4 / delta') ).
double adwin_epsilon(std::uint64_t n0, std::uint64_t n1, double delta);

/// Intermediate quantities of one cut evaluation, exposed for tests.
struct CutInspection {
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
  double mean0 = 0;
  double mean1 = 0;
  double m = 0;            // harmonic mean term 1/(1/n0 + 1/n1)
  double delta_prime = 0;  // delta / (n0 + n1)
  double epsilon = 0;
  bool violates = false;   // |mean0 - mean1| >= epsilon
};

CutInspection inspect_cut(std::uint64_t n0, double mean0, std::uint64_t n1, double mean1,
                          double delta);

struct AdwinResult {
  bool change = false;       // at least one element was dropped by this add
  std::uint64_t dropped = 0; // elements removed from the tail
};

/// Reference implementation keeping every element; checks every split point.
/// O(n) per add, used as the exact oracle in tests.
class AdwinNaive {
 public:
  explicit AdwinNaive(double delta);

  AdwinResult add(double x);  // x must lie in [0, 1]
  double estimate() const { return n_ == 0 ? 0.0 : sum_ / static_cast<double>(n_); }
  std::uint64_t width() const { return n_; }
  double delta() const { return delta_; }

 private:
  double delta_;
  std::deque<double> window_;  // front = oldest
  double sum_ = 0;
  std::uint64_t n_ = 0;
};

/// Production variant over an exponential histogram: buckets store
/// (count, sum, sum of squares) with counts that are powers of two and at
/// most `max_buckets` buckets per size class. Sub-window sums at bucket
/// boundaries are exact, so cut decisions match the naive variant up to
/// bucket granularity.
class AdwinBucketed {
 public:
  explicit AdwinBucketed(double delta, int max_buckets = 5);

  AdwinResult add(double x);  // x must lie in [0, 1]
  double estimate() const { return total_n_ == 0 ? 0.0 : total_sum_ / static_cast<double>(total_n_); }
  std::uint64_t width() const { return total_n_; }
  double delta() const { return delta_; }

  std::uint64_t bucket_count() const;
  std::uint64_t largest_bucket() const;  // element count of the biggest held bucket
  std::vector<std::uint64_t> row_sizes() const;

 private:
  struct Bucket {
    double sum = 0;
    double sumsq = 0;
  };

  void compress();
  bool drop_oldest();               // returns false when nothing to drop
  bool scan_once(std::uint64_t* dropped);

  double delta_;
  std::uint64_t max_buckets_;
  // rows_[r] holds buckets of 2^r elements; front = newest, back = oldest.
  std::vector<std::deque<Bucket>> rows_;
  std::uint64_t total_n_ = 0;
  double total_sum_ = 0;
  double total_sumsq_ = 0;
};

/// Value-semantic monitor used inside tree nodes; picks one of the variants.
class Adwin {
 public:
  Adwin() : impl_(AdwinBucketed(0.002)) {}

  static Adwin bucketed(double delta, int max_buckets = 5) { return Adwin(AdwinBucketed(delta, max_buckets)); }
  static Adwin naive(double delta) { return Adwin(AdwinNaive(delta)); }

  AdwinResult add(double x) {
    return std::visit([&](auto& a) { return a.add(x); }, impl_);
  }
  double estimate() const {
    return std::visit([](const auto& a) { return a.estimate(); }, impl_);
  }
  std::uint64_t width() const {
    return std::visit([](const auto& a) { return a.width(); }, impl_);
  }

 private:
  template <typename T>
  explicit Adwin(T impl) : impl_(std::move(impl)) {}

  std::variant<AdwinBucketed, AdwinNaive> impl_;
};

}  // namespace that
