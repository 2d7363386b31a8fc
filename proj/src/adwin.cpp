#include "that/adwin.hpp"

#include <cmath>
#include <stdexcept>

namespace that {
namespace {

void check_delta(double delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("adwin: delta must lie in (0, 1)");
}

void check_value(double x) {
  if (!(x >= 0.0) || !(x <= 1.0))
    throw std::invalid_argument("adwin: values must lie in [0, 1]");
}

}  // namespace

double adwin_epsilon(std::uint64_t n0, std::uint64_t n1, double delta) {
  if (n0 == 0 || n1 == 0) throw std::invalid_argument("adwin_epsilon: sub-windows must be non-empty");
  check_delta(delta);
  const double m = 1.0 / (1.0 / static_cast<double>(n0) + 1.0 / static_cast<double>(n1));
  const double delta_prime = delta / static_cast<double>(n0 + n1);
  return std::sqrt((1.0 / (2.0 * m)) * std::log(4.0 / delta_prime));
}

CutInspection inspect_cut(std::uint64_t n0, double mean0, std::uint64_t n1, double mean1,
                          double delta) {
  CutInspection c;
  c.n0 = n0;
  c.n1 = n1;
  c.mean0 = mean0;
  c.mean1 = mean1;
  c.m = 1.0 / (1.0 / static_cast<double>(n0) + 1.0 / static_cast<double>(n1));
  c.delta_prime = delta / static_cast<double>(n0 + n1);
  c.epsilon = adwin_epsilon(n0, n1, delta);
  c.violates = std::fabs(mean0 - mean1) >= c.epsilon;
  return c;
}

AdwinNaive::AdwinNaive(double delta) : delta_(delta) { check_delta(delta); }

AdwinResult AdwinNaive::add(double x) {
  check_value(x);
  window_.push_back(x);
  sum_ += x;
  ++n_;

  AdwinResult result;
  bool found = true;
  while (found && n_ >= 2) {
    found = false;
    double sum0 = 0;
    std::uint64_t n0 = 0;
    for (auto it = window_.begin(); n0 + 1 < n_; ++it) {
      sum0 += *it;
      ++n0;
      const std::uint64_t n1 = n_ - n0;
      const double mean0 = sum0 / static_cast<double>(n0);
      const double mean1 = (sum_ - sum0) / static_cast<double>(n1);
      if (std::fabs(mean0 - mean1) >= adwin_epsilon(n0, n1, delta_)) {
        sum_ -= window_.front();
        window_.pop_front();
        --n_;
        ++result.dropped;
        found = true;
        break;
      }
    }
  }
  result.change = result.dropped > 0;
  return result;
}

AdwinBucketed::AdwinBucketed(double delta, int max_buckets) : delta_(delta) {
  check_delta(delta);
  if (max_buckets < 1) throw std::invalid_argument("adwin: max_buckets must be >= 1");
  max_buckets_ = static_cast<std::uint64_t>(max_buckets);
  rows_.emplace_back();
}

std::uint64_t AdwinBucketed::bucket_count() const {
  std::uint64_t n = 0;
  for (const auto& row : rows_) n += row.size();
  return n;
}

std::uint64_t AdwinBucketed::largest_bucket() const {
  for (std::size_t r = rows_.size(); r-- > 0;)
    if (!rows_[r].empty()) return std::uint64_t{1} << r;
  return 0;
}

std::vector<std::uint64_t> AdwinBucketed::row_sizes() const {
  std::vector<std::uint64_t> sizes;
  sizes.reserve(rows_.size());
  for (const auto& row : rows_) sizes.push_back(row.size());
  return sizes;
}

void AdwinBucketed::compress() {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    while (rows_[r].size() > max_buckets_) {
      // Merge the two oldest buckets of this size class into the next one.
      Bucket oldest = rows_[r].back();
      rows_[r].pop_back();
      Bucket second = rows_[r].back();
      rows_[r].pop_back();
      if (r + 1 == rows_.size()) rows_.emplace_back();
      rows_[r + 1].push_front(Bucket{oldest.sum + second.sum, oldest.sumsq + second.sumsq});
    }
  }
}

bool AdwinBucketed::drop_oldest() {
  for (std::size_t r = rows_.size(); r-- > 0;) {
    if (rows_[r].empty()) continue;
    const Bucket b = rows_[r].back();
    rows_[r].pop_back();
    total_n_ -= std::uint64_t{1} << r;
    total_sum_ -= b.sum;
    total_sumsq_ -= b.sumsq;
    return true;
  }
  return false;
}

bool AdwinBucketed::scan_once(std::uint64_t* dropped) {
  if (total_n_ < 2) return false;
  double sum0 = 0;
  std::uint64_t n0 = 0;
  // Walk buckets oldest to newest; each boundary is an admissible cut point.
  for (std::size_t r = rows_.size(); r-- > 0;) {
    for (std::size_t i = rows_[r].size(); i-- > 0;) {
      const Bucket& b = rows_[r][i];
      const std::uint64_t count = std::uint64_t{1} << r;
      sum0 += b.sum;
      n0 += count;
      if (n0 >= total_n_) break;
      const std::uint64_t n1 = total_n_ - n0;
      const double mean0 = sum0 / static_cast<double>(n0);
      const double mean1 = (total_sum_ - sum0) / static_cast<double>(n1);
      if (std::fabs(mean0 - mean1) >= adwin_epsilon(n0, n1, delta_)) {
        const std::uint64_t before = total_n_;
        if (drop_oldest()) {
          *dropped += before - total_n_;
          return true;
        }
        return false;
      }
    }
  }
  return false;
}

AdwinResult AdwinBucketed::add(double x) {
  check_value(x);
  rows_[0].push_front(Bucket{x, x * x});
  total_n_ += 1;
  total_sum_ += x;
  total_sumsq_ += x * x;
  compress();

  AdwinResult result;
  while (scan_once(&result.dropped)) {
  }
  result.change = result.dropped > 0;
  return result;
}

}  // namespace that
