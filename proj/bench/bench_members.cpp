// Micro-benchmarks: ensemble training throughput with and without the
// OpenMP member loop, and the two change-detector variants. Informational
// only; nothing here asserts.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "that/adwin.hpp"
#include "that/ozabag.hpp"
#include "that/pmu_gen.hpp"
#include "that/rng.hpp"

using namespace that;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double train_ms_per_instance(const std::vector<Instance>& data, int k, bool parallel) {
  OzaBagConfig config;
  config.ensemble_size = k;
  config.seed = 1;
  config.parallel = parallel;
  config.tree.delta = 0.2;
  OzaBagEnsemble bag(pmu_schema(), config);
  const auto start = std::chrono::steady_clock::now();
  for (const Instance& inst : data) bag.train(inst);
  return seconds_since(start) * 1000.0 / static_cast<double>(data.size());
}

// Bernoulli stream that flips between two rates every 2000 values, keeping
// detector windows short enough for the exact variant to stay affordable.
template <typename Detector>
double adds_per_second(Detector& detector, std::uint64_t n) {
  Rng rng(99);
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < n; ++i) {
    const double p = (i / 2000) % 2 == 0 ? 0.2 : 0.8;
    detector.add(rng.bernoulli(p) ? 1.0 : 0.0);
  }
  return static_cast<double>(n) / seconds_since(start);
}

}  // namespace

int main() {
  SignatureSpec spec = signature_table()[0];
  const VectorStream stream = generate_signature(spec, DriftSpec{}, 7);
  const std::vector<Instance>& data = stream.instances();

  std::printf("ensemble training over %zu instances\n", data.size());
  std::printf("%4s %14s %14s %8s\n", "k", "serial ms/inst", "openmp ms/inst", "speedup");
  for (int k : {5, 10, 20}) {
    const double serial = train_ms_per_instance(data, k, false);
    const double parallel = train_ms_per_instance(data, k, true);
    std::printf("%4d %14.4f %14.4f %7.2fx\n", k, serial, parallel, serial / parallel);
  }

  std::printf("\nchange detector throughput (flipping stream)\n");
  AdwinNaive naive(0.002);
  const double naive_rate = adds_per_second(naive, 50000);
  AdwinBucketed bucketed(0.002, 5);
  const double bucketed_rate = adds_per_second(bucketed, 1000000);
  std::printf("%-22s %12.0f adds/s (n=5e4)\n", "exact window", naive_rate);
  std::printf("%-22s %12.0f adds/s (n=1e6)\n", "bucketed histogram", bucketed_rate);
  std::printf("%-22s %12.1fx\n", "ratio", bucketed_rate / naive_rate);
  return 0;
}
