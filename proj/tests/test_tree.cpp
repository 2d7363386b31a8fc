#include "doctest.h"

#include <cstddef>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "that/hoeffding_tree.hpp"
#include "that/rng.hpp"
#include "that/schema.hpp"

using namespace that;

namespace {

Schema freq_schema() {
  return Schema({AttributeSpec::numeric("f"), AttributeSpec::numeric("noise"),
                 AttributeSpec::numeric("jitter")},
                {"below", "above"});
}

// Threshold concept: the first attribute decides the class at f = 3, the other
// two are noise. Labels flip after `flip_at` when given.
std::vector<Instance> threshold_stream(std::uint64_t seed, std::size_t n,
                                       std::size_t flip_at = static_cast<std::size_t>(-1)) {
  Rng rng(seed);
  std::vector<Instance> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = rng.uniform(0.0, 6.0);
    int label = f > 3.0 ? 1 : 0;
    if (i >= flip_at) label = 1 - label;
    out.push_back(Instance{{f, rng.normal(0.0, 1.0), rng.uniform01()}, label, 1.0});
  }
  return out;
}

double resubstitution_accuracy(const HoeffdingTree& tree, const std::vector<Instance>& data) {
  std::size_t correct = 0;
  for (const Instance& inst : data)
    if (tree.predict(inst).label == inst.label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

double parse_root_threshold(const std::string& text) {
  const std::string needle = " <= ";
  const auto at = text.find(needle);
  REQUIRE(at != std::string::npos);
  const auto end = text.find_first_of(" \n", at + needle.size());
  return std::stod(text.substr(at + needle.size(), end - at - needle.size()));
}

}  // namespace

TEST_CASE("config validation and clamping") {
  HtConfig config;
  config.delta = 0.0;
  config.adwin_delta = 5.0;
  const HtConfig c = config.clamped();
  CHECK(c.delta == doctest::Approx(1e-9));
  CHECK(c.adwin_delta == doctest::Approx(1.0 - 1e-9));

  HtConfig bad_tau;
  bad_tau.tau = 0.0;
  CHECK_THROWS_AS(bad_tau.clamped(), std::invalid_argument);
  HtConfig bad_grace;
  bad_grace.grace_period = 0.0;
  CHECK_THROWS_AS(bad_grace.clamped(), std::invalid_argument);
  HtConfig bad_depth;
  bad_depth.max_depth = -1;
  CHECK_THROWS_AS(bad_depth.clamped(), std::invalid_argument);

  CHECK_THROWS_AS(HoeffdingTree(Schema({AttributeSpec::numeric("x")}, {"only"}), HtConfig{}),
                  std::invalid_argument);
}

TEST_CASE("an untrained tree predicts the fallback class") {
  HoeffdingTree tree(freq_schema(), HtConfig{});
  const Prediction p = tree.predict(Instance{{1.0, 0.0, 0.0}, 0, 1.0});
  CHECK(p.label == 0);
  REQUIRE(p.distribution.size() == 2);
  CHECK(p.distribution[0] == doctest::Approx(1.0));
  CHECK(tree.node_count() == 1);
  CHECK(tree.weight_seen() == 0.0);
}

TEST_CASE("training input is validated") {
  HoeffdingTree tree(freq_schema(), HtConfig{});
  CHECK_THROWS_AS(tree.train(Instance{{1.0}, 0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(tree.train(Instance{{1.0, 0.0, 0.0}, 2, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(tree.predict(Instance{{1.0}, 0, 1.0}), std::invalid_argument);
}

TEST_CASE("a single-class stream never splits") {
  HoeffdingTree tree(freq_schema(), HtConfig{});
  Rng rng(3);
  for (int i = 0; i < 1000; ++i)
    tree.train(Instance{{rng.uniform(0.0, 6.0), rng.normal(0.0, 1.0), rng.uniform01()}, 1, 1.0});
  CHECK(tree.node_count() == 1);
  CHECK(tree.splits_performed() == 0);
  CHECK(tree.predict(Instance{{1.0, 0.0, 0.0}, 0, 1.0}).label == 1);
}

TEST_CASE("a clean threshold concept is found at the root") {
  const auto data = threshold_stream(11, 2000);
  HtConfig config;
  config.delta = 0.2;
  config.grace_period = 200;
  HoeffdingTree tree(freq_schema(), config);
  for (const Instance& inst : data) tree.train(inst);

  const std::string text = tree.to_text();
  CHECK(text.substr(0, 8) == "split f ");
  const double threshold = parse_root_threshold(text);
  CHECK(threshold > 2.5);
  CHECK(threshold < 3.5);
  CHECK(resubstitution_accuracy(tree, data) >= 0.95);
  CHECK(tree.attributes_in_use()[0]);
  CHECK(tree.weight_seen() == doctest::Approx(2000.0));
}

TEST_CASE("identical attributes tie toward the lower index") {
  const Schema schema({AttributeSpec::numeric("x"), AttributeSpec::numeric("y")}, {"lo", "hi"});
  HtConfig config;
  config.delta = 0.2;
  config.grace_period = 200;
  HoeffdingTree tree(schema, config);
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(0.0, 6.0);
    tree.train(Instance{{v, v}, v > 3.0 ? 1 : 0, 1.0});
  }
  REQUIRE(tree.splits_performed() >= 1);
  CHECK(tree.to_text().substr(0, 8) == "split x ");
}

TEST_CASE("split children start empty and predict their branch majority") {
  HtConfig config;
  config.delta = 0.2;
  config.grace_period = 200;
  HoeffdingTree tree(freq_schema(), config);
  const auto data = threshold_stream(17, 2000);
  std::size_t trained = 0;
  for (const Instance& inst : data) {
    tree.train(inst);
    ++trained;
    if (tree.node_count() > 1) break;
  }
  REQUIRE(tree.node_count() == 3);
  REQUIRE(trained < data.size());
  CHECK(tree.splits_performed() == 1);
  CHECK(tree.leaf_count() == 2);

  const Prediction low = tree.predict(Instance{{0.1, 0.0, 0.5}, 0, 1.0});
  const Prediction high = tree.predict(Instance{{5.9, 0.0, 0.5}, 0, 1.0});
  CHECK(low.label == 0);
  CHECK(high.label == 1);
  CHECK(low.distribution[0] == doctest::Approx(1.0));  // fallback is a point mass
  CHECK(high.distribution[1] == doctest::Approx(1.0));
}

TEST_CASE("max_depth caps growth") {
  HtConfig config;
  config.delta = 0.2;
  config.grace_period = 200;
  config.max_depth = 1;
  HoeffdingTree tree(freq_schema(), config);
  for (const Instance& inst : threshold_stream(19, 4000)) tree.train(inst);
  CHECK(tree.depth() <= 1);
  CHECK(tree.node_count() <= 3);
}

TEST_CASE("same stream, same tree") {
  HtConfig config;
  config.delta = 0.2;
  const auto data = threshold_stream(23, 1500);
  HoeffdingTree a(freq_schema(), config);
  HoeffdingTree b(freq_schema(), config);
  for (const Instance& inst : data) {
    a.train(inst);
    b.train(inst);
  }
  CHECK(a.to_text() == b.to_text());
}

TEST_CASE("doubled weights grow the same structure as doubled instances") {
  HtConfig config;
  config.delta = 0.2;
  config.drift_adaptive = false;  // monitors tick per call, not per weight
  const auto data = threshold_stream(29, 800);
  HoeffdingTree weighted(freq_schema(), config);
  HoeffdingTree repeated(freq_schema(), config);
  for (const Instance& inst : data) {
    Instance heavy = inst;
    heavy.weight = 2.0;
    weighted.train(heavy);
    repeated.train(inst);
    repeated.train(inst);
  }
  CHECK(weighted.weight_seen() == doctest::Approx(repeated.weight_seen()));
  CHECK(weighted.to_text(false) == repeated.to_text(false));
}

TEST_CASE("a flipped concept triggers monitors and the tree recovers") {
  HtConfig config;
  config.delta = 0.2;
  config.grace_period = 200;
  const auto data = threshold_stream(31, 4000, 2000);
  HoeffdingTree tree(freq_schema(), config);

  std::uint64_t cuts_at_flip = 0;
  std::uint64_t resets_at_flip = 0;
  bool reacted_within_500 = false;
  std::deque<int> window;
  double window_correct = 0;
  double final_window_acc = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (i == 2000) {
      cuts_at_flip = tree.monitor_cuts();
      resets_at_flip = tree.drift_resets();
    }
    const int hit = tree.predict(data[i]).label == data[i].label ? 1 : 0;
    window.push_back(hit);
    window_correct += hit;
    if (window.size() > 500) {
      window_correct -= window.front();
      window.pop_front();
    }
    tree.train(data[i]);
    if (i == 2499)
      reacted_within_500 =
          tree.monitor_cuts() > cuts_at_flip || tree.drift_resets() > resets_at_flip;
  }
  final_window_acc = window_correct / static_cast<double>(window.size());

  CHECK(reacted_within_500);
  CHECK(tree.drift_resets() >= 1);
  CHECK(final_window_acc >= 0.9);
}

TEST_CASE("drift adaptation can be disabled") {
  HtConfig config;
  config.delta = 0.2;
  config.drift_adaptive = false;
  HoeffdingTree tree(freq_schema(), config);
  for (const Instance& inst : threshold_stream(37, 4000, 2000)) tree.train(inst);
  CHECK(tree.monitor_cuts() == 0);
  CHECK(tree.drift_resets() == 0);
}

TEST_CASE("copies are independent") {
  HtConfig config;
  config.delta = 0.2;
  const auto data = threshold_stream(41, 2000);
  HoeffdingTree a(freq_schema(), config);
  for (std::size_t i = 0; i < 1000; ++i) a.train(data[i]);
  const std::string before = a.to_text();

  HoeffdingTree b(a);
  CHECK(b.to_text() == before);
  for (std::size_t i = 1000; i < 2000; ++i) b.train(data[i]);
  CHECK(a.to_text() == before);
  CHECK(b.weight_seen() > a.weight_seen());

  SUBCASE("assignment clones too") {
    HoeffdingTree c(freq_schema(), config);
    c = a;
    CHECK(c.to_text() == before);
    c.train(data[0]);
    CHECK(a.to_text() == before);
  }
}

TEST_CASE("grafting rewrites one leaf and nothing else") {
  const Schema schema({AttributeSpec::numeric("x")}, {"pos", "neg"});
  HoeffdingTree tree(schema, HtConfig{});
  tree.graft(Instance{{2.0}, 1, 1.0}, 0);
  CHECK(tree.to_text() ==
        "split x <= 2 adwin=0\n"
        "  leaf counts=[0,1] adwin=0\n"
        "  leaf counts=[0,0] adwin=0\n");
  CHECK(tree.predict(Instance{{1.5}, 0, 1.0}).label == 1);  // grafted side
  CHECK(tree.predict(Instance{{2.5}, 0, 1.0}).label == 0);  // displaced side fallback

  SUBCASE("graft validates its arguments") {
    CHECK_THROWS_AS(tree.graft(Instance{{1.0, 2.0}, 0, 1.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(tree.graft(Instance{{1.0}, 0, 1.0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(tree.graft(Instance{{1.0}, 7, 1.0}, 0), std::invalid_argument);
  }
}

TEST_CASE("a nominal concept splits multiway") {
  const Schema schema({AttributeSpec::nominal("color", {"r", "g", "b"})}, {"warm", "cool"});
  HtConfig config;
  config.delta = 0.2;
  config.grace_period = 200;
  HoeffdingTree tree(schema, config);
  Rng rng(43);
  for (int i = 0; i < 1500; ++i) {
    const int v = static_cast<int>(rng.next_u64() % 3);
    tree.train(Instance{{static_cast<double>(v)}, v == 0 ? 0 : 1, 1.0});
  }
  REQUIRE(tree.splits_performed() >= 1);
  CHECK(tree.to_text().substr(0, 11) == "split color");
  CHECK(tree.predict(Instance{{0.0}, 0, 1.0}).label == 0);
  CHECK(tree.predict(Instance{{1.0}, 0, 1.0}).label == 1);
  CHECK(tree.predict(Instance{{2.0}, 0, 1.0}).label == 1);
  CHECK_THROWS_AS(tree.predict(Instance{{5.0}, 0, 1.0}), std::invalid_argument);
}
