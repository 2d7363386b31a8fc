#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "that/csv.hpp"
#include "that/evaluation.hpp"
#include "that/hoeffding_tree.hpp"
#include "that/ozabag.hpp"
#include "that/pmu_gen.hpp"
#include "that/rng.hpp"
#include "that/transfer.hpp"

namespace {

using namespace that;

struct ModelFlags {
  std::string model = "that";
  double delta = 0.2;
  double tau = 0.05;
  int nmin = 200;
  std::string criterion = "gini";
  int k = 5;
  std::uint64_t seed = 0;
};

struct EvalFlags {
  std::string evaluator = "prequential";
  std::size_t window = 500;
  std::size_t holdout_train = 500;
  std::size_t holdout_test = 100;
  std::string timing = "wall";
};

HtConfig tree_config(const ModelFlags& m) {
  HtConfig c;
  c.delta = m.delta;
  c.tau = m.tau;
  c.grace_period = m.nmin;
  if (m.criterion == "gini") {
    c.criterion = SplitCriterion::kGini;
  } else if (m.criterion == "info_gain") {
    c.criterion = SplitCriterion::kInfoGain;
  } else {
    throw std::runtime_error("unknown criterion: " + m.criterion);
  }
  return c;
}

EvalOptions eval_options(const EvalFlags& e) {
  if (e.timing != "wall" && e.timing != "off")
    throw std::runtime_error("unknown timing mode: " + e.timing);
  return EvalOptions{e.timing == "wall"};
}

std::vector<Instance> load_file(const std::string& path) {
  auto stream = CsvStream::open(path, pmu_schema());
  return drain(*stream);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string render_records(std::span<const EvalRecord> records) {
  std::ostringstream out;
  write_eval_records(out, records);
  return out.str();
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

struct RunOutcome {
  std::vector<EvalRecord> records;
  std::uint64_t instances = 0;
  double total_ms = 0;
};

// The headline number: per-instance 0/1 correctness averaged over the whole
// run, so cold starts and dips count at face value.
double avg_accuracy(const RunOutcome& r) {
  if (r.records.empty()) return 0.0;
  std::uint64_t correct = 0;
  for (const auto& rec : r.records)
    if (rec.predicted == rec.actual) ++correct;
  return static_cast<double>(correct) / static_cast<double>(r.records.size());
}

std::optional<double> avg_kappa(const RunOutcome& r) {
  double sum = 0;
  std::uint64_t n = 0;
  for (const auto& rec : r.records) {
    if (rec.win_kappa) {
      sum += *rec.win_kappa;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

double ms_per_instance(const RunOutcome& r) {
  return r.instances ? r.total_ms / static_cast<double>(r.instances) : 0.0;
}

std::string summary_line(const std::string& model, const RunOutcome& r) {
  std::string line = "model=" + model + " instances=" + std::to_string(r.instances) +
                     " avg_acc=" + fixed6(avg_accuracy(r));
  const auto kap = avg_kappa(r);
  line += " avg_kappa=" + (kap ? fixed6(*kap) : std::string("na"));
  line += " ms_per_inst=" + fixed6(ms_per_instance(r));
  return line;
}

RunOutcome from_eval(EvalResult eval) {
  RunOutcome out;
  out.instances = static_cast<std::uint64_t>(eval.records.size());
  out.total_ms = eval.summary.total_ms;
  out.records = std::move(eval.records);
  return out;
}

/// Concatenates per-segment chain results into one record list with globally
/// continuous instance indices and a globally cumulative time column.
RunOutcome stitch_chain(const ChainResult& chain) {
  RunOutcome out;
  double ms_before = 0;
  std::uint64_t offset = 0;
  for (const auto& seg : chain.segments) {
    for (const auto& rec : seg.eval.records) {
      EvalRecord global = rec;
      global.instance = offset + rec.instance;
      const double seg_ms_so_far = rec.cum_ms_per_inst * static_cast<double>(rec.instance);
      global.cum_ms_per_inst =
          (ms_before + seg_ms_so_far) / static_cast<double>(global.instance);
      out.records.push_back(global);
    }
    offset += static_cast<std::uint64_t>(seg.eval.records.size());
    ms_before += seg.eval.summary.total_ms;
  }
  out.instances = offset;
  out.total_ms = ms_before;
  return out;
}

RunOutcome evaluate_single(Classifier& model, std::vector<Instance> instances,
                           const EvalFlags& eflags) {
  VectorStream stream(pmu_schema(), std::move(instances));
  const EvalOptions options = eval_options(eflags);
  if (eflags.evaluator == "prequential")
    return from_eval(prequential_eval(model, stream, eflags.window, options));
  if (eflags.evaluator == "interleaved") return from_eval(interleaved_eval(model, stream, options));
  if (eflags.evaluator == "holdout")
    return from_eval(holdout_eval(model, stream, eflags.holdout_train, eflags.holdout_test,
                                  eflags.window, options));
  throw std::runtime_error("unknown evaluator: " + eflags.evaluator);
}

std::vector<Instance> concat_files(const std::vector<std::string>& paths) {
  std::vector<Instance> all;
  for (const auto& path : paths) {
    auto part = load_file(path);
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

RunOutcome run_model(const ModelFlags& mflags, const EvalFlags& eflags,
                     const std::vector<std::string>& inputs) {
  if (mflags.model == "that") {
    HoeffdingTree tree(pmu_schema(), tree_config(mflags));
    return evaluate_single(tree, concat_files(inputs), eflags);
  }
  if (mflags.model == "ozabag") {
    OzaBagConfig config;
    config.ensemble_size = mflags.k;
    config.seed = mflags.seed;
    config.tree = tree_config(mflags);
    OzaBagEnsemble ensemble(pmu_schema(), config);
    return evaluate_single(ensemble, concat_files(inputs), eflags);
  }
  if (mflags.model == "that-transfer") {
    if (eflags.evaluator != "prequential")
      throw std::runtime_error("model that-transfer supports only --evaluator prequential");
    std::vector<VectorStream> segments;
    segments.reserve(inputs.size());
    for (const auto& path : inputs) segments.emplace_back(pmu_schema(), load_file(path));
    std::vector<StreamSource*> ptrs;
    for (auto& s : segments) ptrs.push_back(&s);
    const ChainResult chain =
        transfer_chain(ptrs, tree_config(mflags), eflags.window, eval_options(eflags));
    return stitch_chain(chain);
  }
  throw std::runtime_error("unknown model: " + mflags.model);
}

int cmd_generate(const std::string& out_prefix, const std::vector<int>& signatures,
                 std::size_t n_per_class, const std::vector<std::uint64_t>& drift_at,
                 double drift_width, std::uint64_t seed) {
  DriftSpec drift;
  drift.positions = drift_at;
  drift.width = drift_width;
  for (int s : signatures)
    if (s < 1 || s > static_cast<int>(signature_table().size()))
      throw std::runtime_error("signature index out of range: " + std::to_string(s));

  // Build everything first so a failure leaves no partial file behind.
  std::vector<std::pair<std::string, std::string>> files;
  for (int s : signatures) {
    SignatureSpec spec = signature_table()[static_cast<std::size_t>(s - 1)];
    spec.n_per_class = n_per_class;
    VectorStream stream =
        generate_signature(spec, drift, Rng::substream_seed(seed, static_cast<std::uint64_t>(s)));

    std::ostringstream csv;
    write_csv_stream(stream.instances(), stream.schema(), csv);
    files.emplace_back(out_prefix + "_sig" + std::to_string(s) + ".csv", csv.str());

    std::ostringstream meta;
    write_signature_meta(meta, spec, drift, seed, stream.size());
    files.emplace_back(out_prefix + "_sig" + std::to_string(s) + ".meta", meta.str());
  }
  for (const auto& [path, content] : files) write_text_file(path, content);
  for (const auto& [path, content] : files) std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_run(const ModelFlags& mflags, const EvalFlags& eflags,
            const std::vector<std::string>& inputs, const std::string& out_path) {
  const RunOutcome outcome = run_model(mflags, eflags, inputs);
  if (!out_path.empty()) write_text_file(out_path, render_records(outcome.records));
  std::cout << summary_line(mflags.model, outcome) << "\n";
  return 0;
}

int cmd_compare(const ModelFlags& mflags, const EvalFlags& eflags,
                const std::vector<std::string>& inputs, const std::string& out_path) {
  ModelFlags that_flags = mflags;
  that_flags.model = "that-transfer";
  ModelFlags bag_flags = mflags;
  bag_flags.model = "ozabag";

  const RunOutcome that_run = run_model(that_flags, eflags, inputs);
  const RunOutcome bag_run = run_model(bag_flags, eflags, inputs);

  std::ostringstream table;
  table << "model,avg_acc,avg_kappa,ms_per_inst\n";
  for (const auto& [name, run] :
       {std::pair<std::string, const RunOutcome&>{"that-transfer", that_run},
        std::pair<std::string, const RunOutcome&>{"ozabag", bag_run}}) {
    const auto kap = avg_kappa(run);
    table << name << ',' << fixed6(avg_accuracy(run)) << ',' << (kap ? fixed6(*kap) : "") << ','
          << fixed6(ms_per_instance(run)) << '\n';
  }

  if (!out_path.empty()) {
    write_text_file(out_path, table.str());
    const auto stem = out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv"
                          ? out_path.substr(0, out_path.size() - 4)
                          : out_path;
    write_text_file(stem + "_that_records.csv", render_records(that_run.records));
    write_text_file(stem + "_ozabag_records.csv", render_records(bag_run.records));
  }
  std::cout << summary_line("that-transfer", that_run) << "\n";
  std::cout << summary_line("ozabag", bag_run) << "\n";
  return 0;
}

int cmd_sweep(const ModelFlags& mflags, const EvalFlags& eflags,
              const std::vector<std::string>& inputs, const std::string& out_path, int jobs) {
  struct Cell {
    std::string model;
    double delta = 0;
    std::string criterion;
    int k = 0;
  };
  std::vector<Cell> cells;
  for (double delta : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0})
    for (const char* crit : {"gini", "info_gain"}) cells.push_back({"that", delta, crit, 0});
  for (int k : {5, 10, 15, 20}) cells.push_back({"ozabag", mflags.delta, "gini", k});

  const std::vector<Instance> base = concat_files(inputs);
  std::vector<std::string> rows(cells.size());

#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#endif
#pragma omp parallel for schedule(dynamic) if (jobs != 1)
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    ModelFlags cell_flags = mflags;
    cell_flags.model = cell.model;
    cell_flags.delta = cell.delta;
    cell_flags.criterion = cell.criterion;
    if (cell.k > 0) cell_flags.k = cell.k;

    RunOutcome outcome;
    if (cell.model == "that") {
      HoeffdingTree tree(pmu_schema(), tree_config(cell_flags));
      outcome = evaluate_single(tree, base, eflags);
    } else {
      OzaBagConfig config;
      config.ensemble_size = cell_flags.k;
      config.seed = cell_flags.seed;
      config.tree = tree_config(cell_flags);
      OzaBagEnsemble ensemble(pmu_schema(), config);
      outcome = evaluate_single(ensemble, base, eflags);
    }
    const auto kap = avg_kappa(outcome);
    std::ostringstream row;
    row << cell.model << ',' << fixed6(cell.delta) << ',' << cell.criterion << ','
        << (cell.k > 0 ? std::to_string(cell.k) : "") << ',' << fixed6(avg_accuracy(outcome))
        << ',' << (kap ? fixed6(*kap) : "") << ',' << fixed6(ms_per_instance(outcome)) << '\n';
    rows[i] = row.str();
  }

  std::string table = "model,delta,criterion,k,avg_acc,avg_kappa,ms_per_inst\n";
  for (const auto& row : rows) table += row;
  if (!out_path.empty()) write_text_file(out_path, table);
  std::cout << table;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming anomaly-detection toolkit: adaptive Hoeffding trees with "
               "attribute-grafting transfer, an online-bagging baseline, streaming "
               "evaluators, and a synthetic PMU-signature generator"};
  app.require_subcommand(1);

  ModelFlags mflags;
  EvalFlags eflags;
  std::vector<std::string> inputs;
  std::string out_path;

  // generate
  auto* gen = app.add_subcommand("generate", "Write synthetic signature CSVs plus sidecar metadata");
  std::vector<int> signatures = {1, 2, 3, 4};
  std::size_t n_per_class = 2000;
  std::vector<std::uint64_t> drift_at = {1000, 2000};
  double drift_width = 300;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--out", gen_out, "Output path prefix")->required();
  gen->add_option("--seed", gen_seed, "Master seed")->required();
  gen->add_option("--signatures", signatures, "Signature numbers (1-4)")->delimiter(',');
  gen->add_option("--n-per-class", n_per_class, "Instances per class per signature");
  gen->add_option("--drift-at", drift_at, "Drift positions")->delimiter(',');
  gen->add_option("--drift-width", drift_width, "Drift ramp width in instances");

  auto add_model_flags = [&](CLI::App* cmd, bool with_model) {
    if (with_model)
      cmd->add_option("--model", mflags.model, "that | that-transfer | ozabag")
          ->check(CLI::IsMember({"that", "that-transfer", "ozabag"}));
    cmd->add_option("--delta", mflags.delta, "Split confidence (clamped into (0, 1))");
    cmd->add_option("--tau", mflags.tau, "Tie-break threshold");
    cmd->add_option("--nmin", mflags.nmin, "Instances between split attempts at a leaf");
    cmd->add_option("--criterion", mflags.criterion, "gini | info_gain")
        ->check(CLI::IsMember({"gini", "info_gain"}));
    cmd->add_option("--k", mflags.k, "Ensemble size for ozabag");
    cmd->add_option("--seed", mflags.seed, "Master seed")->required();
    cmd->add_option("--in", inputs, "Input CSV file(s); several files form a chain")
        ->delimiter(',')
        ->required();
    cmd->add_option("--out", out_path, "Output CSV path");
    cmd->add_option("--evaluator", eflags.evaluator, "prequential | interleaved | holdout")
        ->check(CLI::IsMember({"prequential", "interleaved", "holdout"}));
    cmd->add_option("--window", eflags.window, "Sliding evaluation window");
    cmd->add_option("--holdout-train", eflags.holdout_train, "Holdout train chunk");
    cmd->add_option("--holdout-test", eflags.holdout_test, "Holdout test chunk");
    cmd->add_option("--timing", eflags.timing, "wall | off (off makes output byte-reproducible)")
        ->check(CLI::IsMember({"wall", "off"}));
  };

  auto* run = app.add_subcommand("run", "Evaluate one model over a dataset");
  add_model_flags(run, true);

  auto* compare = app.add_subcommand("compare", "Transfer chain vs online bagging on one dataset");
  add_model_flags(compare, false);

  auto* sweep = app.add_subcommand("sweep", "Grid over delta x criterion plus ensemble sizes");
  add_model_flags(sweep, false);
  int jobs = 1;
  sweep->add_option("--jobs", jobs, "Parallel sweep cells (1 = serial)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed())
      return cmd_generate(gen_out, signatures, n_per_class, drift_at, drift_width, gen_seed);
    if (run->parsed()) return cmd_run(mflags, eflags, inputs, out_path);
    if (compare->parsed()) return cmd_compare(mflags, eflags, inputs, out_path);
    if (sweep->parsed()) return cmd_sweep(mflags, eflags, inputs, out_path, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
