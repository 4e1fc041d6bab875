// mkn — command surface for the medical knowledge network toolkit.
//
// Subcommands: build, learn, diagnose, infer-rule, eval, synth.
// Exit codes: 0 success, 2 input error, 3 numeric divergence.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mkn/baselines.hpp"
#include "mkn/inference.hpp"
#include "mkn/io.hpp"
#include "mkn/learning.hpp"
#include "mkn/metrics.hpp"
#include "mkn/synth.hpp"

namespace {

using nlohmann::json;

struct ModelFlags {
  double sigma = 1.0;
  double distance = 1.0;
  std::string gpf_mode = "gated";
  std::string quality = "pagerank";
  std::string encoding = "improved-sigmoid";
};

struct LearnFlags {
  double rate = 0.01;
  int iters = 100;
  double init = 0.5;
  std::string weight_mode = "learned";
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_option("--sigma", flags.sigma, "Influence range of a node (> 0)")
      ->capture_default_str();
  cmd->add_option("--distance", flags.distance,
                  "Distance between adjacent nodes (>= 0)")
      ->capture_default_str();
  cmd->add_option("--gpf-mode", flags.gpf_mode,
                  "Individual-node potential mode")
      ->check(CLI::IsMember({"gated", "ungated", "off"}))
      ->capture_default_str();
  cmd->add_option("--quality", flags.quality, "Node quality measure")
      ->check(CLI::IsMember({"pagerank", "degree", "betweenness"}))
      ->capture_default_str();
  cmd->add_option("--encoding", flags.encoding, "Symptom encoding")
      ->check(CLI::IsMember({"modifier", "sigmoid", "improved-sigmoid"}))
      ->capture_default_str();
}

void add_learn_flags(CLI::App* cmd, LearnFlags& flags, bool full = true) {
  cmd->add_option("--rate", flags.rate, "Learning rate (> 0)")
      ->capture_default_str();
  cmd->add_option("--iters", flags.iters, "Gradient sweeps (>= 1)")
      ->capture_default_str();
  if (!full) return;  // eval trains LR only: zero init, no weight mode
  cmd->add_option("--init", flags.init, "Initial edge weight")
      ->capture_default_str();
  cmd->add_option("--weight-mode", flags.weight_mode, "Weight handling")
      ->check(CLI::IsMember({"learned", "constant", "nonneg"}))
      ->capture_default_str();
}

mkn::GpfMode parse_gpf(const std::string& s) {
  if (s == "gated") return mkn::GpfMode::Gated;
  if (s == "ungated") return mkn::GpfMode::Ungated;
  return mkn::GpfMode::Off;
}

mkn::QualityMeasure parse_quality(const std::string& s) {
  if (s == "pagerank") return mkn::QualityMeasure::PageRank;
  if (s == "degree") return mkn::QualityMeasure::Degree;
  return mkn::QualityMeasure::Betweenness;
}

mkn::EncodingKind parse_encoding(const std::string& s) {
  if (s == "modifier") return mkn::EncodingKind::ModifierDirect;
  if (s == "sigmoid") return mkn::EncodingKind::Sigmoid;
  return mkn::EncodingKind::ImprovedSigmoid;
}

mkn::WeightMode parse_weight_mode(const std::string& s) {
  if (s == "constant") return mkn::WeightMode::Constant;
  if (s == "nonneg") return mkn::WeightMode::LearnedNonnegative;
  return mkn::WeightMode::Learned;
}

mkn::ModelConfig to_config(const ModelFlags& flags, bool binarize = false) {
  mkn::ModelConfig config;
  config.sigma = flags.sigma;
  config.distance = flags.distance;
  config.gpf_mode = parse_gpf(flags.gpf_mode);
  config.quality_measure = parse_quality(flags.quality);
  config.encoding = parse_encoding(flags.encoding);
  config.binarize = binarize;
  config.validate();
  return config;
}

json model_flags_json(const ModelFlags& flags, bool binarize) {
  return json{{"sigma", flags.sigma},
              {"distance", flags.distance},
              {"gpf_mode", flags.gpf_mode},
              {"quality", flags.quality},
              {"encoding", flags.encoding},
              {"binarize", binarize}};
}

json learn_flags_json(const LearnFlags& flags) {
  return json{{"rate", flags.rate},
              {"iters", flags.iters},
              {"init", flags.init},
              {"weight_mode", flags.weight_mode}};
}

void write_run_config(const std::string& out_dir, const json& config) {
  mkn::atomic_write(out_dir + "/run_config.json", config.dump(2) + "\n");
}

void ensure_out_dir(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw mkn::Error(mkn::ErrorKind::IoError,
                     "cannot create output directory \"" + out_dir +
                         "\": " + ec.message());
  }
}

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

mkn::GroundNetwork network_from_rules(const std::string& rules_path,
                                      const std::optional<double>& init,
                                      const mkn::ModelConfig& config) {
  mkn::BuiltNetwork built = mkn::build_graph(mkn::parse_rules(rules_path), init);
  return mkn::GroundNetwork::build(std::move(built.graph),
                                   std::move(built.weights), config);
}

json diagnosis_json(const std::string& record_id,
                    const mkn::DiagnosisResult& result) {
  json ranked = json::array();
  for (const auto& entry : result.ranked) {
    ranked.push_back(
        {{"disease", entry.disease}, {"probability", entry.probability}});
  }
  return json{{"record_id", record_id},
              {"ranked", std::move(ranked)},
              {"skipped_symptoms", result.skipped_symptoms}};
}

mkn::RulePredicate parse_predicate(const std::string& text) {
  const std::size_t arrow = text.find("->");
  if (arrow == std::string::npos || arrow == 0 || arrow + 2 >= text.size()) {
    throw mkn::Error(mkn::ErrorKind::MalformedLine,
                     "predicate must look like symptom->disease, got \"" +
                         text + "\"");
  }
  return mkn::RulePredicate{text.substr(0, arrow), text.substr(arrow + 2)};
}

// ---------------------------------------------------------------- commands

struct SynthCmd {
  mkn::SynthSpec spec;
  int holdout = 0;
  std::string out_dir;

  void run() const {
    spec.validate();
    ensure_out_dir(out_dir);
    mkn::SynthRng rng(spec.seed);
    const std::vector<mkn::KnowledgeRule> rules =
        mkn::generate_knowledge(spec, rng);
    mkn::BuiltNetwork built = mkn::build_graph(rules);
    mkn::GroundNetwork net = mkn::GroundNetwork::build(
        std::move(built.graph), std::move(built.weights), mkn::ModelConfig{});
    const auto records =
        mkn::sample_records(net, spec, rng, spec.n_records, 0);
    mkn::atomic_write(out_dir + "/rules.tsv",
                      mkn::format_rules(net.graph(), net.weights()));
    mkn::atomic_write(out_dir + "/records.jsonl", mkn::format_records(records));
    if (holdout > 0) {
      const auto held =
          mkn::sample_records(net, spec, rng, holdout, spec.n_records);
      mkn::atomic_write(out_dir + "/holdout.jsonl", mkn::format_records(held));
    }
    write_run_config(out_dir,
                     json{{"command", "synth"},
                          {"diseases", spec.n_diseases},
                          {"symptoms", spec.n_symptoms},
                          {"density", spec.edge_density},
                          {"weight_low", spec.weight_low},
                          {"weight_high", spec.weight_high},
                          {"records", spec.n_records},
                          {"min_gold", spec.min_gold_diseases},
                          {"max_gold", spec.max_gold_diseases},
                          {"holdout", holdout},
                          {"seed", spec.seed},
                          {"out", out_dir}});
  }
};

struct BuildCmd {
  std::string rules_path;
  ModelFlags model;
  std::optional<double> init;
  std::uint64_t seed = 1;
  std::string out_dir;

  void run() const {
    to_config(model);  // flag validation only; export covers all measures
    ensure_out_dir(out_dir);
    mkn::BuiltNetwork built =
        mkn::build_graph(mkn::parse_rules(rules_path), init);
    std::map<mkn::QualityMeasure, mkn::NodeQuality> quality;
    for (auto measure :
         {mkn::QualityMeasure::PageRank, mkn::QualityMeasure::Degree,
          mkn::QualityMeasure::Betweenness}) {
      quality.emplace(measure, mkn::compute_quality(built.graph, measure));
    }
    mkn::atomic_write(out_dir + "/graph.json",
                      mkn::graph_json(built.graph, built.weights, quality));
    json config_echo = model_flags_json(model, false);
    config_echo["command"] = "build";
    config_echo["rules"] = rules_path;
    config_echo["seed"] = seed;
    config_echo["out"] = out_dir;
    if (init) config_echo["init"] = *init;
    write_run_config(out_dir, config_echo);
  }
};

struct LearnCmd {
  std::string rules_path;
  std::string records_path;
  ModelFlags model;
  LearnFlags learn;
  std::uint64_t seed = 1;
  std::string out_dir;

  void run() const {
    const mkn::ModelConfig config = to_config(model);
    mkn::LearningConfig lcfg;
    lcfg.learning_rate = learn.rate;
    lcfg.iterations = learn.iters;
    lcfg.init_weight = learn.init;
    lcfg.weight_mode = parse_weight_mode(learn.weight_mode);
    lcfg.validate();
    ensure_out_dir(out_dir);

    // Learning starts at --init, so the network is grounded there too.
    mkn::GroundNetwork net =
        network_from_rules(rules_path, learn.init, config);
    const auto records = mkn::load_records(records_path);
    const mkn::LearnResult result = mkn::learn_weights(net, records, lcfg);

    mkn::atomic_write(out_dir + "/learned.rules.tsv",
                      mkn::format_rules(net.graph(), result.weights));
    std::ostringstream loss;
    loss << "iteration,negative_pll\n";
    for (const auto& point : result.loss_trace) {
      loss << point.iteration << "," << full_precision(point.negative_pll)
           << "\n";
    }
    mkn::atomic_write(out_dir + "/loss.csv", loss.str());

    json config_echo = model_flags_json(model, false);
    config_echo.update(learn_flags_json(learn));
    config_echo["command"] = "learn";
    config_echo["rules"] = rules_path;
    config_echo["records"] = records_path;
    config_echo["seed"] = seed;
    config_echo["out"] = out_dir;
    write_run_config(out_dir, config_echo);
  }
};

struct DiagnoseCmd {
  std::string rules_path;
  std::string records_path;
  ModelFlags model;
  std::optional<double> init;
  std::uint64_t seed = 1;
  std::string out_dir;

  void run() const {
    const mkn::ModelConfig config = to_config(model);
    ensure_out_dir(out_dir);
    const mkn::GroundNetwork net =
        network_from_rules(rules_path, init, config);
    const auto records = mkn::load_records(records_path);
    std::ostringstream out;
    for (const auto& record : records) {
      out << diagnosis_json(record.id, mkn::diagnose(net, record)).dump()
          << "\n";
    }
    mkn::atomic_write(out_dir + "/diagnoses.jsonl", out.str());
    json config_echo = model_flags_json(model, false);
    config_echo["command"] = "diagnose";
    config_echo["rules"] = rules_path;
    config_echo["records"] = records_path;
    config_echo["seed"] = seed;
    config_echo["out"] = out_dir;
    if (init) config_echo["init"] = *init;
    write_run_config(out_dir, config_echo);
  }
};

struct InferRuleCmd {
  std::string rules_path;
  std::string target_text;
  std::string given_text;
  std::string records_path;
  std::string record_id;
  ModelFlags model;
  std::optional<double> init;
  std::uint64_t seed = 1;
  std::string out_dir;

  void run() const {
    const mkn::ModelConfig config = to_config(model);
    const mkn::GroundNetwork net =
        network_from_rules(rules_path, init, config);
    const mkn::RulePredicate target = parse_predicate(target_text);
    std::optional<mkn::RulePredicate> given;
    if (!given_text.empty()) given = parse_predicate(given_text);

    mkn::EvidenceRecord record;  // empty evidence unless a record is named
    if (!records_path.empty()) {
      const auto records = mkn::load_records(records_path);
      if (records.empty()) {
        throw mkn::Error(mkn::ErrorKind::EmptyCorpus,
                         "\"" + records_path + "\" holds no records");
      }
      if (record_id.empty()) {
        record = records.front();
      } else {
        auto it = std::find_if(records.begin(), records.end(),
                               [&](const mkn::EvidenceRecord& r) {
                                 return r.id == record_id;
                               });
        if (it == records.end()) {
          throw mkn::Error(mkn::ErrorKind::MalformedLine,
                           "no record with id \"" + record_id + "\"");
        }
        record = *it;
      }
    }
    const mkn::EncodedEvidence evidence = mkn::encode_evidence(net, record);
    const double p = mkn::rule_probability(net, target, given, evidence);

    json config_echo = model_flags_json(model, false);
    config_echo["command"] = "infer-rule";
    config_echo["rules"] = rules_path;
    config_echo["seed"] = seed;
    if (init) config_echo["init"] = *init;
    json result{{"target",
                 {{"symptom", target.symptom}, {"disease", target.disease}}},
                {"given", json()},
                {"probability", p},
                {"config", config_echo}};
    if (given) {
      result["given"] =
          json{{"symptom", given->symptom}, {"disease", given->disease}};
    }
    std::cout << result.dump(2) << "\n";
    if (!out_dir.empty()) {
      ensure_out_dir(out_dir);
      mkn::atomic_write(out_dir + "/infer.json", result.dump(2) + "\n");
      write_run_config(out_dir, config_echo);
    }
  }
};

struct EvalCmd {
  std::string rules_path;
  std::string records_path;
  std::string train_records_path;
  std::string system = "mkn";
  ModelFlags model;
  LearnFlags learn;
  std::optional<double> init;
  std::uint64_t seed = 1;
  std::string out_dir;

  void run() const {
    ensure_out_dir(out_dir);
    const auto records = mkn::load_records(records_path);

    json config_echo = model_flags_json(model, system == "binary-proxy");
    config_echo["command"] = "eval";
    config_echo["system"] = system;
    config_echo["rules"] = rules_path;
    config_echo["records"] = records_path;
    config_echo["seed"] = seed;
    config_echo["out"] = out_dir;
    if (init) config_echo["init"] = *init;

    std::vector<mkn::RecordScore> rows;
    rows.reserve(records.size());
    if (system == "lr") {
      const auto train = train_records_path.empty()
                             ? records
                             : mkn::load_records(train_records_path);
      if (!train_records_path.empty()) {
        config_echo["train_records"] = train_records_path;
      }
      config_echo["rate"] = learn.rate;
      config_echo["iters"] = learn.iters;
      // Vocabulary and label space come from the rule graph so every system
      // ranks the same diseases.
      mkn::BuiltNetwork built =
          mkn::build_graph(mkn::parse_rules(rules_path), init);
      std::vector<std::string> vocabulary, diseases;
      for (std::size_t i : built.graph.nodes_of_kind(mkn::NodeKind::Symptom)) {
        vocabulary.push_back(built.graph.node(i).name);
      }
      for (std::size_t i : built.graph.nodes_of_kind(mkn::NodeKind::Disease)) {
        diseases.push_back(built.graph.node(i).name);
      }
      const mkn::EncodingKind encoding = parse_encoding(model.encoding);
      const mkn::LogisticModel lr = mkn::lr_train(
          train, vocabulary, diseases, encoding, learn.rate, learn.iters);
      for (const auto& record : records) {
        rows.push_back(
            mkn::score_record(record, mkn::lr_diagnose(lr, record, encoding)));
      }
    } else if (system == "mkn" || system == "binary-proxy") {
      mkn::ModelConfig config = to_config(model, system == "binary-proxy");
      if (system == "binary-proxy") {
        config.gpf_mode = mkn::binary_proxy_config().gpf_mode;
        config_echo["gpf_mode"] = to_string(config.gpf_mode);
      }
      const mkn::GroundNetwork net =
          network_from_rules(rules_path, init, config);
      for (const auto& record : records) {
        rows.push_back(mkn::score_record(record, mkn::diagnose(net, record)));
      }
    } else {
      throw mkn::Error(mkn::ErrorKind::InvalidSpec,
                       "unknown system \"" + system + "\"");
    }

    const mkn::CorpusReport report =
        mkn::build_report(system, config_echo.dump(), std::move(rows));
    mkn::emit_report(report,
                     mkn::ReportPaths{out_dir + "/report.csv",
                                      out_dir + "/report.json",
                                      out_dir + "/dcg.svg",
                                      out_dir + "/r_at_10.svg"});
    write_run_config(out_dir, config_echo);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mkn — knowledge-graph diagnosis toolkit"};
  app.require_subcommand(1);

  SynthCmd synth;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic rule file and corpus");
  synth_cmd->add_option("--diseases", synth.spec.n_diseases)->capture_default_str();
  synth_cmd->add_option("--symptoms", synth.spec.n_symptoms)->capture_default_str();
  synth_cmd->add_option("--density", synth.spec.edge_density)->capture_default_str();
  synth_cmd->add_option("--weight-low", synth.spec.weight_low)->capture_default_str();
  synth_cmd->add_option("--weight-high", synth.spec.weight_high)->capture_default_str();
  synth_cmd->add_option("--records", synth.spec.n_records)->capture_default_str();
  synth_cmd->add_option("--min-gold", synth.spec.min_gold_diseases)->capture_default_str();
  synth_cmd->add_option("--max-gold", synth.spec.max_gold_diseases)->capture_default_str();
  synth_cmd->add_option("--holdout", synth.holdout, "Extra held-out records")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.spec.seed)->capture_default_str();
  synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();
  synth_cmd->callback([&] { synth.run(); });

  BuildCmd build;
  auto* build_cmd =
      app.add_subcommand("build", "Build the network and export graph JSON");
  build_cmd->add_option("--rules", build.rules_path, "Rule TSV file")
      ->required()
      ->check(CLI::ExistingFile);
  add_model_flags(build_cmd, build.model);
  build_cmd->add_option("--init", build.init,
                        "Force every edge weight to this value");
  build_cmd->add_option("--seed", build.seed)->capture_default_str();
  build_cmd->add_option("--out", build.out_dir, "Output directory")->required();
  build_cmd->callback([&] { build.run(); });

  LearnCmd learn;
  auto* learn_cmd =
      app.add_subcommand("learn", "Learn edge weights by gradient ascent");
  learn_cmd->add_option("--rules", learn.rules_path, "Rule TSV file")
      ->required()
      ->check(CLI::ExistingFile);
  learn_cmd->add_option("--records", learn.records_path, "Training JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  add_model_flags(learn_cmd, learn.model);
  add_learn_flags(learn_cmd, learn.learn);
  learn_cmd->add_option("--seed", learn.seed)->capture_default_str();
  learn_cmd->add_option("--out", learn.out_dir, "Output directory")->required();
  learn_cmd->callback([&] { learn.run(); });

  DiagnoseCmd diagnose;
  auto* diagnose_cmd =
      app.add_subcommand("diagnose", "Rank diseases for every record");
  diagnose_cmd->add_option("--rules", diagnose.rules_path, "Rule TSV file")
      ->required()
      ->check(CLI::ExistingFile);
  diagnose_cmd->add_option("--records", diagnose.records_path, "Records JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  add_model_flags(diagnose_cmd, diagnose.model);
  diagnose_cmd->add_option("--init", diagnose.init,
                           "Force every edge weight to this value");
  diagnose_cmd->add_option("--seed", diagnose.seed)->capture_default_str();
  diagnose_cmd->add_option("--out", diagnose.out_dir, "Output directory")
      ->required();
  diagnose_cmd->callback([&] { diagnose.run(); });

  InferRuleCmd infer;
  auto* infer_cmd = app.add_subcommand(
      "infer-rule", "Probability of one indication rule, optionally conditional");
  infer_cmd->add_option("--rules", infer.rules_path, "Rule TSV file")
      ->required()
      ->check(CLI::ExistingFile);
  infer_cmd->add_option("--target", infer.target_text, "symptom->disease")
      ->required();
  infer_cmd->add_option("--given", infer.given_text,
                        "Conditioning rule, symptom->disease");
  infer_cmd->add_option("--records", infer.records_path, "Evidence JSONL")
      ->check(CLI::ExistingFile);
  infer_cmd->add_option("--record-id", infer.record_id,
                        "Record to take evidence from (default: first)");
  add_model_flags(infer_cmd, infer.model);
  infer_cmd->add_option("--init", infer.init,
                        "Force every edge weight to this value");
  infer_cmd->add_option("--seed", infer.seed)->capture_default_str();
  infer_cmd->add_option("--out", infer.out_dir, "Optional output directory");
  infer_cmd->callback([&] { infer.run(); });

  EvalCmd eval;
  auto* eval_cmd =
      app.add_subcommand("eval", "Score a corpus and emit a report");
  eval_cmd->add_option("--rules", eval.rules_path, "Rule TSV file")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--records", eval.records_path, "Evaluation JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--train-records", eval.train_records_path,
                       "Training JSONL for systems that train (default: --records)")
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--system", eval.system, "System to score")
      ->check(CLI::IsMember({"mkn", "binary-proxy", "lr"}))
      ->capture_default_str();
  add_model_flags(eval_cmd, eval.model);
  add_learn_flags(eval_cmd, eval.learn, /*full=*/false);
  eval_cmd->add_option("--init", eval.init,
                       "Force every edge weight to this value");
  eval_cmd->add_option("--seed", eval.seed)->capture_default_str();
  eval_cmd->add_option("--out", eval.out_dir, "Output directory")->required();
  eval_cmd->callback([&] { eval.run(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const mkn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == mkn::ErrorKind::DivergenceDetected ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
