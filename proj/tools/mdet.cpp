// Command-line surface: train / predict / evaluate / gradcheck / synth.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mdet/checkpoint.hpp"
#include "mdet/corpus.hpp"
#include "mdet/gradcheck.hpp"
#include "mdet/metrics.hpp"
#include "mdet/synthetic.hpp"
#include "mdet/trainer.hpp"

namespace {

using namespace mdet;

struct ModeFlags {
  std::string mode;
  std::optional<double> lambda;
  std::optional<double> beta;
};

void add_mode_flags(CLI::App* cmd, ModeFlags& flags) {
  cmd->add_option("--mode", flags.mode, "Output mode: high-recall or high-f1");
  cmd->add_option("--lambda", flags.lambda, "Mention/token ratio for high-recall mode");
  cmd->add_option("--beta", flags.beta, "Probability threshold for high-f1 mode");
}

// --lambda selects high-recall, --beta high-f1; both together is an error
void apply_mode_flags(const ModeFlags& flags, OperatingMode& mode) {
  if (flags.lambda && flags.beta) {
    throw UsageError("--lambda and --beta are mutually exclusive");
  }
  if (!flags.mode.empty()) {
    if (flags.mode == "high-recall") {
      mode = OperatingMode::high_recall(flags.lambda.value_or(0.4));
    } else if (flags.mode == "high-f1") {
      mode = OperatingMode::high_f1(flags.beta.value_or(0.5));
    } else {
      throw UsageError("--mode must be high-recall or high-f1");
    }
  }
  if (flags.lambda) mode = OperatingMode::high_recall(*flags.lambda);
  if (flags.beta) mode = OperatingMode::high_f1(*flags.beta);
}

void print_report(const MetricsReport& report) {
  std::cout << "overall: " << report.summary() << "\n";
  for (const CategoryRow& row : report.per_category) {
    std::cout << "  " << row.label << ": gold=" << row.gold
              << " predicted=" << row.predicted << " correct=" << row.correct
              << " R=" << row.recall << " P=" << row.precision << " F1=" << row.f1
              << "\n";
  }
}

int run_train(const RunConfig& config_in) {
  RunConfig config = config_in;
  if (config.train_path.empty()) throw UsageError("train needs --train");
  if (config.out_dir.empty()) throw UsageError("train needs --out");
  config.validate();

  LoadOptions load;
  load.drop_singletons = config.drop_singletons;
  if (config.model.task == Task::ner) load.label_inventory = config.model.labels;
  auto train_docs = load_corpus(config.train_path, load);
  std::vector<Document> dev_docs;
  if (!config.dev_path.empty() && !config.no_dev) {
    dev_docs = load_corpus(config.dev_path, load);
  }

  std::filesystem::create_directories(config.out_dir);
  {
    std::ofstream cfg_out(std::filesystem::path(config.out_dir) / "config.json");
    cfg_out << run_config_to_json(config) << "\n";
  }
  std::ofstream log(std::filesystem::path(config.out_dir) / "metrics.jsonl");

  Model model(config.model, Vocabulary::build(train_docs));
  TrainResult result = train_model(config, model, train_docs, dev_docs, &log);
  std::cout << "trained " << result.steps << " steps";
  if (result.has_dev) {
    std::cout << "; best dev F1 " << result.best_dev_f1;
  }
  std::cout << "; checkpoints in " << config.out_dir << "\n";
  return 0;
}

int run_predict(const std::string& checkpoint, const std::string& input,
                const std::string& output, const OperatingMode& mode,
                const std::string& expect_head) {
  std::optional<HeadType> expected;
  if (!expect_head.empty()) expected = head_from_string(expect_head);
  Model model = load_checkpoint(checkpoint, expected);
  auto docs = load_corpus(input);
  auto predictions = predict_corpus(model, docs, mode);
  save_predictions(docs, predictions, model.config().task == Task::ner, output);
  std::size_t total = 0;
  for (const auto& p : predictions) total += p.size();
  std::cout << "wrote " << total << " predicted spans for " << docs.size()
            << " documents to " << output << "\n";
  return 0;
}

int run_evaluate(const std::string& gold_path, const std::string& pred_path,
                 const std::string& checkpoint, const OperatingMode& mode,
                 const std::string& task, double min_f1, std::size_t max_width) {
  auto gold = load_corpus(gold_path);
  MetricsReport report;
  if (!checkpoint.empty()) {
    // predict in-process at the requested operating point, then score
    Model model = load_checkpoint(checkpoint);
    report = evaluate_model(model, gold, mode);
  } else {
    if (pred_path.empty()) throw UsageError("evaluate needs --pred or --checkpoint");
    auto pred = load_corpus(pred_path);
    report = task_from_string(task) == Task::md ? score_mentions(gold, pred)
                                                : score_ner(gold, pred);
  }
  if (max_width > 0) {
    for (const Document& doc : gold) {
      for (const Span& m : doc.mentions) {
        if (m.width() > max_width) ++report.oracle_unreachable;
      }
    }
  }
  print_report(report);
  if (report.f1 < min_f1) {
    std::cerr << "F1 " << report.f1 << " is below the --min-f1 gate " << min_f1 << "\n";
    return 1;
  }
  return 0;
}

// tiny fixed-shape fragments per head; the full randomized suite lives in
// the test tree
int run_gradcheck(std::uint64_t seed) {
  // short sentences keep the summed loss small so finite-difference noise
  // stays well under the tolerance
  Document toy;
  toy.doc_key = "gradcheck-toy";
  toy.sentences = {{"the", "red", "dog"}, {"a", "cat", "ran"}};
  toy.mentions = {Span{0, 2}, Span{3, 4}};
  std::vector<Document> docs = {toy};
  Vocabulary vocab = Vocabulary::build(docs);

  bool all_pass = true;
  for (HeadType head : {HeadType::lee, HeadType::biaffine, HeadType::concat}) {
    ModelConfig cfg;
    cfg.head = head;
    cfg.word_dim = 5;
    cfg.use_char_cnn = head == HeadType::lee;
    cfg.bilstm_layers = 2;
    cfg.bilstm_size = 4;
    cfg.ffnn_size = 5;
    cfg.biaffine_dim = 4;
    cfg.max_span_width = 4;
    cfg.width_feature_dim = 3;
    cfg.seed = seed;
    Model model(cfg, vocab);
    auto report = grad_check(model.params().entries(), [&](Tape& tape) {
      Rng no_dropout(0);
      DocScores scores = model.score_document(tape, docs[0], false, no_dropout);
      GoldLabeling labels = model.label_for(scores, docs[0]);
      return model.loss(tape, scores, labels);
    });
    std::cout << to_string(head) << " head: worst relative error " << report.worst
              << (report.all_pass ? " PASS" : " FAIL") << "\n";
    for (const GradCheckEntry& entry : report.entries) {
      if (!entry.pass) {
        std::cout << "  " << entry.name << ": " << entry.max_rel_err << "\n";
      }
    }
    all_pass = all_pass && report.all_pass;
  }
  return all_pass ? 0 : 1;
}

int run_synth(const SynthConfig& config, const std::string& out_path) {
  auto docs = generate_synthetic(config);
  save_corpus(docs, out_path);
  std::cout << "wrote " << docs.size() << " documents to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Span-based neural mention detection"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "Train a mention detector");
  std::string config_path, head, task, labels_csv;
  RunConfig config;
  ModeFlags train_mode;
  train->add_option("--config", config_path, "JSON config file (flags override it)");
  train->add_option("--head", head, "lee | biaffine | concat");
  train->add_option("--task", task, "md | ner");
  train->add_option("--labels", labels_csv, "Comma-separated NER label inventory");
  train->add_option("--train", config.train_path, "Training corpus (jsonl)");
  train->add_option("--dev", config.dev_path, "Dev corpus (jsonl)");
  train->add_option("--out", config.out_dir, "Output directory");
  std::optional<std::size_t> steps, eval_interval, batch, word_dim, max_width;
  std::optional<std::uint64_t> seed;
  std::optional<double> lr;
  std::optional<bool> char_cnn, bilstm;
  train->add_option("--steps", steps, "Training steps");
  train->add_option("--eval-interval", eval_interval, "Dev evaluation interval");
  train->add_option("--batch", batch, "Documents per Adam step");
  train->add_option("--learning-rate", lr, "Adam learning rate");
  train->add_option("--word-dim", word_dim, "Trainable word embedding size");
  train->add_option("--max-width", max_width, "Maximum enumerated span width");
  train->add_option("--seed", seed, "Global seed");
  train->add_flag("--no-dev", config.no_dev, "Skip dev evaluation, keep the final model");
  train->add_flag("--drop-singletons", config.drop_singletons,
                  "Drop spans marked singleton at load time");
  train->add_option("--char-cnn", char_cnn, "Enable the character CNN (true/false)");
  train->add_option("--bilstm", bilstm, "Enable the BiLSTM encoder (true/false)");
  add_mode_flags(train, train_mode);

  // predict
  auto* predict = app.add_subcommand("predict", "Write predictions for a corpus");
  std::string ckpt_dir, input_path, output_path, expect_head;
  ModeFlags predict_mode;
  predict->add_option("--checkpoint", ckpt_dir, "Checkpoint directory")->required();
  predict->add_option("--input", input_path, "Input corpus (jsonl)")->required();
  predict->add_option("--out", output_path, "Predictions file")->required();
  predict->add_option("--head", expect_head, "Refuse checkpoints of a different head");
  add_mode_flags(predict, predict_mode);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against gold");
  std::string gold_path, pred_path, eval_ckpt, eval_task = "md";
  double min_f1 = -1.0;
  std::size_t eval_max_width = 0;
  ModeFlags eval_mode;
  evaluate->add_option("--gold", gold_path, "Gold corpus (jsonl)")->required();
  evaluate->add_option("--pred", pred_path, "Predictions file (jsonl)");
  evaluate->add_option("--checkpoint", eval_ckpt,
                       "Predict with this model instead of reading --pred");
  evaluate->add_option("--task", eval_task, "md | ner");
  evaluate->add_option("--min-f1", min_f1, "Exit nonzero when F1 falls below this");
  evaluate->add_option("--max-width", eval_max_width,
                       "Report gold spans wider than this as oracle-unreachable");
  add_mode_flags(evaluate, eval_mode);

  // gradcheck
  auto* gradcheck_cmd = app.add_subcommand("gradcheck", "Finite-difference gradient checks");
  std::uint64_t gc_seed = 3;
  gradcheck_cmd->add_option("--seed", gc_seed, "Seed for the toy fixtures");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  SynthConfig synth_config;
  std::string synth_out;
  synth->add_option("--out", synth_out, "Output corpus file")->required();
  synth->add_option("--docs", synth_config.documents, "Number of documents");
  synth->add_option("--seed", synth_config.seed, "Generator seed");
  synth->add_option("--max-width", synth_config.max_width, "Gold span width cap");
  synth->add_option("--nesting", synth_config.nesting,
                    "Nested pairs per gold span (implies --ner when > 0)");
  bool synth_ner = false;
  synth->add_flag("--ner", synth_ner, "Generate labeled nested-NER documents");
  synth->add_option("--min-sentences", synth_config.min_sentences, "Sentences per doc, low");
  synth->add_option("--max-sentences", synth_config.max_sentences, "Sentences per doc, high");
  synth->add_option("--key-prefix", synth_config.key_prefix, "doc_key prefix");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw UsageError("cannot open config file: " + config_path);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        RunConfig from_file = run_config_from_json(text);
        // flags parsed into `config` override file values below
        std::string tp = config.train_path, dp = config.dev_path, od = config.out_dir;
        bool nd = config.no_dev, ds = config.drop_singletons;
        config = from_file;
        if (!tp.empty()) config.train_path = tp;
        if (!dp.empty()) config.dev_path = dp;
        if (!od.empty()) config.out_dir = od;
        config.no_dev = config.no_dev || nd;
        config.drop_singletons = config.drop_singletons || ds;
      }
      if (!head.empty()) config.model.head = head_from_string(head);
      if (!task.empty()) config.model.task = task_from_string(task);
      if (!labels_csv.empty()) {
        config.model.labels.clear();
        std::string item;
        std::istringstream ss(labels_csv);
        while (std::getline(ss, item, ',')) config.model.labels.push_back(item);
      }
      if (steps) config.training_steps = *steps;
      if (eval_interval) config.eval_interval = *eval_interval;
      if (batch) config.batch_size = *batch;
      if (lr) config.learning_rate = *lr;
      if (word_dim) config.model.word_dim = *word_dim;
      if (max_width) config.model.max_span_width = *max_width;
      if (seed) config.model.seed = *seed;
      if (char_cnn) config.model.use_char_cnn = *char_cnn;
      if (bilstm) config.model.use_bilstm = *bilstm;
      apply_mode_flags(train_mode, config.mode);
      return run_train(config);
    }
    if (predict->parsed()) {
      OperatingMode mode = OperatingMode::high_f1(0.5);
      apply_mode_flags(predict_mode, mode);
      return run_predict(ckpt_dir, input_path, output_path, mode, expect_head);
    }
    if (evaluate->parsed()) {
      OperatingMode mode = OperatingMode::high_f1(0.5);
      apply_mode_flags(eval_mode, mode);
      return run_evaluate(gold_path, pred_path, eval_ckpt, mode, eval_task, min_f1,
                          eval_max_width);
    }
    if (gradcheck_cmd->parsed()) {
      return run_gradcheck(gc_seed);
    }
    if (synth->parsed()) {
      synth_config.ner = synth_ner || synth_config.nesting > 0;
      return run_synth(synth_config, synth_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
