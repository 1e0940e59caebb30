#include "mdet/config.hpp"

#include <set>

#include <json.hpp>

#include "mdet/error.hpp"

namespace mdet {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string to_string(HeadType head) {
  switch (head) {
    case HeadType::lee: return "lee";
    case HeadType::biaffine: return "biaffine";
    case HeadType::concat: return "concat";
  }
  return "?";
}

std::string to_string(Task task) { return task == Task::md ? "md" : "ner"; }

HeadType head_from_string(const std::string& s) {
  if (s == "lee") return HeadType::lee;
  if (s == "biaffine") return HeadType::biaffine;
  if (s == "concat") return HeadType::concat;
  throw UsageError("unknown head type '" + s + "' (expected lee|biaffine|concat)");
}

Task task_from_string(const std::string& s) {
  if (s == "md") return Task::md;
  if (s == "ner") return Task::ner;
  throw UsageError("unknown task '" + s + "' (expected md|ner)");
}

void ModelConfig::validate() const {
  if (!use_word_table && !use_hashed && !use_precomputed && !use_char_cnn) {
    throw UsageError("config: no embedding source enabled");
  }
  if (use_precomputed && vectors_dir.empty()) {
    throw UsageError("config: precomputed embeddings need vectors_dir");
  }
  if (task == Task::ner && labels.empty()) {
    throw UsageError("config: the ner task needs a label inventory");
  }
  if (max_span_width < 1) throw UsageError("config: max_span_width must be >= 1");
}

void RunConfig::validate() const {
  model.validate();
  if (mode.kind == OperatingMode::Kind::high_recall) {
    if (mode.lambda <= 0) throw UsageError("config: lambda must be positive");
    if (mode.lambda >= double(model.max_span_width)) {
      throw UsageError("config: lambda must be smaller than the max span width");
    }
  } else if (!(mode.beta > 0 && mode.beta < 1)) {
    throw UsageError("config: beta must lie in (0, 1)");
  }
  if (batch_size < 1) throw UsageError("config: batch_size must be >= 1");
}

RunConfig run_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");

  RunConfig c;
  ModelConfig& m = c.model;
  std::set<std::string> seen;
  auto mark = [&](const std::string& key) { seen.insert(key); };

  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) {
      mark(key);
      try {
        field = j[key].template get<std::remove_reference_t<decltype(field)>>();
      } catch (const json::exception&) {
        throw UsageError(std::string("config key '") + key + "' has the wrong type");
      }
    }
  };

  std::string head = to_string(m.head), task = to_string(m.task), mode_kind;
  get("head", head);
  get("task", task);
  m.head = head_from_string(head);
  m.task = task_from_string(task);
  get("labels", m.labels);
  get("use_word_table", m.use_word_table);
  get("word_dim", m.word_dim);
  get("use_hashed", m.use_hashed);
  get("hashed_dim", m.hashed_dim);
  get("hashed_buckets", m.hashed_buckets);
  get("hash_seed", m.hash_seed);
  get("use_precomputed", m.use_precomputed);
  get("precomputed_dim", m.precomputed_dim);
  get("vectors_dir", m.vectors_dir);
  get("use_char_cnn", m.use_char_cnn);
  get("use_bilstm", m.use_bilstm);
  get("bilstm_layers", m.bilstm_layers);
  get("bilstm_size", m.bilstm_size);
  get("bilstm_dropout", m.bilstm_dropout);
  get("ffnn_layers", m.ffnn_layers);
  get("ffnn_size", m.ffnn_size);
  get("ffnn_dropout", m.ffnn_dropout);
  get("embedding_dropout", m.embedding_dropout);
  get("max_span_width", m.max_span_width);
  get("width_feature_dim", m.width_feature_dim);
  get("biaffine_dim", m.biaffine_dim);
  get("seed", m.seed);

  get("learning_rate", c.learning_rate);
  get("adam_beta1", c.adam_beta1);
  get("adam_beta2", c.adam_beta2);
  get("adam_epsilon", c.adam_epsilon);
  get("training_steps", c.training_steps);
  get("batch_size", c.batch_size);
  get("eval_interval", c.eval_interval);
  get("no_dev", c.no_dev);
  get("train_path", c.train_path);
  get("dev_path", c.dev_path);
  get("test_path", c.test_path);
  get("out_dir", c.out_dir);
  get("checkpoint", c.checkpoint);
  get("drop_singletons", c.drop_singletons);

  get("mode", mode_kind);
  double lambda = c.mode.lambda, beta = c.mode.beta;
  get("lambda", lambda);
  get("beta", beta);
  if (mode_kind == "high-recall") {
    c.mode = OperatingMode::high_recall(lambda);
  } else if (mode_kind == "high-f1") {
    c.mode = OperatingMode::high_f1(beta);
  } else if (!mode_kind.empty()) {
    throw UsageError("config: mode must be high-recall or high-f1");
  }

  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!seen.count(it.key())) {
      throw UsageError("config: unknown key '" + it.key() + "'");
    }
  }
  return c;
}

std::string run_config_to_json(const RunConfig& c) {
  const ModelConfig& m = c.model;
  ordered_json j;
  j["head"] = to_string(m.head);
  j["task"] = to_string(m.task);
  j["labels"] = m.labels;
  j["use_word_table"] = m.use_word_table;
  j["word_dim"] = m.word_dim;
  j["use_hashed"] = m.use_hashed;
  j["hashed_dim"] = m.hashed_dim;
  j["hashed_buckets"] = m.hashed_buckets;
  j["hash_seed"] = m.hash_seed;
  j["use_precomputed"] = m.use_precomputed;
  j["precomputed_dim"] = m.precomputed_dim;
  j["vectors_dir"] = m.vectors_dir;
  j["use_char_cnn"] = m.use_char_cnn;
  j["use_bilstm"] = m.use_bilstm;
  j["bilstm_layers"] = m.bilstm_layers;
  j["bilstm_size"] = m.bilstm_size;
  j["bilstm_dropout"] = m.bilstm_dropout;
  j["ffnn_layers"] = m.ffnn_layers;
  j["ffnn_size"] = m.ffnn_size;
  j["ffnn_dropout"] = m.ffnn_dropout;
  j["embedding_dropout"] = m.embedding_dropout;
  j["max_span_width"] = m.max_span_width;
  j["width_feature_dim"] = m.width_feature_dim;
  j["biaffine_dim"] = m.biaffine_dim;
  j["seed"] = m.seed;
  j["learning_rate"] = c.learning_rate;
  j["adam_beta1"] = c.adam_beta1;
  j["adam_beta2"] = c.adam_beta2;
  j["adam_epsilon"] = c.adam_epsilon;
  j["training_steps"] = c.training_steps;
  j["batch_size"] = c.batch_size;
  j["eval_interval"] = c.eval_interval;
  j["no_dev"] = c.no_dev;
  j["mode"] = c.mode.kind == OperatingMode::Kind::high_recall ? "high-recall" : "high-f1";
  j["lambda"] = c.mode.lambda;
  j["beta"] = c.mode.beta;
  j["train_path"] = c.train_path;
  j["dev_path"] = c.dev_path;
  j["test_path"] = c.test_path;
  j["out_dir"] = c.out_dir;
  j["checkpoint"] = c.checkpoint;
  j["drop_singletons"] = c.drop_singletons;
  return j.dump(2);
}

}  // namespace mdet
