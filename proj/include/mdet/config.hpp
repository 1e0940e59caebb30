#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdet/selection.hpp"

namespace mdet {

enum class HeadType { lee, biaffine, concat };
enum class Task { md, ner };

std::string to_string(HeadType head);
std::string to_string(Task task);
HeadType head_from_string(const std::string& s);
Task task_from_string(const std::string& s);

// Architecture and regularization knobs. Defaults reproduce the reference
// hyperparameters: BiLSTM 3 x 200 dropout 0.4, FFNN 2 x 150 dropout 0.2,
// embedding dropout 0.5, max span width 30.
struct ModelConfig {
  HeadType head = HeadType::biaffine;
  Task task = Task::md;
  std::vector<std::string> labels;  // NER categories, order fixes class ids

  bool use_word_table = true;
  std::size_t word_dim = 300;
  bool use_hashed = false;
  std::size_t hashed_dim = 64;
  std::size_t hashed_buckets = 4096;
  std::uint64_t hash_seed = 17;
  bool use_precomputed = false;
  std::size_t precomputed_dim = 1024;
  std::string vectors_dir;
  bool use_char_cnn = false;

  bool use_bilstm = true;
  std::size_t bilstm_layers = 3;
  std::size_t bilstm_size = 200;
  double bilstm_dropout = 0.4;

  std::size_t ffnn_layers = 2;
  std::size_t ffnn_size = 150;
  double ffnn_dropout = 0.2;
  double embedding_dropout = 0.5;

  std::size_t max_span_width = 30;
  std::size_t width_feature_dim = 20;
  std::size_t biaffine_dim = 150;

  std::uint64_t seed = 1;

  // 1 for mention detection, 1 + |labels| for the C-way variant
  std::size_t channels() const { return task == Task::ner ? 1 + labels.size() : 1; }
  void validate() const;
};

// Full experiment configuration; training defaults follow the reference
// table (Adam, learning rate 1e-3, 40K steps).
struct RunConfig {
  ModelConfig model;

  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::size_t training_steps = 40000;
  std::size_t batch_size = 1;
  std::size_t eval_interval = 2000;
  bool no_dev = false;

  OperatingMode mode = OperatingMode::high_f1(0.5);

  std::string train_path;
  std::string dev_path;
  std::string test_path;
  std::string out_dir;
  std::string checkpoint;
  bool drop_singletons = false;

  void validate() const;
};

// JSON object with keys mirroring the field names above; unknown keys are
// usage errors
RunConfig run_config_from_json(const std::string& text);
std::string run_config_to_json(const RunConfig& config);

}  // namespace mdet
