#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mdet/checkpoint.hpp"
#include "mdet/synthetic.hpp"

using namespace mdet;

namespace {

std::string temp_dir(const char* tag) {
  auto dir = std::filesystem::temp_directory_path() / (std::string("mdet_ckpt_") + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

ModelConfig tiny_config(HeadType head) {
  ModelConfig cfg;
  cfg.head = head;
  cfg.word_dim = 6;
  cfg.bilstm_layers = 1;
  cfg.bilstm_size = 5;
  cfg.ffnn_size = 7;
  cfg.max_span_width = 4;
  cfg.biaffine_dim = 5;
  cfg.seed = 101;
  return cfg;
}

}  // namespace

TEST_SUITE("checkpoint") {

TEST_CASE("round trip re-scores a fixed document bit-identically") {
  SynthConfig synth;
  synth.documents = 3;
  auto docs = generate_synthetic(synth);
  Vocabulary vocab = Vocabulary::build(docs);
  Model model(tiny_config(HeadType::biaffine), vocab);

  Tape tape;
  tape.set_enabled(false);
  Rng no_drop(0);
  DocScores before = model.score_document(tape, docs[0], false, no_drop);

  const std::string dir = temp_dir("roundtrip");
  save_checkpoint(model, dir);
  Model restored = load_checkpoint(dir);
  DocScores after = restored.score_document(tape, docs[0], false, no_drop);

  REQUIRE(before.mention_probs.size() == after.mention_probs.size());
  for (std::size_t i = 0; i < before.mention_probs.size(); ++i) {
    CHECK(before.mention_probs[i] == after.mention_probs[i]);  // 0 ulp
  }
  const auto& original = model.params().entries();
  const auto& loaded = restored.params().entries();
  REQUIRE(original.size() == loaded.size());
  for (std::size_t i = 0; i < original.size(); ++i) {
    CHECK(original[i].first == loaded[i].first);
    CHECK(original[i].second.values() == loaded[i].second.values());
  }
}

TEST_CASE("a manifest edited to the wrong shape is refused") {
  SynthConfig synth;
  synth.documents = 2;
  auto docs = generate_synthetic(synth);
  Model model(tiny_config(HeadType::concat), Vocabulary::build(docs));
  const std::string dir = temp_dir("badshape");
  save_checkpoint(model, dir);

  const auto manifest_path = std::filesystem::path(dir) / "manifest.json";
  nlohmann::json manifest;
  std::ifstream(manifest_path) >> manifest;
  manifest["tensors"][0]["shape"] = {1, 1};
  std::ofstream(manifest_path) << manifest.dump();
  CHECK_THROWS_AS(load_checkpoint(dir), FormatError);
}

TEST_CASE("an unknown format version is refused") {
  SynthConfig synth;
  synth.documents = 2;
  auto docs = generate_synthetic(synth);
  Model model(tiny_config(HeadType::concat), Vocabulary::build(docs));
  const std::string dir = temp_dir("badversion");
  save_checkpoint(model, dir);

  const auto manifest_path = std::filesystem::path(dir) / "manifest.json";
  nlohmann::json manifest;
  std::ifstream(manifest_path) >> manifest;
  manifest["format_version"] = 99;
  std::ofstream(manifest_path) << manifest.dump();
  CHECK_THROWS_WITH_AS(load_checkpoint(dir), doctest::Contains("version"), FormatError);
}

TEST_CASE("a checkpoint from a different head type is refused by name") {
  SynthConfig synth;
  synth.documents = 2;
  auto docs = generate_synthetic(synth);
  Model model(tiny_config(HeadType::lee), Vocabulary::build(docs));
  const std::string dir = temp_dir("badhead");
  save_checkpoint(model, dir);
  CHECK_THROWS_WITH_AS(load_checkpoint(dir, HeadType::biaffine),
                       doctest::Contains("architecture mismatch"), FormatError);
  Model ok = load_checkpoint(dir, HeadType::lee);
  CHECK(ok.config().head == HeadType::lee);
}

}  // TEST_SUITE
