#include "mdet/checkpoint.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mdet/vectors_file.hpp"

namespace mdet {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kFormatVersion = 1;

const char* precision_name() { return sizeof(Real) == 8 ? "f64" : "f32"; }

void append_le_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) out.push_back(char((bits >> (8 * i)) & 0xff));
}

double read_le_f64(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t(p[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

json model_config_json(const ModelConfig& m) {
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
  return j;
}

ModelConfig model_config_from_json(const json& j) {
  ModelConfig m;
  m.head = head_from_string(j.at("head").get<std::string>());
  m.task = task_from_string(j.at("task").get<std::string>());
  m.labels = j.at("labels").get<std::vector<std::string>>();
  m.use_word_table = j.at("use_word_table").get<bool>();
  m.word_dim = j.at("word_dim").get<std::size_t>();
  m.use_hashed = j.at("use_hashed").get<bool>();
  m.hashed_dim = j.at("hashed_dim").get<std::size_t>();
  m.hashed_buckets = j.at("hashed_buckets").get<std::size_t>();
  m.hash_seed = j.at("hash_seed").get<std::uint64_t>();
  m.use_precomputed = j.at("use_precomputed").get<bool>();
  m.precomputed_dim = j.at("precomputed_dim").get<std::size_t>();
  m.vectors_dir = j.at("vectors_dir").get<std::string>();
  m.use_char_cnn = j.at("use_char_cnn").get<bool>();
  m.use_bilstm = j.at("use_bilstm").get<bool>();
  m.bilstm_layers = j.at("bilstm_layers").get<std::size_t>();
  m.bilstm_size = j.at("bilstm_size").get<std::size_t>();
  m.bilstm_dropout = j.at("bilstm_dropout").get<double>();
  m.ffnn_layers = j.at("ffnn_layers").get<std::size_t>();
  m.ffnn_size = j.at("ffnn_size").get<std::size_t>();
  m.ffnn_dropout = j.at("ffnn_dropout").get<double>();
  m.embedding_dropout = j.at("embedding_dropout").get<double>();
  m.max_span_width = j.at("max_span_width").get<std::size_t>();
  m.width_feature_dim = j.at("width_feature_dim").get<std::size_t>();
  m.biaffine_dim = j.at("biaffine_dim").get<std::size_t>();
  m.seed = j.at("seed").get<std::uint64_t>();
  return m;
}

}  // namespace

void save_checkpoint(const Model& model, const std::string& directory) {
  std::filesystem::create_directories(directory);
  const auto dir = std::filesystem::path(directory);

  ordered_json manifest;
  manifest["format_version"] = kFormatVersion;
  manifest["precision"] = precision_name();
  manifest["seed"] = model.config().seed;
  manifest["config"] = model_config_json(model.config());
  manifest["vocab"]["words"] = model.vocabulary().words;
  manifest["vocab"]["chars"] = json::array();
  for (unsigned char c : model.vocabulary().chars) manifest["vocab"]["chars"].push_back(int(c));
  manifest["tensors"] = json::array();

  std::string blob;
  for (const auto& [name, tensor] : model.params().entries()) {
    ordered_json entry;
    entry["name"] = name;
    entry["shape"] = tensor.shape();
    manifest["tensors"].push_back(entry);
    for (Real v : tensor.values()) {
      if (sizeof(Real) == 8) {
        append_le_f64(blob, double(v));
      } else {
        append_le_f32(blob, float(v));
      }
    }
  }

  std::ofstream mf(dir / "manifest.json");
  if (!mf) throw DataError("cannot write checkpoint manifest in " + directory);
  mf << manifest.dump(2) << '\n';
  std::ofstream pf(dir / "params.bin", std::ios::binary);
  if (!pf) throw DataError("cannot write checkpoint params in " + directory);
  pf.write(blob.data(), std::streamsize(blob.size()));
}

Model load_checkpoint(const std::string& directory, std::optional<HeadType> expected_head) {
  const auto dir = std::filesystem::path(directory);
  std::ifstream mf(dir / "manifest.json");
  if (!mf) throw FormatError("no checkpoint manifest in " + directory);
  json manifest;
  try {
    manifest = json::parse(mf);
  } catch (const json::parse_error& e) {
    throw FormatError("checkpoint manifest is not valid JSON: " + std::string(e.what()));
  }
  if (!manifest.contains("format_version") ||
      manifest["format_version"].get<int>() != kFormatVersion) {
    throw FormatError("checkpoint format version " +
                      (manifest.contains("format_version")
                           ? manifest["format_version"].dump()
                           : std::string("<missing>")) +
                      " is not supported (expected " + std::to_string(kFormatVersion) + ")");
  }
  const std::string precision = manifest.at("precision").get<std::string>();
  const std::size_t elem_size = precision == "f64" ? 8 : 4;
  if (precision != "f64" && precision != "f32") {
    throw FormatError("checkpoint precision '" + precision + "' is not supported");
  }
  if (elem_size > sizeof(Real)) {
    throw FormatError("checkpoint precision " + precision +
                      " cannot load into this " + precision_name() + " build");
  }

  ModelConfig config = model_config_from_json(manifest.at("config"));
  if (expected_head && config.head != *expected_head) {
    throw FormatError("architecture mismatch: checkpoint head '" + to_string(config.head) +
                      "', requested '" + to_string(*expected_head) + "'");
  }

  std::vector<std::string> words =
      manifest.at("vocab").at("words").get<std::vector<std::string>>();
  std::vector<unsigned char> chars;
  for (const auto& c : manifest.at("vocab").at("chars")) {
    chars.push_back(static_cast<unsigned char>(c.get<int>()));
  }
  Model model(config, Vocabulary::from_lists(std::move(words), std::move(chars)));

  const auto& tensors = manifest.at("tensors");
  const auto& entries = model.params().entries();
  if (tensors.size() != entries.size()) {
    throw FormatError("checkpoint lists " + std::to_string(tensors.size()) +
                      " tensors, model has " + std::to_string(entries.size()));
  }

  std::ifstream pf(dir / "params.bin", std::ios::binary);
  if (!pf) throw FormatError("no checkpoint params.bin in " + directory);
  std::string blob((std::istreambuf_iterator<char>(pf)), std::istreambuf_iterator<char>());

  std::size_t offset = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string name = tensors[i].at("name").get<std::string>();
    const auto shape = tensors[i].at("shape").get<std::vector<std::size_t>>();
    Tensor t = entries[i].second;
    if (name != entries[i].first) {
      throw FormatError("checkpoint tensor '" + name + "' does not match model tensor '" +
                        entries[i].first + "'");
    }
    if (shape != t.shape()) {
      throw FormatError("checkpoint tensor '" + name + "' has shape " + shape_str(shape) +
                        ", model expects " + shape_str(t.shape()));
    }
    if (offset + t.numel() * elem_size > blob.size()) {
      throw FormatError("checkpoint params.bin is truncated at tensor '" + name + "'");
    }
    const auto* p = reinterpret_cast<const unsigned char*>(blob.data()) + offset;
    for (std::size_t k = 0; k < t.numel(); ++k) {
      t.at(k) = elem_size == 8 ? Real(read_le_f64(p + 8 * k)) : Real(read_le_f32(p + 4 * k));
    }
    offset += t.numel() * elem_size;
  }
  if (offset != blob.size()) {
    throw FormatError("checkpoint params.bin has " + std::to_string(blob.size() - offset) +
                      " trailing bytes");
  }
  return model;
}

}  // namespace mdet
