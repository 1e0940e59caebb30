#include "mdet/vectors_file.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace mdet {

using nlohmann::json;

void append_le_f32(std::string& out, float v) {
  static_assert(sizeof(float) == 4);
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  out.push_back(char(bits & 0xff));
  out.push_back(char((bits >> 8) & 0xff));
  out.push_back(char((bits >> 16) & 0xff));
  out.push_back(char((bits >> 24) & 0xff));
}

float read_le_f32(const unsigned char* p) {
  std::uint32_t bits = std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
                       (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

void write_vectors_file(const std::string& directory, const VectorsFile& file) {
  std::filesystem::create_directories(directory);
  const std::filesystem::path path = std::filesystem::path(directory) / file.doc_key;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write vectors file: " + path.string());
  json header;
  header["dimension"] = file.dimension;
  header["doc_key"] = file.doc_key;
  header["token_count"] = file.records.size();
  out << header.dump() << '\n';
  std::string blob;
  blob.reserve(file.records.size() * file.dimension * 4);
  for (const auto& rec : file.records) {
    if (rec.size() != file.dimension) {
      throw FormatError("vectors file " + file.doc_key + ": record has " +
                        std::to_string(rec.size()) + " floats, header says " +
                        std::to_string(file.dimension));
    }
    for (float v : rec) append_le_f32(blob, v);
  }
  out.write(blob.data(), std::streamsize(blob.size()));
}

VectorsFile read_vectors_file(const std::string& directory, const std::string& doc_key) {
  const std::filesystem::path path = std::filesystem::path(directory) / doc_key;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("doc " + doc_key + ": no precomputed vectors file at " +
                    path.string());
  }
  std::string header_line;
  if (!std::getline(in, header_line)) {
    throw FormatError("vectors file " + path.string() + ": missing header line");
  }
  json header;
  try {
    header = json::parse(header_line);
  } catch (const json::parse_error& e) {
    throw FormatError("vectors file " + path.string() + ": bad header: " + e.what());
  }
  if (!header.contains("dimension") || !header.contains("doc_key") ||
      !header.contains("token_count")) {
    throw FormatError("vectors file " + path.string() +
                      ": header must declare dimension, doc_key, token_count");
  }
  VectorsFile file;
  file.dimension = header["dimension"].get<std::size_t>();
  file.doc_key = header["doc_key"].get<std::string>();
  if (file.doc_key != doc_key) {
    throw FormatError("vectors file " + path.string() + ": header doc_key '" +
                      file.doc_key + "' does not match requested '" + doc_key + "'");
  }
  const std::size_t count = header["token_count"].get<std::size_t>();
  std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (blob.size() != count * file.dimension * 4) {
    throw FormatError("vectors file " + path.string() + ": expected " +
                      std::to_string(count * file.dimension * 4) + " payload bytes, found " +
                      std::to_string(blob.size()));
  }
  const auto* p = reinterpret_cast<const unsigned char*>(blob.data());
  file.records.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    file.records[i].resize(file.dimension);
    for (std::size_t j = 0; j < file.dimension; ++j) {
      file.records[i][j] = read_le_f32(p + (i * file.dimension + j) * 4);
    }
  }
  return file;
}

}  // namespace mdet
