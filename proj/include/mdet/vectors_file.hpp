#pragma once

#include <string>
#include <vector>

#include "mdet/error.hpp"

namespace mdet {

// Precomputed per-token vector files, one per document, file name =
// document key. Layout: one JSON header line
//   {"dimension": D, "doc_key": "...", "token_count": N}
// followed by N records of D little-endian 32-bit floats. `token_count`
// counts records; files holding sub-word piece vectors store one record per
// piece and are mapped to tokens through the piece alignment.
struct VectorsFile {
  std::string doc_key;
  std::size_t dimension = 0;
  std::vector<std::vector<float>> records;
};

void write_vectors_file(const std::string& directory, const VectorsFile& file);
VectorsFile read_vectors_file(const std::string& directory, const std::string& doc_key);

// little-endian float32 helpers shared with checkpointing
void append_le_f32(std::string& out, float v);
float read_le_f32(const unsigned char* p);

}  // namespace mdet
