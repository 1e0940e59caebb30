#pragma once

#include <optional>
#include <string>

#include "mdet/model.hpp"

namespace mdet {

// Checkpoint layout: <dir>/manifest.json + <dir>/params.bin. The manifest
// records format version, scalar precision, config, vocabulary and the
// named tensor shapes; params.bin holds one little-endian blob per tensor in
// manifest order at the recorded precision. Round trips are bit-exact;
// narrower checkpoints load into wider builds losslessly, the reverse is
// refused.
void save_checkpoint(const Model& model, const std::string& directory);

Model load_checkpoint(const std::string& directory,
                      std::optional<HeadType> expected_head = std::nullopt);

}  // namespace mdet
