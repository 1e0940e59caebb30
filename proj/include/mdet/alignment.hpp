#pragma once

#include <string>
#include <vector>

#include "mdet/document.hpp"

namespace mdet {

// For each token, the index of its first sub-word piece. Continuation
// pieces carry a leading "##"; stripping the marker and concatenating a
// token's pieces must reconstruct the token exactly.
using PieceAlignment = std::vector<std::size_t>;

// Per-sentence alignment; indices refer into `pieces`.
// Throws AlignmentError naming the first diverging token position.
PieceAlignment align_pieces(const std::vector<std::string>& tokens,
                            const std::vector<std::string>& pieces);

// Document-level alignment over the concatenated piece sequence.
PieceAlignment align_document_pieces(const Document& doc);

}  // namespace mdet
