#include "mdet/alignment.hpp"

namespace mdet {

namespace {
constexpr const char* kContinuation = "##";

bool is_continuation(const std::string& piece) {
  return piece.rfind(kContinuation, 0) == 0;
}

std::string strip(const std::string& piece) {
  return is_continuation(piece) ? piece.substr(2) : piece;
}
}  // namespace

PieceAlignment align_pieces(const std::vector<std::string>& tokens,
                            const std::vector<std::string>& pieces) {
  PieceAlignment alignment;
  alignment.reserve(tokens.size());
  std::size_t p = 0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (p >= pieces.size() || is_continuation(pieces[p])) {
      throw AlignmentError("piece alignment diverges at token " + std::to_string(t) +
                           " ('" + tokens[t] + "'): no piece starts here");
    }
    alignment.push_back(p);
    std::string rebuilt = strip(pieces[p]);
    ++p;
    while (rebuilt.size() < tokens[t].size() && p < pieces.size() &&
           is_continuation(pieces[p])) {
      rebuilt += strip(pieces[p]);
      ++p;
    }
    if (rebuilt != tokens[t]) {
      throw AlignmentError("piece alignment diverges at token " + std::to_string(t) +
                           ": pieces rebuild '" + rebuilt + "', token is '" +
                           tokens[t] + "'");
    }
  }
  if (p != pieces.size()) {
    throw AlignmentError("piece alignment has " + std::to_string(pieces.size() - p) +
                         " trailing pieces after the last token");
  }
  return alignment;
}

PieceAlignment align_document_pieces(const Document& doc) {
  if (doc.pieces.empty()) {
    throw AlignmentError("doc " + doc.doc_key + " carries no sub-word pieces");
  }
  PieceAlignment alignment;
  std::size_t offset = 0;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    PieceAlignment local = align_pieces(doc.sentences[s], doc.pieces[s]);
    for (std::size_t idx : local) alignment.push_back(offset + idx);
    offset += doc.pieces[s].size();
  }
  return alignment;
}

}  // namespace mdet
