#include "mdet/document.hpp"

#include <set>
#include <unordered_map>
#include <unordered_set>

namespace mdet {

std::size_t Document::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

std::size_t Document::sentence_begin(std::size_t sentence) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < sentence; ++i) off += sentences[i].size();
  return off;
}

std::size_t Document::sentence_of(std::size_t flat) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    off += sentences[i].size();
    if (flat < off) return i;
  }
  throw DataError("doc " + doc_key + ": token index " + std::to_string(flat) +
                  " out of range for " + std::to_string(token_count()) + " tokens");
}

std::size_t Document::to_flat(std::size_t sentence, std::size_t local) const {
  return sentence_begin(sentence) + local;
}

std::pair<std::size_t, std::size_t> Document::to_local(std::size_t flat) const {
  const std::size_t s = sentence_of(flat);
  return {s, flat - sentence_begin(s)};
}

const std::string& Document::token(std::size_t flat) const {
  auto [s, local] = to_local(flat);
  return sentences[s][local];
}

void Document::validate() const {
  const std::size_t T = token_count();
  auto check_span = [&](std::size_t start, std::size_t end, const char* kind) {
    if (start > end || end >= T) {
      throw DataError("doc " + doc_key + ": " + kind + " span (" +
                      std::to_string(start) + ", " + std::to_string(end) +
                      ") out of range for " + std::to_string(T) + " tokens");
    }
    if (sentence_of(start) != sentence_of(end)) {
      throw DataError("doc " + doc_key + ": " + kind + " span (" +
                      std::to_string(start) + ", " + std::to_string(end) +
                      ") crosses a sentence boundary");
    }
  };

  std::set<Span> seen;
  for (const Span& m : mentions) {
    check_span(m.start, m.end, "mention");
    if (!seen.insert(m).second) {
      throw DataError("doc " + doc_key + ": duplicate mention (" +
                      std::to_string(m.start) + ", " + std::to_string(m.end) + ")");
    }
  }
  std::unordered_map<std::size_t, std::string> ner_labels;
  for (const LabeledSpan& e : ner) {
    check_span(e.start, e.end, "ner");
    const std::size_t key = e.start * (T + 1) + e.end;
    auto [it, fresh] = ner_labels.emplace(key, e.label);
    if (!fresh) {
      if (it->second != e.label) {
        throw DataError("doc " + doc_key + ": ner span (" + std::to_string(e.start) +
                        ", " + std::to_string(e.end) + ") labeled both '" +
                        it->second + "' and '" + e.label + "'");
      }
      throw DataError("doc " + doc_key + ": duplicate ner span (" +
                      std::to_string(e.start) + ", " + std::to_string(e.end) + ")");
    }
  }
  if (!pieces.empty() && pieces.size() != sentences.size()) {
    throw DataError("doc " + doc_key + ": pieces given for " +
                    std::to_string(pieces.size()) + " of " +
                    std::to_string(sentences.size()) + " sentences");
  }
  std::set<Span> mention_set(mentions.begin(), mentions.end());
  for (const Span& s : singletons) {
    if (!mention_set.count(s)) {
      throw DataError("doc " + doc_key + ": singleton (" + std::to_string(s.start) +
                      ", " + std::to_string(s.end) + ") is not a listed mention");
    }
  }
}

}  // namespace mdet
