#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdet/document.hpp"

namespace mdet {

// Deterministic-by-seed corpus of pattern-based mentions. MD documents mix
// determiner+adjective*+noun phrases and bracket-marked name groups with
// bare-noun distractors; NER documents draw person/location entities, a
// fraction of which nest inside organization containers (inner + container
// both gold). `nesting` is nested pairs / total gold spans.
struct SynthConfig {
  std::uint64_t seed = 7;
  std::size_t documents = 100;
  std::size_t min_sentences = 2;
  std::size_t max_sentences = 3;
  std::size_t max_width = 10;
  bool ner = false;
  double nesting = 0.0;
  std::string key_prefix = "synth";
};

inline const std::vector<std::string> kSynthNerLabels = {"per", "org", "loc"};

std::vector<Document> generate_synthetic(const SynthConfig& config);

}  // namespace mdet
