#include "mdet/synthetic.hpp"

#include <algorithm>

#include "mdet/rng.hpp"

namespace mdet {

namespace {

const std::vector<std::string> kDeterminers = {"the", "a"};
const std::vector<std::string> kAdjectives = {"big", "red", "old", "tiny", "green"};
const std::vector<std::string> kNouns = {"dog", "cat", "tree", "car", "house", "bird", "river"};
const std::vector<std::string> kPlurals = {"dogs", "cats", "trees", "cars", "birds"};
const std::vector<std::string> kNames = {"alice", "bob", "carol", "dave", "erin", "frank"};
const std::vector<std::string> kVerbs = {"saw", "likes", "found", "chased", "near"};
const std::vector<std::string> kAdverbs = {"quickly", "quietly"};

const std::vector<std::string> kHonorifics = {"mr", "dr"};
const std::vector<std::string> kPlaces = {"paris", "rome", "tokyo", "berlin", "cairo"};
const std::vector<std::string> kPlaceMods = {"north", "south"};
const std::vector<std::string> kOrgSuffixes = {"corp", "institute", "labs", "group"};

const std::string& pick(const std::vector<std::string>& v, Rng& rng) {
  return v[rng.index(v.size())];
}

struct SentenceBuild {
  std::vector<std::string> tokens;
  std::vector<Span> mentions;        // sentence-local indices
  std::vector<LabeledSpan> ner;
};

// det adj* noun, or a bracket-marked name group; returns the mention span
void md_mention_np(SentenceBuild& s, Rng& rng, std::size_t max_width) {
  if (rng.uniform() < 0.7) {
    const std::size_t start = s.tokens.size();
    s.tokens.push_back(pick(kDeterminers, rng));
    const std::size_t max_adjs = std::min<std::size_t>(3, max_width >= 2 ? max_width - 2 : 0);
    const std::size_t adjs = max_adjs == 0 ? 0 : rng.index(max_adjs + 1);
    for (std::size_t i = 0; i < adjs; ++i) s.tokens.push_back(pick(kAdjectives, rng));
    s.tokens.push_back(pick(kNouns, rng));
    s.mentions.push_back(Span{start, s.tokens.size() - 1});
  } else {
    s.tokens.push_back("[");
    const std::size_t start = s.tokens.size();
    const std::size_t count = 1 + rng.index(std::min<std::size_t>(3, max_width));
    for (std::size_t i = 0; i < count; ++i) s.tokens.push_back(pick(kNames, rng));
    s.mentions.push_back(Span{start, s.tokens.size() - 1});
    s.tokens.push_back("]");
  }
}

void md_np(SentenceBuild& s, Rng& rng, std::size_t max_width) {
  if (rng.uniform() < 0.25) {
    s.tokens.push_back(pick(kPlurals, rng));  // bare plural, not a mention
  } else {
    md_mention_np(s, rng, max_width);
  }
}

SentenceBuild md_sentence(Rng& rng, std::size_t max_width) {
  SentenceBuild s;
  md_np(s, rng, max_width);
  s.tokens.push_back(pick(kVerbs, rng));
  if (rng.uniform() < 0.3) s.tokens.push_back(pick(kAdverbs, rng));
  if (rng.uniform() < 0.8) md_np(s, rng, max_width);
  s.tokens.push_back(".");
  return s;
}

// person or location entity; returns its local span and label index (0=per, 2=loc)
LabeledSpan ner_inner_entity(SentenceBuild& s, Rng& rng) {
  const std::size_t start = s.tokens.size();
  if (rng.uniform() < 0.5) {
    if (rng.uniform() < 0.5) s.tokens.push_back(pick(kHonorifics, rng));
    s.tokens.push_back(pick(kNames, rng));
    return LabeledSpan{start, s.tokens.size() - 1, "per"};
  }
  if (rng.uniform() < 0.4) s.tokens.push_back(pick(kPlaceMods, rng));
  s.tokens.push_back(pick(kPlaces, rng));
  return LabeledSpan{start, s.tokens.size() - 1, "loc"};
}

// one entity slot: flat per/loc, or a nested pair (per/loc inside an org)
void ner_slot(SentenceBuild& s, Rng& rng, double pair_prob) {
  LabeledSpan inner = ner_inner_entity(s, rng);
  if (rng.uniform() < pair_prob) {
    s.tokens.push_back(pick(kOrgSuffixes, rng));
    s.ner.push_back(inner);
    s.ner.push_back(LabeledSpan{inner.start, s.tokens.size() - 1, "org"});
  } else {
    s.ner.push_back(inner);
  }
}

SentenceBuild ner_sentence(Rng& rng, double pair_prob) {
  SentenceBuild s;
  switch (rng.index(3)) {
    case 0:
      s.tokens.push_back("the");
      s.tokens.push_back(rng.uniform() < 0.5 ? "report" : "meeting");
      s.tokens.push_back(rng.uniform() < 0.5 ? "about" : "at");
      ner_slot(s, rng, pair_prob);
      if (rng.uniform() < 0.5) {
        s.tokens.push_back("with");
        ner_slot(s, rng, pair_prob);
      }
      break;
    case 1:
      ner_slot(s, rng, pair_prob);
      s.tokens.push_back(rng.uniform() < 0.5 ? "visited" : "joined");
      ner_slot(s, rng, pair_prob);
      break;
    default:
      ner_slot(s, rng, pair_prob);
      s.tokens.push_back("talked");
      s.tokens.push_back("with");
      ner_slot(s, rng, pair_prob);
      break;
  }
  s.tokens.push_back(".");
  return s;
}

}  // namespace

std::vector<Document> generate_synthetic(const SynthConfig& config) {
  if (config.nesting < 0 || config.nesting >= 0.5) {
    throw ContractError("synthetic corpus: nesting fraction must lie in [0, 0.5)");
  }
  // nesting = pairs / spans; each pair adds two spans, so the per-slot pair
  // probability q satisfies q / (1 + q) = nesting
  const double pair_prob = config.nesting / (1.0 - config.nesting);
  Rng rng(config.seed);
  std::vector<Document> docs;
  docs.reserve(config.documents);
  for (std::size_t d = 0; d < config.documents; ++d) {
    Document doc;
    doc.doc_key = config.key_prefix + "-" + std::to_string(d);
    const std::size_t sentences =
        config.min_sentences + rng.index(config.max_sentences - config.min_sentences + 1);
    std::size_t offset = 0;
    for (std::size_t s = 0; s < sentences; ++s) {
      SentenceBuild built = config.ner ? ner_sentence(rng, pair_prob)
                                       : md_sentence(rng, config.max_width);
      for (const Span& m : built.mentions) {
        doc.mentions.push_back(Span{offset + m.start, offset + m.end});
      }
      for (const LabeledSpan& e : built.ner) {
        doc.ner.push_back(LabeledSpan{offset + e.start, offset + e.end, e.label});
        doc.mentions.push_back(Span{offset + e.start, offset + e.end});
      }
      offset += built.tokens.size();
      doc.sentences.push_back(std::move(built.tokens));
    }
    doc.validate();
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace mdet
