#include "mdet/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mdet {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& msg) {
  throw DataError(origin + ":" + std::to_string(line) + ": " + msg);
}

Span parse_span_entry(const json& entry, const std::string& origin, std::size_t line,
                      const char* field) {
  if (!entry.is_array() || entry.size() < 2 || !entry[0].is_number_unsigned() ||
      !entry[1].is_number_unsigned()) {
    fail(origin, line, std::string(field) + " entries must be [start, end] with 0-based indices");
  }
  return Span{entry[0].get<std::size_t>(), entry[1].get<std::size_t>()};
}

Document parse_record(const json& rec, const std::string& origin, std::size_t line) {
  if (!rec.is_object()) fail(origin, line, "record is not an object");
  Document doc;
  if (!rec.contains("doc_key") || !rec["doc_key"].is_string()) {
    fail(origin, line, "missing string field 'doc_key'");
  }
  doc.doc_key = rec["doc_key"].get<std::string>();
  if (!rec.contains("sentences") || !rec["sentences"].is_array()) {
    fail(origin, line, "missing array field 'sentences'");
  }
  for (const auto& sent : rec["sentences"]) {
    if (!sent.is_array()) fail(origin, line, "sentences must be arrays of tokens");
    std::vector<std::string> tokens;
    for (const auto& tok : sent) {
      if (!tok.is_string()) fail(origin, line, "tokens must be strings");
      tokens.push_back(tok.get<std::string>());
    }
    doc.sentences.push_back(std::move(tokens));
  }
  if (rec.contains("mentions")) {
    for (const auto& entry : rec["mentions"]) {
      doc.mentions.push_back(parse_span_entry(entry, origin, line, "mention"));
    }
  }
  if (rec.contains("ner")) {
    for (const auto& entry : rec["ner"]) {
      if (!entry.is_array() || entry.size() < 3 || !entry[2].is_string()) {
        fail(origin, line, "ner entries must be [start, end, label]");
      }
      Span s = parse_span_entry(entry, origin, line, "ner");
      doc.ner.push_back(LabeledSpan{s.start, s.end, entry[2].get<std::string>()});
    }
  }
  if (rec.contains("pieces")) {
    for (const auto& sent : rec["pieces"]) {
      if (!sent.is_array()) fail(origin, line, "pieces must be arrays of strings");
      std::vector<std::string> ps;
      for (const auto& p : sent) ps.push_back(p.get<std::string>());
      doc.pieces.push_back(std::move(ps));
    }
  }
  if (rec.contains("singletons")) {
    for (const auto& entry : rec["singletons"]) {
      doc.singletons.push_back(parse_span_entry(entry, origin, line, "singleton"));
    }
  }
  return doc;
}

}  // namespace

std::vector<Document> parse_corpus(std::istream& in, const std::string& origin,
                                   const LoadOptions& opts) {
  std::vector<Document> docs;
  std::set<std::string> keys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(origin, lineno, std::string("malformed record: ") + e.what());
    }
    Document doc = parse_record(rec, origin, lineno);
    try {
      doc.validate();
    } catch (const DataError& e) {
      fail(origin, lineno, e.what());
    }
    if (!keys.insert(doc.doc_key).second) {
      fail(origin, lineno, "duplicate doc_key '" + doc.doc_key + "'");
    }
    if (!opts.label_inventory.empty()) {
      for (const LabeledSpan& e : doc.ner) {
        if (std::find(opts.label_inventory.begin(), opts.label_inventory.end(),
                      e.label) == opts.label_inventory.end()) {
          fail(origin, lineno,
               "doc " + doc.doc_key + ": unknown ner label '" + e.label + "'");
        }
      }
    }
    if (opts.drop_singletons && !doc.singletons.empty()) {
      std::set<Span> drop(doc.singletons.begin(), doc.singletons.end());
      std::erase_if(doc.mentions, [&](const Span& m) { return drop.count(m) > 0; });
      doc.singletons.clear();
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_corpus(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path);
  return parse_corpus(in, path, opts);
}

std::string corpus_line(const Document& doc) {
  ordered_json rec;
  rec["doc_key"] = doc.doc_key;
  rec["sentences"] = doc.sentences;
  rec["mentions"] = json::array();
  for (const Span& m : doc.mentions) rec["mentions"].push_back({m.start, m.end});
  rec["ner"] = json::array();
  for (const LabeledSpan& e : doc.ner) rec["ner"].push_back({e.start, e.end, e.label});
  if (!doc.pieces.empty()) rec["pieces"] = doc.pieces;
  if (!doc.singletons.empty()) {
    rec["singletons"] = json::array();
    for (const Span& s : doc.singletons) rec["singletons"].push_back({s.start, s.end});
  }
  return rec.dump();
}

void save_corpus(const std::vector<Document>& docs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write corpus file: " + path);
  for (const Document& doc : docs) out << corpus_line(doc) << '\n';
}

void save_predictions(const std::vector<Document>& docs,
                      const std::vector<std::vector<PredictedSpan>>& predictions,
                      bool labeled, const std::string& path) {
  if (docs.size() != predictions.size()) {
    throw ContractError("save_predictions: " + std::to_string(docs.size()) +
                        " documents vs " + std::to_string(predictions.size()) +
                        " prediction lists");
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write predictions file: " + path);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    ordered_json rec;
    rec["doc_key"] = docs[i].doc_key;
    rec["sentences"] = docs[i].sentences;
    std::vector<PredictedSpan> spans = predictions[i];
    std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
      return std::tie(a.start, a.end, a.label) < std::tie(b.start, b.end, b.label);
    });
    if (labeled) {
      rec["mentions"] = json::array();
      rec["ner"] = json::array();
      for (const PredictedSpan& s : spans) {
        rec["ner"].push_back({s.start, s.end, s.label, s.probability});
      }
    } else {
      rec["mentions"] = json::array();
      for (const PredictedSpan& s : spans) {
        rec["mentions"].push_back({s.start, s.end, s.probability});
      }
      rec["ner"] = json::array();
    }
    out << rec.dump() << '\n';
  }
}

}  // namespace mdet
