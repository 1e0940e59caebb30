#include "mdet/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mdet {

namespace {

void finalize(MetricsReport& r) {
  if (r.gold == 0 && r.predicted == 0) {
    r.recall = r.precision = r.f1 = 1.0;
    r.empty_sets_warning = true;
    return;
  }
  r.recall = r.gold == 0 ? 1.0 : double(r.correct) / double(r.gold);
  r.precision = r.predicted == 0 ? 0.0 : double(r.correct) / double(r.predicted);
  r.f1 = (r.precision + r.recall) > 0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  if (r.gold == 0) r.empty_sets_warning = true;
}

void finalize_row(CategoryRow& r) {
  r.recall = r.gold == 0 ? 1.0 : double(r.correct) / double(r.gold);
  r.precision = r.predicted == 0 ? 0.0 : double(r.correct) / double(r.predicted);
  r.f1 = (r.precision + r.recall) > 0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
}

}  // namespace

std::string MetricsReport::summary() const {
  std::ostringstream os;
  os << "gold=" << gold << " predicted=" << predicted << " correct=" << correct
     << " R=" << recall << " P=" << precision << " F1=" << f1;
  if (oracle_unreachable > 0) os << " oracle-unreachable=" << oracle_unreachable;
  if (empty_sets_warning) os << " (empty-set convention applied)";
  return os.str();
}

MetricsReport score_mention_spans(const std::vector<Span>& predicted,
                                  const std::vector<Span>& gold) {
  MetricsReport r;
  std::set<Span> gold_set(gold.begin(), gold.end());
  std::set<Span> pred_set(predicted.begin(), predicted.end());
  r.gold = gold_set.size();
  r.predicted = pred_set.size();
  for (const Span& p : pred_set) r.correct += gold_set.count(p);
  finalize(r);
  return r;
}

MetricsReport score_ner_spans(const std::vector<LabeledSpan>& predicted,
                              const std::vector<LabeledSpan>& gold) {
  MetricsReport r;
  std::set<LabeledSpan> gold_set(gold.begin(), gold.end());
  std::set<LabeledSpan> pred_set(predicted.begin(), predicted.end());
  r.gold = gold_set.size();
  r.predicted = pred_set.size();
  for (const LabeledSpan& p : pred_set) r.correct += gold_set.count(p);

  std::map<std::string, CategoryRow> rows;
  for (const LabeledSpan& g : gold_set) {
    rows[g.label].label = g.label;
    rows[g.label].gold += 1;
  }
  for (const LabeledSpan& p : pred_set) {
    rows[p.label].label = p.label;
    rows[p.label].predicted += 1;
    if (gold_set.count(p)) rows[p.label].correct += 1;
  }
  for (auto& [label, row] : rows) {
    finalize_row(row);
    r.per_category.push_back(row);
  }
  finalize(r);
  return r;
}

namespace {

template <typename SpanT>
MetricsReport score_corpus(const std::vector<Document>& gold,
                           const std::vector<Document>& predicted,
                           std::vector<SpanT> Document::* field, bool labeled) {
  std::map<std::string, const Document*> by_key;
  for (const Document& d : predicted) by_key[d.doc_key] = &d;
  if (by_key.size() != gold.size()) {
    throw ContractError("evaluation: " + std::to_string(gold.size()) +
                        " gold documents vs " + std::to_string(by_key.size()) +
                        " predicted");
  }
  MetricsReport total;
  std::map<std::string, CategoryRow> rows;
  for (const Document& g : gold) {
    auto it = by_key.find(g.doc_key);
    if (it == by_key.end()) {
      throw ContractError("evaluation: no predictions for doc_key '" + g.doc_key + "'");
    }
    std::set<SpanT> gold_set((g.*field).begin(), (g.*field).end());
    std::set<SpanT> pred_set((it->second->*field).begin(), (it->second->*field).end());
    total.gold += gold_set.size();
    total.predicted += pred_set.size();
    for (const SpanT& p : pred_set) total.correct += gold_set.count(p);
    if (labeled) {
      if constexpr (std::is_same_v<SpanT, LabeledSpan>) {
        for (const SpanT& gs : gold_set) {
          rows[gs.label].label = gs.label;
          rows[gs.label].gold += 1;
        }
        for (const SpanT& p : pred_set) {
          rows[p.label].label = p.label;
          rows[p.label].predicted += 1;
          if (gold_set.count(p)) rows[p.label].correct += 1;
        }
      }
    }
  }
  for (auto& [label, row] : rows) {
    finalize_row(row);
    total.per_category.push_back(row);
  }
  finalize(total);
  return total;
}

}  // namespace

MetricsReport score_mentions(const std::vector<Document>& gold,
                             const std::vector<Document>& predicted) {
  return score_corpus(gold, predicted, &Document::mentions, false);
}

MetricsReport score_ner(const std::vector<Document>& gold,
                        const std::vector<Document>& predicted) {
  return score_corpus(gold, predicted, &Document::ner, true);
}

}  // namespace mdet
