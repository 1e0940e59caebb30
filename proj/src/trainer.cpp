#include "mdet/trainer.hpp"

#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>

#include <json.hpp>

#include "mdet/adam.hpp"

namespace mdet {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<PredictedSpan> predict_document(Model& model, const Document& doc,
                                            const OperatingMode& mode,
                                            std::size_t* unreachable) {
  if (doc.token_count() == 0) return {};
  Tape tape;
  tape.set_enabled(false);
  Rng no_dropout(0);
  DocScores scores = model.score_document(tape, doc, false, no_dropout);
  if (unreachable) *unreachable += model.label_for(scores, doc).unreachable;

  std::vector<PredictedSpan> out;
  if (model.config().task == Task::md) {
    std::vector<std::size_t> picked =
        mode.kind == OperatingMode::Kind::high_recall
            ? select_high_recall(scores.mention_probs, mode.lambda, doc.token_count())
            : select_high_f1(scores.mention_probs, mode.beta);
    for (std::size_t i : picked) {
      out.push_back(PredictedSpan{scores.candidates[i].span.start,
                                  scores.candidates[i].span.end, "",
                                  scores.mention_probs[i]});
    }
  } else {
    LabeledSelection sel = select_ner(scores.class_probs, mode, doc.token_count());
    for (std::size_t k = 0; k < sel.index.size(); ++k) {
      const SpanCandidate& c = scores.candidates[sel.index[k]];
      out.push_back(PredictedSpan{c.span.start, c.span.end,
                                  model.config().labels[sel.label[k] - 1],
                                  sel.probability[k]});
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<PredictedSpan>> predict_corpus(Model& model,
                                                       const std::vector<Document>& docs,
                                                       const OperatingMode& mode) {
  std::vector<std::vector<PredictedSpan>> out;
  out.reserve(docs.size());
  for (const Document& doc : docs) {
    out.push_back(predict_document(model, doc, mode, nullptr));
  }
  return out;
}

MetricsReport evaluate_model(Model& model, const std::vector<Document>& docs,
                             const OperatingMode& mode) {
  MetricsReport total;
  std::size_t unreachable = 0;
  std::map<std::string, CategoryRow> rows;
  for (const Document& doc : docs) {
    std::vector<PredictedSpan> predicted = predict_document(model, doc, mode, &unreachable);
    if (model.config().task == Task::md) {
      std::vector<Span> spans;
      spans.reserve(predicted.size());
      for (const PredictedSpan& p : predicted) spans.push_back(Span{p.start, p.end});
      MetricsReport r = score_mention_spans(spans, doc.mentions);
      total.gold += r.gold;
      total.predicted += r.predicted;
      total.correct += r.correct;
    } else {
      std::vector<LabeledSpan> spans;
      spans.reserve(predicted.size());
      for (const PredictedSpan& p : predicted)
        spans.push_back(LabeledSpan{p.start, p.end, p.label});
      MetricsReport r = score_ner_spans(spans, doc.ner);
      total.gold += r.gold;
      total.predicted += r.predicted;
      total.correct += r.correct;
      for (const CategoryRow& row : r.per_category) {
        rows[row.label].label = row.label;
        rows[row.label].gold += row.gold;
        rows[row.label].predicted += row.predicted;
        rows[row.label].correct += row.correct;
      }
    }
  }
  for (auto& [label, row] : rows) {
    row.recall = row.gold ? double(row.correct) / double(row.gold) : 1.0;
    row.precision = row.predicted ? double(row.correct) / double(row.predicted) : 0.0;
    row.f1 = (row.precision + row.recall) > 0
                 ? 2 * row.precision * row.recall / (row.precision + row.recall)
                 : 0.0;
    total.per_category.push_back(row);
  }
  total.oracle_unreachable = unreachable;
  if (total.gold == 0 && total.predicted == 0) {
    total.recall = total.precision = total.f1 = 1.0;
    total.empty_sets_warning = true;
  } else {
    total.recall = total.gold ? double(total.correct) / double(total.gold) : 1.0;
    total.precision = total.predicted ? double(total.correct) / double(total.predicted) : 0.0;
    total.f1 = (total.precision + total.recall) > 0
                   ? 2 * total.precision * total.recall / (total.precision + total.recall)
                   : 0.0;
    if (total.gold == 0) total.empty_sets_warning = true;
  }
  return total;
}

TrainResult train_model(const RunConfig& config, Model& model,
                        const std::vector<Document>& train_docs,
                        const std::vector<Document>& dev_docs,
                        std::ostream* metrics_log) {
  config.validate();
  if (train_docs.empty()) throw ContractError("training needs at least one document");

  AdamConfig adam_config;
  adam_config.learning_rate = Real(config.learning_rate);
  adam_config.beta1 = Real(config.adam_beta1);
  adam_config.beta2 = Real(config.adam_beta2);
  adam_config.epsilon = Real(config.adam_epsilon);
  Adam optimizer(model.params().tensors(), adam_config);

  Rng shuffle_rng = Rng(model.config().seed).fork(1);
  Rng dropout_rng = Rng(model.config().seed).fork(2);

  std::vector<std::size_t> order(train_docs.size());
  std::iota(order.begin(), order.end(), 0);
  shuffle_rng.shuffle(order);
  std::size_t cursor = 0;

  const bool use_dev = !dev_docs.empty() && !config.no_dev;
  TrainResult result;
  result.has_dev = use_dev;
  double loss_sum = 0;
  std::size_t loss_count = 0;

  auto evaluate_and_log = [&](std::size_t step) {
    if (!use_dev) return;
    MetricsReport report = evaluate_model(model, dev_docs, config.mode);
    if (metrics_log) {
      ordered_json rec;
      rec["step"] = step;
      rec["split"] = "dev";
      rec["loss"] = loss_count ? loss_sum / double(loss_count) : 0.0;
      rec["gold"] = report.gold;
      rec["predicted"] = report.predicted;
      rec["correct"] = report.correct;
      rec["recall"] = report.recall;
      rec["precision"] = report.precision;
      rec["f1"] = report.f1;
      rec["oracle_unreachable"] = report.oracle_unreachable;
      (*metrics_log) << rec.dump() << '\n';
      metrics_log->flush();
    }
    loss_sum = 0;
    loss_count = 0;
    if (report.f1 > result.best_dev_f1) {
      result.best_dev_f1 = report.f1;
      if (!config.out_dir.empty()) {
        save_checkpoint(model, (std::filesystem::path(config.out_dir) / "checkpoint-best").string());
      }
    }
    result.final_dev = report;
  };

  for (std::size_t step = 1; step <= config.training_steps; ++step) {
    std::size_t contributing = 0;
    for (std::size_t b = 0; b < config.batch_size; ++b) {
      const Document& doc = train_docs[order[cursor]];
      if (++cursor == order.size()) {
        shuffle_rng.shuffle(order);
        cursor = 0;
      }
      if (doc.token_count() == 0) {
        std::cerr << "warning: skipping empty document " << doc.doc_key << "\n";
        continue;
      }
      Tape tape;
      DocScores scores = model.score_document(tape, doc, true, dropout_rng);
      GoldLabeling labels = model.label_for(scores, doc);
      Tensor loss = model.loss(tape, scores, labels);
      if (config.batch_size > 1) {
        loss = scale(tape, loss, Real(1) / Real(config.batch_size));
      }
      tape.backward(loss);
      tape.clear();
      loss_sum += double(loss.value()) * (config.batch_size > 1 ? config.batch_size : 1);
      ++loss_count;
      ++contributing;
    }
    if (contributing == 0) continue;
    optimizer.step();
    result.steps = step;
    if (config.eval_interval > 0 && step % config.eval_interval == 0) {
      evaluate_and_log(step);
    }
  }
  if (config.eval_interval == 0 || config.training_steps % config.eval_interval != 0) {
    evaluate_and_log(config.training_steps);
  }
  if (!config.out_dir.empty()) {
    save_checkpoint(model, (std::filesystem::path(config.out_dir) / "checkpoint-final").string());
  }
  return result;
}

}  // namespace mdet
