#include "stagdep/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace stagdep {

namespace {

void check_alignment(const std::vector<Sentence>& gold, const std::vector<Sentence>& pred) {
  if (gold.size() != pred.size()) {
    throw DataError("evaluate: corpora have " + std::to_string(gold.size()) + " vs " +
                    std::to_string(pred.size()) + " sentences");
  }
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != pred[i].size()) {
      throw DataError("evaluate: sentence " + std::to_string(i + 1) + " has " +
                      std::to_string(gold[i].size()) + " gold vs " +
                      std::to_string(pred[i].size()) + " predicted tokens");
    }
    for (int j = 1; j <= gold[i].size(); ++j) {
      if (gold[i].token(j).form != pred[i].token(j).form) {
        throw DataError("evaluate: form mismatch at sentence " + std::to_string(i + 1) +
                        " token " + std::to_string(j));
      }
    }
  }
}

struct RelationAccum {
  long gold_count = 0;
  long pred_count = 0;
  long correct = 0;
  long dla_sum = 0;  // sum of |head - id| over gold arcs
};

}  // namespace

EvalReport evaluate(const std::vector<Sentence>& gold, const std::vector<Sentence>& pred,
                    const EvalOptions& opts) {
  check_alignment(gold, pred);

  EvalReport report;
  report.punctuation_excluded = opts.exclude_punct;
  report.punct_label = opts.punct_label;

  long head_hits = 0;
  long both_hits = 0;
  std::map<std::string, RelationAccum> relations;

  for (size_t i = 0; i < gold.size(); ++i) {
    for (int j = 1; j <= gold[i].size(); ++j) {
      const Token& g = gold[i].token(j);
      const Token& p = pred[i].token(j);
      if (opts.exclude_punct && g.deprel == opts.punct_label) continue;
      ++report.token_count;
      bool head_ok = g.head == p.head;
      bool label_ok = g.deprel == p.deprel;
      if (head_ok) ++head_hits;
      if (head_ok && label_ok) ++both_hits;

      RelationAccum& gr = relations[g.deprel];
      ++gr.gold_count;
      gr.dla_sum += g.head > g.id ? g.head - g.id : g.id - g.head;
      if (head_ok && label_ok) ++gr.correct;
      ++relations[p.deprel].pred_count;
    }
  }

  if (report.token_count > 0) {
    report.uas = static_cast<double>(head_hits) / static_cast<double>(report.token_count);
    report.las = static_cast<double>(both_hits) / static_cast<double>(report.token_count);
  }

  for (const auto& [rel, acc] : relations) {
    RelationRow row;
    row.relation = rel;
    row.gold_count = acc.gold_count;
    row.pred_count = acc.pred_count;
    row.correct = acc.correct;
    row.precision = acc.pred_count > 0
                        ? static_cast<double>(acc.correct) / static_cast<double>(acc.pred_count)
                        : 0.0;
    row.recall = acc.gold_count > 0
                     ? static_cast<double>(acc.correct) / static_cast<double>(acc.gold_count)
                     : 0.0;
    row.dla = acc.gold_count > 0
                  ? static_cast<double>(acc.dla_sum) / static_cast<double>(acc.gold_count)
                  : 0.0;
    report.per_relation.push_back(std::move(row));
  }
  std::sort(report.per_relation.begin(), report.per_relation.end(),
            [](const RelationRow& a, const RelationRow& b) {
              if (a.gold_count != b.gold_count) return a.gold_count > b.gold_count;
              return a.relation < b.relation;
            });
  return report;
}

std::pair<double, double> attachment_scores(const std::vector<Sentence>& gold,
                                            const std::vector<Sentence>& pred, bool exclude_punct,
                                            const std::string& punct_label) {
  EvalOptions opts;
  opts.exclude_punct = exclude_punct;
  opts.punct_label = punct_label;
  EvalReport report = evaluate(gold, pred, opts);
  return {report.uas, report.las};
}

std::vector<RelationRow> per_relation_report(const std::vector<Sentence>& gold,
                                             const std::vector<Sentence>& pred) {
  return evaluate(gold, pred).per_relation;
}

std::string render_eval_text(const EvalReport& report) {
  std::ostringstream out;
  char buf[128];
  out << "tokens: " << report.token_count;
  if (report.punctuation_excluded) {
    out << " (gold " << report.punct_label << " excluded)";
  }
  out << '\n';
  std::snprintf(buf, sizeof(buf), "UAS: %s\nLAS: %s\n", format_pct(report.uas).c_str(),
                format_pct(report.las).c_str());
  out << buf;
  out << '\n';
  std::snprintf(buf, sizeof(buf), "%-12s %8s %10s %10s %8s %8s\n", "DR", "DLA", "Precision",
                "Recall", "gold", "pred");
  out << buf;
  for (const RelationRow& row : report.per_relation) {
    std::snprintf(buf, sizeof(buf), "%-12s %8.2f %10s %10s %8ld %8ld\n", row.relation.c_str(),
                  row.dla, format_pct(row.precision).c_str(), format_pct(row.recall).c_str(),
                  row.gold_count, row.pred_count);
    out << buf;
  }
  return out.str();
}

std::string render_eval_tsv(const EvalReport& report) {
  std::ostringstream out;
  char buf[128];
  for (const RelationRow& row : report.per_relation) {
    std::snprintf(buf, sizeof(buf), "%s\t%.2f\t%s\t%s\n", row.relation.c_str(), row.dla,
                  format_pct(row.precision).c_str(), format_pct(row.recall).c_str());
    out << buf;
  }
  return out.str();
}

}  // namespace stagdep
