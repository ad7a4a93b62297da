// Attachment scoring (UAS/LAS) and the per-relation precision/recall/DLA
// report.  DLA is the mean absolute head-dependent distance of a relation's
// gold arcs; arcs to node 0 contribute the dependent's position.
#pragma once

#include <string>
#include <vector>

#include "stagdep/conllx.hpp"

namespace stagdep {

struct RelationRow {
  std::string relation;
  long gold_count = 0;
  long pred_count = 0;
  long correct = 0;  // head and label both match, gold deprel = relation
  double precision = 0.0;
  double recall = 0.0;
  double dla = 0.0;
};

struct EvalReport {
  double uas = 0.0;
  double las = 0.0;
  long token_count = 0;  // tokens scored, after any punctuation exclusion
  std::vector<RelationRow> per_relation;  // descending gold_count, ties lexicographic
  bool punctuation_excluded = false;
  std::string punct_label = "PUNCT";
};

struct EvalOptions {
  bool exclude_punct = false;  // drop tokens whose gold deprel is punct_label
  std::string punct_label = "PUNCT";
};

// Corpora must align sentence-by-sentence and token-by-token (same forms).
EvalReport evaluate(const std::vector<Sentence>& gold, const std::vector<Sentence>& pred,
                    const EvalOptions& opts = {});

std::pair<double, double> attachment_scores(const std::vector<Sentence>& gold,
                                            const std::vector<Sentence>& pred,
                                            bool exclude_punct,
                                            const std::string& punct_label = "PUNCT");

std::vector<RelationRow> per_relation_report(const std::vector<Sentence>& gold,
                                             const std::vector<Sentence>& pred);

std::string render_eval_text(const EvalReport& report);
// Machine-readable lines: "relation<TAB>dla<TAB>precision<TAB>recall".
std::string render_eval_tsv(const EvalReport& report);

}  // namespace stagdep
