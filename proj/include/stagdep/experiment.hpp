// k-fold cross-validation over the supertag experiment matrix:
// baseline vs. supertag-augmented parsers under gold and automatically
// predicted supertags, plus per-fold supertagging accuracy.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stagdep/conllx.hpp"
#include "stagdep/eval.hpp"
#include "stagdep/linear_model.hpp"
#include "stagdep/supertag.hpp"
#include "stagdep/tagger.hpp"

namespace stagdep {

struct ExperimentSpec {
  std::string corpus_path;
  int k = 5;
  uint64_t seed = 1;
  // Systems to run; "baseline" plus any of "M0", "M1", "M2".
  std::vector<std::string> models = {"baseline", "M0", "M1", "M2"};
  // Supertag provenance at parse time: "gold", "automatic".
  std::vector<std::string> conditions = {"gold", "automatic"};
  SupertagPolicy policy;
  TaggerConfig tagger;
  LearnerConfig learner;
  EvalOptions eval;
  std::string out_dir;  // empty = no artifact persistence
};

// Flat "key = value" file; see README for the key list.
ExperimentSpec load_spec_file(const std::string& path);

struct FoldSeries {
  std::vector<double> per_fold;
  double mean() const;
};

struct ExperimentReport {
  int k = 0;
  std::vector<std::string> models;      // as run, baseline first
  std::vector<std::string> conditions;  // gold before automatic
  // Supertagging accuracy per supertag model.
  std::map<std::string, FoldSeries> tagging;
  // Attachment scores keyed "model|condition".
  std::map<std::string, FoldSeries> uas;
  std::map<std::string, FoldSeries> las;
  std::vector<long> skipped_nonprojective;  // per fold, training-side

  bool has_model(const std::string& m) const;
  static std::string score_key(const std::string& model, const std::string& condition);
};

struct FoldIndices {
  std::vector<size_t> train;
  std::vector<size_t> test;
};

// Seeded shuffle, then k near-equal contiguous blocks (sizes differ by <= 1);
// fold i tests block i and trains on the rest.
std::vector<FoldIndices> k_fold_indices(size_t corpus_size, int k, uint64_t seed);
std::vector<std::pair<std::vector<Sentence>, std::vector<Sentence>>> k_fold_split(
    const std::vector<Sentence>& corpus, int k, uint64_t seed);

ExperimentReport run_experiment(const ExperimentSpec& spec);
// Same, with the corpus already in memory (corpus_path ignored).
ExperimentReport run_experiment_on(const ExperimentSpec& spec,
                                   const std::vector<Sentence>& corpus);

std::string render_report_text(const ExperimentReport& report);
std::string render_report_tsv(const ExperimentReport& report);

}  // namespace stagdep
