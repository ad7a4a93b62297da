// Parser training and inference: oracle-derived training instances,
// transition classifier training, greedy parsing with terminal cleanup.
#pragma once

#include <string>
#include <vector>

#include "stagdep/feature_model.hpp"
#include "stagdep/linear_model.hpp"
#include "stagdep/transition.hpp"

namespace stagdep {

struct ParserModel {
  LinearModel core;  // classes = transition signatures, most frequent first
  FeatureTemplateSet templates;
  std::string root_label = "ROOT";  // terminal-cleanup label
  long skipped_nonprojective = 0;   // training-time skips
};

struct TrainingData {
  std::vector<std::string> classes;  // transition inventory
  std::vector<Instance> instances;
  long skipped_nonprojective = 0;
  std::string root_label = "ROOT";  // most frequent label on arcs to node 0
};

// Replays the static oracle over every projective sentence and emits one
// (features, gold transition, legality mask) instance per configuration.
// Non-projective sentences are skipped and counted.
TrainingData make_training_instances(const std::vector<Sentence>& corpus,
                                     const FeatureTemplateSet& templates,
                                     StagSource source = StagSource::Gold);

ParserModel train_parser(const std::vector<Sentence>& corpus, const FeatureTemplateSet& templates,
                         const LearnerConfig& config, StagSource source = StagSource::Gold);

// Greedy decoding; headless tokens are attached to node 0 afterwards, so
// the output is always a valid projective tree.
Sentence parse(const ParserModel& model, const Sentence& sentence,
               StagSource source = StagSource::Gold);
std::vector<Sentence> parse_corpus(const ParserModel& model, const std::vector<Sentence>& corpus,
                                   StagSource source = StagSource::Gold);

void save_parser_file(const ParserModel& model, const std::string& path);
ParserModel load_parser_file(const std::string& path);

}  // namespace stagdep
