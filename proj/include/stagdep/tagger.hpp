// Greedy left-to-right sequence tagger (averaged perceptron), used for
// supertagging and plain POS tagging.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stagdep/linear_model.hpp"

namespace stagdep {

struct TaggerConfig {
  int epochs = 10;
  uint64_t seed = 1;
  int window = 2;         // form context radius, <= 5
  int max_affix_len = 3;  // <= 5
  bool use_pos_column = true;
};

struct TaggedToken {
  std::string form;
  std::string pos;
};
using TaggerInput = std::vector<TaggedToken>;

// One training sentence: the observable tokens and their gold tags.
struct TaggerExample {
  TaggerInput tokens;
  std::vector<std::string> tags;
};

struct TaggerModel {
  LinearModel core;     // classes = tag inventory
  TaggerConfig config;  // window/affix/pos settings used at train time

  const std::vector<std::string>& tags() const { return core.classes; }
};

// Feature strings for position i given the tags predicted so far
// (prev_tags[0..i)).  Emits, in order: form window, affixes of form[i],
// previous-tag unigram and bigram, POS window and trigram when
// use_pos_column is set, and a bias feature.
std::vector<std::string> tagger_features(const TaggerInput& tokens, int i,
                                         const std::vector<std::string>& prev_tags,
                                         const TaggerConfig& config);

TaggerModel train_tagger(const std::vector<TaggerExample>& corpus, const TaggerConfig& config);

std::vector<std::string> tag(const TaggerModel& model, const TaggerInput& tokens);

// Fraction of positions where pred matches gold; lengths must agree.
double tag_accuracy(const std::vector<std::string>& pred, const std::vector<std::string>& gold);

void save_tagger_file(const TaggerModel& model, const std::string& path);
TaggerModel load_tagger_file(const std::string& path);

}  // namespace stagdep
