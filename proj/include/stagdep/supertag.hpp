// Supertag extraction from gold dependency trees.
//
// Three tag designs of increasing granularity:
//   M0  DEPREL plus head direction for the directional relations
//       (e.g. SUB/R), bare DEPREL otherwise.
//   M1  M0 plus which sides the token has dependents on (+L, +R, +L_R).
//   M2  M1, except verbs list their obligatory dependents explicitly
//       (e.g. ROOT+SUB/L_DOB/R).
#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stagdep/conllx.hpp"

namespace stagdep {

enum class SupertagModel { M0, M1, M2 };

std::string to_string(SupertagModel model);
SupertagModel supertag_model_from_string(const std::string& name);

struct SupertagPolicy {
  // Relations whose tag carries the head direction (/L or /R).
  std::set<std::string> directional_labels = {"NMOD", "VMOD", "SUB",  "DOB", "ROOT",
                                              "AMOD", "COORD", "CONJ", "IOB"};
  // Relations marking obligatory dependents of a verb (M2).
  std::set<std::string> obligatory_labels = {"SUB", "DOB", "PRD", "IOB"};
  // POS prefixes identifying verbs (M2).
  std::vector<std::string> verb_pos_prefixes = {"V"};
  // When true, ROOT is rendered ROOT/L like any directional label.
  bool root_is_directional = false;

  bool is_directional(const std::string& deprel) const {
    return directional_labels.count(deprel) > 0;
  }
  bool is_obligatory(const std::string& deprel) const {
    return obligatory_labels.count(deprel) > 0;
  }
  bool is_verb(const std::string& pos) const;
};

// Flat "key = value" file; keys: directional_labels, obligatory_labels,
// verb_pos_prefixes (comma-separated), root_is_directional (true/false).
SupertagPolicy load_policy_file(const std::string& path);

struct SupertagVocab {
  SupertagModel model = SupertagModel::M0;
  // Descending frequency, ties lexicographic.
  std::vector<std::pair<std::string, long>> tags;

  size_t size() const { return tags.size(); }
  bool contains(const std::string& tag) const;
};

// Head part of the tag: "SUB/R", "DET", "ROOT", ...  Token must have a head.
std::string head_direction_part(const Token& token, const SupertagPolicy& policy);

// One tag per token.  The sentence must be a valid gold tree.
std::vector<std::string> extract_supertags(const Sentence& s, SupertagModel model,
                                           const SupertagPolicy& policy);

SupertagVocab build_vocabulary(const std::vector<Sentence>& corpus, SupertagModel model,
                               const SupertagPolicy& policy);

// Fills gold_supertag on every token; nothing else changes.
void annotate_corpus(std::vector<Sentence>& corpus, SupertagModel model,
                     const SupertagPolicy& policy);

// One "tag<TAB>count" line per tag, in vocabulary order.
void write_vocab(const SupertagVocab& vocab, std::ostream& out);

}  // namespace stagdep
