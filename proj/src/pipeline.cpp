#include "stagdep/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace stagdep {

namespace {

std::vector<char> legality_mask(const ParserConfig& c, const std::vector<Transition>& classes) {
  std::vector<char> mask(classes.size(), 0);
  bool shift_ok = legal(c, Transition::shift());
  bool reduce_ok = legal(c, Transition::reduce());
  bool left_ok = legal(c, Transition::left_arc("?"));
  bool right_ok = legal(c, Transition::right_arc("?"));
  for (size_t i = 0; i < classes.size(); ++i) {
    switch (classes[i].kind) {
      case TransitionKind::Shift: mask[i] = shift_ok; break;
      case TransitionKind::Reduce: mask[i] = reduce_ok; break;
      case TransitionKind::LeftArc: mask[i] = left_ok; break;
      case TransitionKind::RightArc: mask[i] = right_ok; break;
    }
  }
  return mask;
}

}  // namespace

TrainingData make_training_instances(const std::vector<Sentence>& corpus,
                                     const FeatureTemplateSet& templates, StagSource source) {
  TrainingData data;

  // First pass: oracle sequences, transition frequencies, root labels.
  std::vector<std::vector<Transition>> sequences(corpus.size());
  std::map<std::string, long> transition_counts;
  std::map<std::string, long> root_labels;
  std::vector<bool> usable(corpus.size(), false);
  for (size_t si = 0; si < corpus.size(); ++si) {
    const Sentence& s = corpus[si];
    if (!is_valid_tree(s)) {
      throw DataError("training sentence " + std::to_string(si + 1) +
                      " is not a valid dependency tree");
    }
    if (!is_projective(s)) {
      ++data.skipped_nonprojective;
      continue;
    }
    usable[si] = true;
    sequences[si] = oracle_sequence(s);
    for (const Transition& t : sequences[si]) ++transition_counts[t.to_string()];
    for (const Token& tok : s.tokens) {
      if (tok.head == 0) ++root_labels[tok.deprel];
    }
  }

  std::vector<std::pair<std::string, long>> by_freq(transition_counts.begin(),
                                                    transition_counts.end());
  std::sort(by_freq.begin(), by_freq.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (const auto& [name, count] : by_freq) data.classes.push_back(name);

  long best_root = 0;
  for (const auto& [label, count] : root_labels) {
    if (count > best_root) {
      best_root = count;
      data.root_label = label;
    }
  }

  std::vector<Transition> class_transitions;
  std::map<std::string, int> class_ids;
  for (size_t i = 0; i < data.classes.size(); ++i) {
    class_transitions.push_back(Transition::from_string(data.classes[i]));
    class_ids[data.classes[i]] = static_cast<int>(i);
  }

  // Second pass: replay and emit one instance per configuration.
  for (size_t si = 0; si < corpus.size(); ++si) {
    if (!usable[si]) continue;
    const Sentence& s = corpus[si];
    ParserConfig c = ParserConfig::initial(s.size());
    for (const Transition& t : sequences[si]) {
      Instance inst;
      inst.features = extract_features(c, s, templates, source);
      inst.gold = class_ids.at(t.to_string());
      inst.legal = legality_mask(c, class_transitions);
      data.instances.push_back(std::move(inst));
      c = apply(c, t);
    }
  }
  return data;
}

ParserModel train_parser(const std::vector<Sentence>& corpus, const FeatureTemplateSet& templates,
                         const LearnerConfig& config, StagSource source) {
  if (corpus.empty()) throw DataError("train_parser: empty corpus");
  TrainingData data = make_training_instances(corpus, templates, source);
  if (data.instances.empty()) {
    throw DataError("train_parser: no projective training sentences");
  }

  ParserModel model;
  model.core = train_classifier(data.classes, data.instances, config);
  model.templates = templates;
  model.root_label = data.root_label;
  model.skipped_nonprojective = data.skipped_nonprojective;
  model.core.meta["template_set"] = templates.name;
  model.core.meta["templates"] = templates_to_spec(templates);
  model.core.meta["root_label"] = data.root_label;
  model.core.meta["skipped_nonprojective"] = std::to_string(data.skipped_nonprojective);
  return model;
}

Sentence parse(const ParserModel& model, const Sentence& sentence, StagSource source) {
  if (sentence.empty()) throw DataError("parse: empty sentence");

  std::vector<Transition> class_transitions;
  for (const std::string& name : model.core.classes) {
    class_transitions.push_back(Transition::from_string(name));
  }

  ParserConfig c = ParserConfig::initial(sentence.size());
  while (!c.buffer_empty()) {
    std::vector<std::string> features = extract_features(c, sentence, model.templates, source);
    std::vector<char> mask = legality_mask(c, class_transitions);
    int cls = model.core.predict(features, mask);
    c = apply(c, class_transitions[static_cast<size_t>(cls)]);
  }

  Sentence out = sentence;
  for (Token& tok : out.tokens) {
    if (c.has_head(tok.id)) {
      tok.head = c.head_of(tok.id);
      tok.deprel = c.label_of(tok.id);
    } else {
      tok.head = 0;
      tok.deprel = model.root_label;
    }
  }
  return out;
}

std::vector<Sentence> parse_corpus(const ParserModel& model, const std::vector<Sentence>& corpus,
                                   StagSource source) {
  std::vector<Sentence> out;
  out.reserve(corpus.size());
  for (const Sentence& s : corpus) out.push_back(parse(model, s, source));
  return out;
}

void save_parser_file(const ParserModel& model, const std::string& path) {
  save_model_file(model.core, path);
}

ParserModel load_parser_file(const std::string& path) {
  ParserModel model;
  model.core = load_model_file(path);
  if (model.core.kind != "classifier") {
    throw DataError(path + ": not a parser model (kind '" + model.core.kind + "')");
  }
  auto it = model.core.meta.find("templates");
  if (it == model.core.meta.end()) throw DataError(path + ": missing templates meta entry");
  std::string name = "custom";
  if (auto nit = model.core.meta.find("template_set"); nit != model.core.meta.end()) {
    name = nit->second;
  }
  model.templates = templates_from_spec(name, it->second);
  if (auto rit = model.core.meta.find("root_label"); rit != model.core.meta.end()) {
    model.root_label = rit->second;
  }
  if (auto sit = model.core.meta.find("skipped_nonprojective"); sit != model.core.meta.end()) {
    model.skipped_nonprojective = std::atol(sit->second.c_str());
  }
  return model;
}

}  // namespace stagdep
