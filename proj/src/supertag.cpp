#include "stagdep/supertag.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>

namespace stagdep {

std::string to_string(SupertagModel model) {
  switch (model) {
    case SupertagModel::M0: return "M0";
    case SupertagModel::M1: return "M1";
    case SupertagModel::M2: return "M2";
  }
  return "M0";
}

SupertagModel supertag_model_from_string(const std::string& name) {
  if (name == "M0" || name == "0") return SupertagModel::M0;
  if (name == "M1" || name == "1") return SupertagModel::M1;
  if (name == "M2" || name == "2") return SupertagModel::M2;
  throw DataError("unknown supertag model '" + name + "' (expected M0, M1 or M2)");
}

bool SupertagPolicy::is_verb(const std::string& pos) const {
  for (const std::string& prefix : verb_pos_prefixes) {
    if (starts_with(pos, prefix)) return true;
  }
  return false;
}

namespace {

std::set<std::string> parse_label_set(const std::string& value, const std::string& key) {
  std::set<std::string> out;
  for (const std::string& part : split(value, ',')) {
    std::string label(trim(part));
    if (!label.empty()) out.insert(label);
  }
  if (out.empty()) throw DataError("policy: " + key + " must be non-empty");
  return out;
}

}  // namespace

SupertagPolicy load_policy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open policy file " + path);
  SupertagPolicy policy;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv[0] == '#') continue;
    size_t eq = sv.find('=');
    if (eq == std::string_view::npos) {
      throw DataError(path + " line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(trim(sv.substr(0, eq)));
    std::string value(trim(sv.substr(eq + 1)));
    if (key == "directional_labels") {
      policy.directional_labels = parse_label_set(value, key);
    } else if (key == "obligatory_labels") {
      policy.obligatory_labels = parse_label_set(value, key);
    } else if (key == "verb_pos_prefixes") {
      policy.verb_pos_prefixes.clear();
      for (const std::string& part : split(value, ',')) {
        std::string p(trim(part));
        if (!p.empty()) policy.verb_pos_prefixes.push_back(p);
      }
      if (policy.verb_pos_prefixes.empty()) {
        throw DataError("policy: verb_pos_prefixes must be non-empty");
      }
    } else if (key == "root_is_directional") {
      if (value == "true" || value == "1") {
        policy.root_is_directional = true;
      } else if (value == "false" || value == "0") {
        policy.root_is_directional = false;
      } else {
        throw DataError("policy: root_is_directional must be true or false");
      }
    } else {
      throw DataError(path + " line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return policy;
}

bool SupertagVocab::contains(const std::string& tag) const {
  for (const auto& [t, c] : tags) {
    if (t == tag) return true;
  }
  return false;
}

std::string head_direction_part(const Token& token, const SupertagPolicy& policy) {
  if (!token.has_head()) {
    throw DataError("head_direction_part: token '" + token.form + "' has no head");
  }
  if (!policy.is_directional(token.deprel)) return token.deprel;
  if (token.deprel == "ROOT" && !policy.root_is_directional) return "ROOT";
  return token.deprel + (token.head < token.id ? "/L" : "/R");
}

namespace {

// "+L", "+R" or "+L_R" depending on which sides have dependents.
std::string side_suffix(const Dependents& deps) {
  if (!deps.left.empty() && !deps.right.empty()) return "+L_R";
  if (!deps.left.empty()) return "+L";
  return "+R";
}

std::string obligatory_suffix(const Sentence& s, const Token& verb, const Dependents& deps,
                              const SupertagPolicy& policy) {
  std::vector<std::string> parts;
  auto add = [&](int dep_id) {
    const Token& dep = s.token(dep_id);
    if (!policy.is_obligatory(dep.deprel)) return;
    parts.push_back(dep.deprel + (dep_id < verb.id ? "/L" : "/R"));
  };
  for (int id : deps.left) add(id);
  for (int id : deps.right) add(id);
  if (parts.empty()) return "";
  return "+" + join(parts, "_");
}

}  // namespace

std::vector<std::string> extract_supertags(const Sentence& s, SupertagModel model,
                                           const SupertagPolicy& policy) {
  if (!is_valid_tree(s)) throw DataError("extract_supertags: not a valid dependency tree");
  std::vector<std::string> tags;
  tags.reserve(s.tokens.size());
  for (const Token& t : s.tokens) {
    std::string head_part = head_direction_part(t, policy);
    if (model == SupertagModel::M0) {
      tags.push_back(std::move(head_part));
      continue;
    }
    Dependents deps = dependents(s, t.id);
    bool has_deps = !deps.left.empty() || !deps.right.empty();
    std::string m1 = head_part;
    if (policy.is_directional(t.deprel) && has_deps) m1 += side_suffix(deps);
    if (model == SupertagModel::M1) {
      tags.push_back(std::move(m1));
      continue;
    }
    // M2: verbs list their obligatory dependents; anything without them
    // falls back to the M1 tag.
    if (policy.is_verb(t.pos)) {
      std::string oblig = obligatory_suffix(s, t, deps, policy);
      if (!oblig.empty()) {
        tags.push_back(head_part + oblig);
        continue;
      }
    }
    tags.push_back(std::move(m1));
  }
  return tags;
}

SupertagVocab build_vocabulary(const std::vector<Sentence>& corpus, SupertagModel model,
                               const SupertagPolicy& policy) {
  if (corpus.empty()) throw DataError("build_vocabulary: empty corpus");
  std::map<std::string, long> counts;
  for (const Sentence& s : corpus) {
    for (std::string& tag : extract_supertags(s, model, policy)) {
      ++counts[std::move(tag)];
    }
  }
  SupertagVocab vocab;
  vocab.model = model;
  vocab.tags.assign(counts.begin(), counts.end());
  std::sort(vocab.tags.begin(), vocab.tags.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return vocab;
}

void annotate_corpus(std::vector<Sentence>& corpus, SupertagModel model,
                     const SupertagPolicy& policy) {
  for (Sentence& s : corpus) {
    std::vector<std::string> tags = extract_supertags(s, model, policy);
    for (size_t i = 0; i < s.tokens.size(); ++i) {
      s.tokens[i].gold_supertag = std::move(tags[i]);
    }
  }
}

void write_vocab(const SupertagVocab& vocab, std::ostream& out) {
  for (const auto& [tag, count] : vocab.tags) {
    out << tag << '\t' << count << '\n';
  }
}

}  // namespace stagdep
