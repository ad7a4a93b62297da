#include "stagdep/tagger.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace stagdep {

namespace {

constexpr const char* kBos = "<S>";
constexpr const char* kEos = "</S>";

void check_config(const TaggerConfig& config) {
  if (config.window < 0 || config.window > 5) throw DataError("tagger: window must be in [0,5]");
  if (config.max_affix_len < 1 || config.max_affix_len > 5) {
    throw DataError("tagger: max_affix_len must be in [1,5]");
  }
  if (config.epochs < 0) throw DataError("tagger: epochs must be >= 0");
}

std::string offset_tag(int off) {
  if (off < 0) return std::to_string(off);
  if (off == 0) return "0";
  return "+" + std::to_string(off);
}

}  // namespace

std::vector<std::string> tagger_features(const TaggerInput& tokens, int i,
                                         const std::vector<std::string>& prev_tags,
                                         const TaggerConfig& config) {
  int n = static_cast<int>(tokens.size());
  auto form_at = [&](int j) -> std::string {
    if (j < 0) return kBos;
    if (j >= n) return kEos;
    return tokens[static_cast<size_t>(j)].form;
  };
  auto pos_at = [&](int j) -> std::string {
    if (j < 0) return kBos;
    if (j >= n) return kEos;
    return tokens[static_cast<size_t>(j)].pos;
  };
  auto tag_at = [&](int j) -> std::string {
    if (j < 0) return kBos;
    return prev_tags[static_cast<size_t>(j)];
  };

  std::vector<std::string> out;
  for (int off = -config.window; off <= config.window; ++off) {
    out.push_back("w" + offset_tag(off) + "=" + form_at(i + off));
  }
  const std::string& form = tokens[static_cast<size_t>(i)].form;
  int chars = utf8_length(form);
  for (int k = 1; k <= std::min(chars, config.max_affix_len); ++k) {
    out.push_back("pre" + std::to_string(k) + "=" + utf8_prefix(form, k));
    out.push_back("suf" + std::to_string(k) + "=" + utf8_suffix(form, k));
  }
  out.push_back("t-1=" + tag_at(i - 1));
  out.push_back("t-2t-1=" + tag_at(i - 2) + "|" + tag_at(i - 1));
  if (config.use_pos_column) {
    out.push_back("p-1=" + pos_at(i - 1));
    out.push_back("p0=" + pos_at(i));
    out.push_back("p+1=" + pos_at(i + 1));
    out.push_back("p-1p0p+1=" + pos_at(i - 1) + "|" + pos_at(i) + "|" + pos_at(i + 1));
  }
  out.push_back("bias");
  return out;
}

TaggerModel train_tagger(const std::vector<TaggerExample>& corpus, const TaggerConfig& config) {
  check_config(config);
  if (corpus.empty()) throw DataError("train_tagger: empty corpus");

  std::map<std::string, long> counts;
  for (const TaggerExample& ex : corpus) {
    if (ex.tags.size() != ex.tokens.size()) {
      throw DataError("train_tagger: token/tag length mismatch");
    }
    for (const std::string& t : ex.tags) {
      if (t.empty()) throw DataError("train_tagger: empty gold tag");
      ++counts[t];
    }
  }
  std::vector<std::pair<std::string, long>> by_freq(counts.begin(), counts.end());
  std::sort(by_freq.begin(), by_freq.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  TaggerModel model;
  model.config = config;
  model.core.kind = "tagger";
  for (const auto& [t, c] : by_freq) model.core.classes.push_back(t);
  std::unordered_map<std::string, int> tag_id;
  for (size_t c = 0; c < model.core.classes.size(); ++c) {
    tag_id[model.core.classes[c]] = static_cast<int>(c);
  }

  AveragedTrainer trainer(model.core.num_classes());
  std::vector<size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(config.seed);

  std::vector<int> feat_ids;
  std::vector<std::string> history;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    for (size_t si : order) {
      const TaggerExample& ex = corpus[si];
      history.clear();
      for (int i = 0; i < static_cast<int>(ex.tokens.size()); ++i) {
        std::vector<std::string> feats = tagger_features(ex.tokens, i, history, config);
        feat_ids.clear();
        for (const std::string& f : feats) feat_ids.push_back(trainer.intern(f));
        int pred = trainer.predict(feat_ids, nullptr);
        int gold = tag_id.at(ex.tags[static_cast<size_t>(i)]);
        if (pred != gold) trainer.update(feat_ids, gold, pred);
        trainer.tick();
        // Decoding continues from the made prediction, as at test time.
        history.push_back(model.core.classes[static_cast<size_t>(pred)]);
      }
    }
  }
  trainer.export_averaged(&model.core);

  model.core.meta["window"] = std::to_string(config.window);
  model.core.meta["max_affix_len"] = std::to_string(config.max_affix_len);
  model.core.meta["use_pos_column"] = config.use_pos_column ? "1" : "0";
  model.core.meta["epochs"] = std::to_string(config.epochs);
  model.core.meta["seed"] = std::to_string(config.seed);
  return model;
}

std::vector<std::string> tag(const TaggerModel& model, const TaggerInput& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (int i = 0; i < static_cast<int>(tokens.size()); ++i) {
    std::vector<std::string> feats = tagger_features(tokens, i, out, model.config);
    int cls = model.core.predict(feats);
    out.push_back(model.core.classes[static_cast<size_t>(cls)]);
  }
  return out;
}

double tag_accuracy(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
  if (pred.size() != gold.size()) {
    throw DataError("tag_accuracy: length mismatch (" + std::to_string(pred.size()) + " vs " +
                    std::to_string(gold.size()) + ")");
  }
  if (gold.empty()) return 0.0;
  long hits = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (pred[i] == gold[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

void save_tagger_file(const TaggerModel& model, const std::string& path) {
  save_model_file(model.core, path);
}

TaggerModel load_tagger_file(const std::string& path) {
  TaggerModel model;
  model.core = load_model_file(path);
  if (model.core.kind != "tagger") {
    throw DataError(path + ": not a tagger model (kind '" + model.core.kind + "')");
  }
  auto meta_int = [&](const char* key, int fallback) {
    auto it = model.core.meta.find(key);
    return it == model.core.meta.end() ? fallback : std::atoi(it->second.c_str());
  };
  model.config.window = meta_int("window", 2);
  model.config.max_affix_len = meta_int("max_affix_len", 3);
  model.config.use_pos_column = meta_int("use_pos_column", 1) != 0;
  model.config.epochs = meta_int("epochs", 10);
  return model;
}

}  // namespace stagdep
