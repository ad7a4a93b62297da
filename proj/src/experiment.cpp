#include "stagdep/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "stagdep/pipeline.hpp"

namespace stagdep {

double FoldSeries::mean() const {
  if (per_fold.empty()) return 0.0;
  double sum = std::accumulate(per_fold.begin(), per_fold.end(), 0.0);
  return sum / static_cast<double>(per_fold.size());
}

bool ExperimentReport::has_model(const std::string& m) const {
  return std::find(models.begin(), models.end(), m) != models.end();
}

std::string ExperimentReport::score_key(const std::string& model, const std::string& condition) {
  return model + "|" + condition;
}

namespace {

const std::vector<std::string> kKnownModels = {"baseline", "M0", "M1", "M2"};
const std::vector<std::string> kKnownConditions = {"gold", "automatic"};

std::vector<std::string> parse_name_list(const std::string& value,
                                         const std::vector<std::string>& known,
                                         const std::string& what) {
  std::vector<std::string> out;
  for (const std::string& part : split(value, ',')) {
    std::string name(trim(part));
    if (name.empty()) continue;
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw DataError("unknown " + what + " '" + name + "'");
    }
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  if (out.empty()) throw DataError(what + " list is empty");
  // Canonical order regardless of how the list was written.
  std::vector<std::string> ordered;
  for (const std::string& name : known) {
    if (std::find(out.begin(), out.end(), name) != out.end()) ordered.push_back(name);
  }
  return ordered;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw DataError(key + " must be true or false");
}

}  // namespace

ExperimentSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open experiment spec " + path);
  ExperimentSpec spec;
  std::optional<uint64_t> tagger_seed, parser_seed;
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
    if (key == "corpus") spec.corpus_path = value;
    else if (key == "k") spec.k = std::atoi(value.c_str());
    else if (key == "seed") spec.seed = std::strtoull(value.c_str(), nullptr, 10);
    else if (key == "models") spec.models = parse_name_list(value, kKnownModels, "model");
    else if (key == "conditions")
      spec.conditions = parse_name_list(value, kKnownConditions, "condition");
    else if (key == "out") spec.out_dir = value;
    else if (key == "exclude_punct") spec.eval.exclude_punct = parse_bool(value, key);
    else if (key == "punct_label") spec.eval.punct_label = value;
    else if (key == "tagger_epochs") spec.tagger.epochs = std::atoi(value.c_str());
    else if (key == "tagger_seed") tagger_seed = std::strtoull(value.c_str(), nullptr, 10);
    else if (key == "tagger_window") spec.tagger.window = std::atoi(value.c_str());
    else if (key == "tagger_max_affix_len") spec.tagger.max_affix_len = std::atoi(value.c_str());
    else if (key == "tagger_use_pos") spec.tagger.use_pos_column = parse_bool(value, key);
    else if (key == "parser_epochs") spec.learner.epochs = std::atoi(value.c_str());
    else if (key == "parser_seed") parser_seed = std::strtoull(value.c_str(), nullptr, 10);
    else if (key == "parser_shuffle") spec.learner.shuffle = parse_bool(value, key);
    else throw DataError(path + " line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  spec.tagger.seed = tagger_seed.value_or(spec.seed);
  spec.learner.seed = parser_seed.value_or(spec.seed);
  return spec;
}

std::vector<FoldIndices> k_fold_indices(size_t corpus_size, int k, uint64_t seed) {
  if (k < 2) throw DataError("k-fold split: k must be >= 2");
  if (corpus_size < static_cast<size_t>(k)) {
    throw DataError("k-fold split: corpus has " + std::to_string(corpus_size) +
                    " sentences, fewer than k = " + std::to_string(k));
  }
  std::vector<size_t> order(corpus_size);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  size_t base = corpus_size / static_cast<size_t>(k);
  size_t rem = corpus_size % static_cast<size_t>(k);
  std::vector<FoldIndices> folds(static_cast<size_t>(k));
  size_t pos = 0;
  for (int i = 0; i < k; ++i) {
    size_t len = base + (static_cast<size_t>(i) < rem ? 1 : 0);
    for (size_t j = 0; j < corpus_size; ++j) {
      bool in_test = j >= pos && j < pos + len;
      (in_test ? folds[static_cast<size_t>(i)].test : folds[static_cast<size_t>(i)].train)
          .push_back(order[j]);
    }
    pos += len;
  }
  return folds;
}

std::vector<std::pair<std::vector<Sentence>, std::vector<Sentence>>> k_fold_split(
    const std::vector<Sentence>& corpus, int k, uint64_t seed) {
  std::vector<std::pair<std::vector<Sentence>, std::vector<Sentence>>> out;
  for (const FoldIndices& fold : k_fold_indices(corpus.size(), k, seed)) {
    std::vector<Sentence> train, test;
    for (size_t i : fold.train) train.push_back(corpus[i]);
    for (size_t i : fold.test) test.push_back(corpus[i]);
    out.emplace_back(std::move(train), std::move(test));
  }
  return out;
}

namespace {

// Persists intermediate artifacts under out_dir/artifacts with
// content-addressed names; records logical name -> file in the manifest.
class ArtifactStore {
 public:
  explicit ArtifactStore(const std::string& out_dir) : dir_(out_dir) {
    if (dir_.empty()) return;
    std::filesystem::create_directories(std::filesystem::path(dir_) / "artifacts");
  }

  void put(const std::string& logical, const std::string& ext, const std::string& content) {
    if (dir_.empty()) return;
    std::string name = logical + "." + hex16(fnv1a64(content)).substr(4) + ext;
    std::ofstream out(std::filesystem::path(dir_) / "artifacts" / name, std::ios::binary);
    if (!out) throw DataError("cannot write artifact " + name);
    out << content;
    manifest_ << logical << '\t' << "artifacts/" << name << '\n';
  }

  void put_corpus(const std::string& logical, const std::vector<Sentence>& corpus,
                  StagField stag_from = StagField::None) {
    if (dir_.empty()) return;
    WriteOptions opts;
    opts.stag_from = stag_from;
    put(logical, ".conllx", to_conllx(corpus, opts));
  }

  void put_model(const std::string& logical, const LinearModel& model) {
    if (dir_.empty()) return;
    std::ostringstream buf;
    save_model(model, buf);
    put(logical, ".model", buf.str());
  }

  void finish() {
    if (dir_.empty()) return;
    std::ofstream out(std::filesystem::path(dir_) / "manifest.tsv", std::ios::binary);
    out << manifest_.str();
  }

 private:
  std::string dir_;
  std::ostringstream manifest_;
};

TaggerExample to_tagger_example(const Sentence& s) {
  TaggerExample ex;
  for (const Token& t : s.tokens) {
    ex.tokens.push_back({t.form, t.pos});
    if (!t.gold_supertag) {
      throw DataError("supertagger training: token '" + t.form + "' lacks a gold supertag");
    }
    ex.tags.push_back(*t.gold_supertag);
  }
  return ex;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  std::vector<Sentence> corpus = read_conllx_file(spec.corpus_path);
  return run_experiment_on(spec, corpus);
}

ExperimentReport run_experiment_on(const ExperimentSpec& spec,
                                   const std::vector<Sentence>& corpus) {
  ExperimentReport report;
  report.k = spec.k;
  report.models = parse_name_list(join(spec.models, ","), kKnownModels, "model");
  report.conditions = parse_name_list(join(spec.conditions, ","), kKnownConditions, "condition");

  std::vector<FoldIndices> folds = k_fold_indices(corpus.size(), spec.k, spec.seed);
  ArtifactStore store(spec.out_dir);

  bool run_gold = std::find(report.conditions.begin(), report.conditions.end(), "gold") !=
                  report.conditions.end();
  bool run_auto = std::find(report.conditions.begin(), report.conditions.end(), "automatic") !=
                  report.conditions.end();

  for (int f = 0; f < spec.k; ++f) {
    std::string fold_tag = "fold" + std::to_string(f + 1);
    std::vector<Sentence> train, test;
    for (size_t i : folds[static_cast<size_t>(f)].train) train.push_back(corpus[i]);
    for (size_t i : folds[static_cast<size_t>(f)].test) test.push_back(corpus[i]);
    store.put_corpus(fold_tag + ".train", train);
    store.put_corpus(fold_tag + ".test", test);

    long fold_skips = -1;
    auto record = [&](const std::string& model, const std::string& condition, double u,
                      double l) {
      report.uas[ExperimentReport::score_key(model, condition)].per_fold.push_back(u);
      report.las[ExperimentReport::score_key(model, condition)].per_fold.push_back(l);
    };

    if (report.has_model("baseline")) {
      ParserModel parser = train_parser(train, baseline_templates(), spec.learner);
      fold_skips = parser.skipped_nonprojective;
      store.put_model(fold_tag + ".baseline.parser", parser.core);
      std::vector<Sentence> pred = parse_corpus(parser, test);
      store.put_corpus(fold_tag + ".baseline.parse", pred);
      EvalReport ev = evaluate(test, pred, spec.eval);
      // The baseline has no supertag input, so its score is condition-free;
      // it is recorded under each requested condition for delta rows.
      for (const std::string& cond : report.conditions) {
        record("baseline", cond, ev.uas, ev.las);
      }
    }

    for (const std::string& model_name : report.models) {
      if (model_name == "baseline") continue;
      SupertagModel model = supertag_model_from_string(model_name);

      std::vector<Sentence> train_a = train;
      std::vector<Sentence> test_a = test;
      annotate_corpus(train_a, model, spec.policy);
      annotate_corpus(test_a, model, spec.policy);
      store.put_corpus(fold_tag + "." + model_name + ".train-gold", train_a, StagField::Gold);
      store.put_corpus(fold_tag + "." + model_name + ".test-gold", test_a, StagField::Gold);

      // Supertagging experiment: train on the fold's training half, tag the
      // held-out half, record per-fold accuracy.
      std::vector<TaggerExample> examples;
      examples.reserve(train_a.size());
      for (const Sentence& s : train_a) examples.push_back(to_tagger_example(s));
      TaggerModel tagger_model = train_tagger(examples, spec.tagger);
      store.put_model(fold_tag + "." + model_name + ".tagger", tagger_model.core);

      long hits = 0, total = 0;
      for (Sentence& s : test_a) {
        TaggerInput input;
        for (const Token& t : s.tokens) input.push_back({t.form, t.pos});
        std::vector<std::string> pred_tags = tag(tagger_model, input);
        for (size_t i = 0; i < pred_tags.size(); ++i) {
          Token& t = s.tokens[i];
          if (*t.gold_supertag == pred_tags[i]) ++hits;
          ++total;
          t.pred_supertag = std::move(pred_tags[i]);
        }
      }
      report.tagging[model_name].per_fold.push_back(
          total > 0 ? static_cast<double>(hits) / static_cast<double>(total) : 0.0);
      store.put_corpus(fold_tag + "." + model_name + ".test-auto", test_a, StagField::Pred);

      ParserModel parser = train_parser(train_a, supertag_templates(), spec.learner);
      if (fold_skips < 0) fold_skips = parser.skipped_nonprojective;
      store.put_model(fold_tag + "." + model_name + ".parser", parser.core);

      if (run_gold) {
        std::vector<Sentence> pred = parse_corpus(parser, test_a, StagSource::Gold);
        store.put_corpus(fold_tag + "." + model_name + ".parse-gold", pred);
        EvalReport ev = evaluate(test, pred, spec.eval);
        record(model_name, "gold", ev.uas, ev.las);
      }
      if (run_auto) {
        std::vector<Sentence> pred = parse_corpus(parser, test_a, StagSource::Pred);
        store.put_corpus(fold_tag + "." + model_name + ".parse-automatic", pred);
        EvalReport ev = evaluate(test, pred, spec.eval);
        record(model_name, "automatic", ev.uas, ev.las);
      }
    }

    report.skipped_nonprojective.push_back(fold_skips < 0 ? 0 : fold_skips);
  }

  store.finish();
  return report;
}

namespace {

void render_cell(std::ostringstream& out, const std::string& text, int width) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), " %*s", width, text.c_str());
  out << buf;
}

}  // namespace

std::string render_report_text(const ExperimentReport& report) {
  std::ostringstream out;
  char buf[160];

  std::vector<std::string> stag_models;
  for (const std::string& m : report.models) {
    if (m != "baseline") stag_models.push_back(m);
  }

  if (!stag_models.empty()) {
    out << "Supertagging accuracy (%)\n";
    std::snprintf(buf, sizeof(buf), "%-8s", "Fold");
    out << buf;
    for (const std::string& m : stag_models) render_cell(out, m, 8);
    out << '\n';
    for (int f = 0; f < report.k; ++f) {
      std::snprintf(buf, sizeof(buf), "%-8d", f + 1);
      out << buf;
      for (const std::string& m : stag_models) {
        render_cell(out, format_pct(report.tagging.at(m).per_fold[static_cast<size_t>(f)]), 8);
      }
      out << '\n';
    }
    std::snprintf(buf, sizeof(buf), "%-8s", "Average");
    out << buf;
    for (const std::string& m : stag_models) {
      render_cell(out, format_pct(report.tagging.at(m).mean()), 8);
    }
    out << "\n\n";
  }

  out << "Parsing accuracy (%), fold-averaged\n";
  std::snprintf(buf, sizeof(buf), "%-10s", "Model");
  out << buf;
  for (const std::string& c : report.conditions) {
    render_cell(out, c + " UAS", 14);
    render_cell(out, c + " LAS", 14);
  }
  out << '\n';
  for (const std::string& m : report.models) {
    std::snprintf(buf, sizeof(buf), "%-10s", m.c_str());
    out << buf;
    for (const std::string& c : report.conditions) {
      std::string key = ExperimentReport::score_key(m, c);
      render_cell(out, format_pct(report.uas.at(key).mean()), 14);
      render_cell(out, format_pct(report.las.at(key).mean()), 14);
    }
    out << '\n';
  }
  out << '\n';

  if (report.has_model("baseline") && !stag_models.empty()) {
    out << "Difference vs baseline (%)\n";
    std::snprintf(buf, sizeof(buf), "%-10s", "Model");
    out << buf;
    for (const std::string& c : report.conditions) {
      render_cell(out, c + " UAS", 14);
      render_cell(out, c + " LAS", 14);
    }
    out << '\n';
    for (const std::string& m : stag_models) {
      std::snprintf(buf, sizeof(buf), "%-10s", m.c_str());
      out << buf;
      for (const std::string& c : report.conditions) {
        std::string key = ExperimentReport::score_key(m, c);
        std::string base = ExperimentReport::score_key("baseline", c);
        render_cell(out, format_pct_signed(report.uas.at(key).mean() - report.uas.at(base).mean()),
                    14);
        render_cell(out, format_pct_signed(report.las.at(key).mean() - report.las.at(base).mean()),
                    14);
      }
      out << '\n';
    }
    out << '\n';
  }

  long total_skips = std::accumulate(report.skipped_nonprojective.begin(),
                                     report.skipped_nonprojective.end(), 0L);
  out << "Non-projective training sentences skipped: " << total_skips << " (per fold:";
  for (long s : report.skipped_nonprojective) out << ' ' << s;
  out << ")\n";
  return out.str();
}

std::string render_report_tsv(const ExperimentReport& report) {
  std::ostringstream out;
  for (const std::string& m : report.models) {
    for (const std::string& c : report.conditions) {
      std::string key = ExperimentReport::score_key(m, c);
      out << "parse\t" << m << '\t' << c << '\t' << format_pct(report.uas.at(key).mean()) << '\t'
          << format_pct(report.las.at(key).mean()) << '\n';
    }
  }
  for (const std::string& m : report.models) {
    if (m == "baseline") continue;
    out << "tagging\t" << m << '\t' << format_pct(report.tagging.at(m).mean()) << '\n';
  }
  if (report.has_model("baseline")) {
    for (const std::string& m : report.models) {
      if (m == "baseline") continue;
      for (const std::string& c : report.conditions) {
        std::string key = ExperimentReport::score_key(m, c);
        std::string base = ExperimentReport::score_key("baseline", c);
        out << "delta\t" << m << '\t' << c << '\t'
            << format_pct_signed(report.uas.at(key).mean() - report.uas.at(base).mean()) << '\t'
            << format_pct_signed(report.las.at(key).mean() - report.las.at(base).mean()) << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace stagdep
