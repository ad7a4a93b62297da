// Acceptance suite.  Runs the eight release criteria end to end and prints
// one PASS/FAIL line each; exits non-zero if any fail.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <tuple>

#include "stagdep/conllx.hpp"
#include "stagdep/eval.hpp"
#include "stagdep/experiment.hpp"
#include "stagdep/pipeline.hpp"
#include "stagdep/supertag.hpp"
#include "stagdep/tagger.hpp"
#include "stagdep/transition.hpp"
#include "test_support.hpp"

using namespace stagdep;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const char* name, bool ok, const std::string& detail = "") {
  std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, name,
              detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---- criterion 1: exact supertag columns for the reference sentence ----
void criterion_1() {
  auto start = Clock::now();
  std::vector<Sentence> corpus = read_conllx_file(testsup::data_path("example.conllx"));
  bool ok = corpus.size() == 1;
  if (ok) {
    SupertagPolicy policy;
    ok = extract_supertags(corpus[0], SupertagModel::M0, policy) == testsup::example_m0() &&
         extract_supertags(corpus[0], SupertagModel::M1, policy) == testsup::example_m1() &&
         extract_supertags(corpus[0], SupertagModel::M2, policy) == testsup::example_m2();
  }
  double elapsed = seconds_since(start);
  ok = ok && elapsed < 1.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2fs", elapsed);
  report(1, "reference-sentence supertags, all three models, string-exact", ok, buf);
}

// ---- criterion 2: vocabulary refinement -------------------------------
void criterion_2() {
  auto start = Clock::now();
  SupertagPolicy policy;
  bool ok = true;
  std::string detail;

  auto check_corpus = [&](const std::vector<Sentence>& corpus, const char* what) {
    size_t m0 = build_vocabulary(corpus, SupertagModel::M0, policy).size();
    size_t m1 = build_vocabulary(corpus, SupertagModel::M1, policy).size();
    size_t m2 = build_vocabulary(corpus, SupertagModel::M2, policy).size();
    if (!(m0 <= m1 && m1 <= m2)) {
      ok = false;
      detail += std::string(what) + " sizes not monotone; ";
    }
    for (const Sentence& s : corpus) {
      std::vector<std::string> t1 = extract_supertags(s, SupertagModel::M1, policy);
      std::vector<std::string> t2 = extract_supertags(s, SupertagModel::M2, policy);
      for (size_t i = 0; i < t1.size(); ++i) {
        if (!policy.is_verb(s.tokens[i].pos) && t1[i] != t2[i]) {
          ok = false;
          detail += "non-verb M2 tag differs from M1; ";
          return;
        }
      }
    }
  };

  check_corpus(read_conllx_file(testsup::data_path("toy.conllx")), "toy treebank");
  Rng rng(101);
  std::vector<Sentence> random_corpus;
  for (int i = 0; i < 500; ++i) {
    random_corpus.push_back(testsup::random_projective_tree(rng, 1 + static_cast<int>(rng.below(12))));
  }
  check_corpus(random_corpus, "random trees");

  double elapsed = seconds_since(start);
  ok = ok && elapsed < 10.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%.2fs", detail.c_str(), elapsed);
  report(2, "vocabulary refinement M0 <= M1 <= M2, non-verb M2 = M1", ok, buf);
}

// ---- criterion 3: oracle round-trip and non-projectivity counts -------
void criterion_3() {
  auto start = Clock::now();
  std::vector<Sentence> corpus = read_conllx_file(testsup::data_path("toy.conllx"));
  Rng rng(103);
  while (corpus.size() < 5000) {
    corpus.push_back(testsup::random_tree(rng, 1 + static_cast<int>(rng.below(24))));
  }

  long rejected = 0, replayed = 0;
  long bruteforce_nonprojective = 0;
  bool ok = true;
  for (const Sentence& s : corpus) {
    if (!testsup::projective_bruteforce(s)) ++bruteforce_nonprojective;
    std::vector<Transition> seq;
    try {
      seq = oracle_sequence(s);
    } catch (const DataError&) {
      ++rejected;
      continue;
    }
    ++replayed;
    ParserConfig c = ParserConfig::initial(s.size());
    for (const Transition& t : seq) c = apply(c, t);
    for (const Token& tok : s.tokens) {
      if (c.head_of(tok.id) != tok.head || c.label_of(tok.id) != tok.deprel) ok = false;
    }
  }
  if (rejected != bruteforce_nonprojective) ok = false;

  double elapsed = seconds_since(start);
  ok = ok && elapsed < 30.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%ld replayed, %ld rejected (brute force says %ld), %.2fs",
                replayed, rejected, bruteforce_nonprojective, elapsed);
  report(3, "oracle round-trip on 5000 sentences, rejects = brute-force count", ok, buf);
}

// ---- criterion 4: evaluation fixtures and UAS >= LAS ------------------
void criterion_4() {
  std::vector<Sentence> gold = {testsup::example_sentence()};
  Sentence perturbed = testsup::example_sentence();
  perturbed.token(3).head = 4;
  perturbed.token(5).deprel = "IOB";
  std::vector<Sentence> pred = {perturbed};

  auto close = [](double a, double b) { return a > b - 1e-12 && a < b + 1e-12; };
  auto [u, l] = attachment_scores(gold, pred, false);
  bool ok = close(u, 6.0 / 7.0) && close(l, 5.0 / 7.0);
  auto [up, lp] = attachment_scores(gold, pred, true);
  ok = ok && close(up, 5.0 / 6.0) && close(lp, 4.0 / 6.0);

  std::vector<RelationRow> rows = per_relation_report(gold, gold);
  bool nmod_seen = false, root_seen = false;
  for (const RelationRow& row : rows) {
    if (row.relation == "NMOD") {
      nmod_seen = true;
      ok = ok && close(row.precision, 1.0) && close(row.recall, 1.0) && close(row.dla, 1.0);
    }
    if (row.relation == "ROOT") {
      root_seen = true;
      ok = ok && close(row.dla, 4.0);
    }
  }
  ok = ok && nmod_seen && root_seen;

  Rng rng(107);
  for (int trial = 0; trial < 1000; ++trial) {
    Sentence g = testsup::random_projective_tree(rng, 1 + static_cast<int>(rng.below(9)));
    Sentence p = g;
    for (Token& t : p.tokens) {
      if (rng.below(2) == 0) t.head = static_cast<int>(rng.below(static_cast<uint64_t>(g.size()) + 1));
      if (t.head == t.id) t.head = 0;
      if (rng.below(2) == 0) t.deprel = "ALT";
    }
    EvalReport r = evaluate({g}, {p});
    if (r.uas < r.las) ok = false;
  }
  report(4, "evaluation fixtures exact, UAS >= LAS on 1000 random parses", ok);
}

// ---- criterion 5: overfit sanity ---------------------------------------
void criterion_5() {
  auto start = Clock::now();
  std::vector<Sentence> corpus = read_conllx_file(testsup::data_path("toy.conllx"));
  std::vector<Sentence> train;
  for (const Sentence& s : corpus) {
    if (is_projective(s)) train.push_back(s);
    if (train.size() == 100) break;
  }
  annotate_corpus(train, SupertagModel::M1, SupertagPolicy{});

  LearnerConfig config;
  config.epochs = 10;
  ParserModel model = train_parser(train, supertag_templates(), config);
  std::vector<Sentence> reparsed = parse_corpus(model, train);
  auto [uas, las] = attachment_scores(train, reparsed, false);

  double elapsed = seconds_since(start);
  bool ok = las >= 0.95 && elapsed < 60.0;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "train LAS %.2f%% (UAS %.2f%%), %.2fs", las * 100.0, uas * 100.0,
                elapsed);
  report(5, "100-sentence overfit reaches >= 95% LAS within 10 epochs", ok, buf);
}

// ---- criterion 6: directional reproduction of the experiment tables ----
void criterion_6() {
  auto start = Clock::now();
  ExperimentSpec spec;
  spec.corpus_path = testsup::data_path("toy.conllx");
  spec.k = 5;
  spec.seed = 1;
  spec.models = {"baseline", "M0", "M1", "M2"};
  spec.conditions = {"gold", "automatic"};

  ExperimentReport r = run_experiment(spec);

  bool ok = true;
  std::string detail;
  char buf[160];
  for (const char* m : {"M0", "M1", "M2"}) {
    double uas_gold = r.uas.at(ExperimentReport::score_key(m, "gold")).mean();
    double las_gold = r.las.at(ExperimentReport::score_key(m, "gold")).mean();
    double las_auto = r.las.at(ExperimentReport::score_key(m, "automatic")).mean();
    double base_uas = r.uas.at(ExperimentReport::score_key("baseline", "gold")).mean();
    double base_las = r.las.at(ExperimentReport::score_key("baseline", "gold")).mean();
    double base_las_auto = r.las.at(ExperimentReport::score_key("baseline", "automatic")).mean();
    if (uas_gold < base_uas || las_gold < base_las) {
      ok = false;
      detail += std::string(m) + " gold delta negative; ";
    }
    if (las_auto - base_las_auto > las_gold - base_las) {
      ok = false;
      detail += std::string(m) + " automatic LAS delta exceeds gold; ";
    }
    std::snprintf(buf, sizeof(buf), "%s dUAS %+0.2f dLAS %+0.2f (auto dLAS %+0.2f); ", m,
                  (uas_gold - base_uas) * 100.0, (las_gold - base_las) * 100.0,
                  (las_auto - base_las_auto) * 100.0);
    detail += buf;
  }

  double elapsed = seconds_since(start);
  ok = ok && elapsed < 600.0;
  std::snprintf(buf, sizeof(buf), "%.1fs", elapsed);
  report(6, "5-fold CV: gold deltas >= 0, automatic LAS deltas <= gold", ok, detail + buf);
}

// ---- criterion 7: byte-identical reports under a fixed seed ------------
void criterion_7() {
  ExperimentSpec spec;
  spec.corpus_path = testsup::data_path("toy.conllx");
  spec.k = 3;
  spec.seed = 42;
  spec.models = {"baseline", "M1"};
  spec.tagger.seed = 42;
  spec.learner.seed = 42;
  spec.tagger.epochs = 5;
  spec.learner.epochs = 5;

  std::string a = render_report_tsv(run_experiment(spec));
  std::string b = render_report_tsv(run_experiment(spec));
  report(7, "identical spec and seed give byte-identical tsv reports", !a.empty() && a == b);
}

// ---- criterion 8: tagger contract ---------------------------------------
void criterion_8() {
  // Per-fold accuracies live in (0, 1]; the memorization corpus reaches 1.
  ExperimentSpec spec;
  spec.corpus_path = testsup::data_path("toy.conllx");
  spec.k = 3;
  spec.models = {"baseline", "M0", "M1", "M2"};
  spec.tagger.epochs = 5;
  spec.learner.epochs = 2;
  ExperimentReport r = run_experiment(spec);

  bool ok = true;
  for (const char* m : {"M0", "M1", "M2"}) {
    for (double acc : r.tagging.at(m).per_fold) {
      if (!(acc > 0.0 && acc <= 1.0)) ok = false;
    }
  }

  // Memorization: a corpus of one repeated sentence tags perfectly.
  std::vector<TaggerExample> memorize;
  for (int i = 0; i < 50; ++i) {
    TaggerExample ex;
    for (const Token& t : testsup::example_sentence().tokens) ex.tokens.push_back({t.form, t.pos});
    ex.tags = testsup::example_m1();
    memorize.push_back(std::move(ex));
  }
  TaggerModel model = train_tagger(memorize, TaggerConfig{});
  ok = ok && tag(model, memorize[0].tokens) == testsup::example_m1();

  // Accuracy table shape: one row per fold plus an average row.
  std::string text = render_report_text(r);
  size_t table = text.find("Supertagging accuracy");
  ok = ok && table != std::string::npos;
  int fold_rows = 0;
  for (int f = 1; f <= spec.k; ++f) {
    std::string row_start = "\n" + std::to_string(f) + " ";
    if (text.find(row_start, table) != std::string::npos) ++fold_rows;
  }
  ok = ok && fold_rows == spec.k && text.find("Average", table) != std::string::npos;
  report(8, "supertagger accuracy in (0,1], memorization at 100%, fold table rendered", ok);
}

}  // namespace

int main() {
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
    return 2;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
