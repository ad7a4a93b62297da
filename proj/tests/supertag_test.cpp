#include "stagdep/supertag.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"

using namespace stagdep;

TEST_CASE("head_direction_part renders direction for directional labels only") {
  SupertagPolicy policy;
  Sentence s = testsup::example_sentence();
  CHECK(head_direction_part(s.token(2), policy) == "SUB/R");
  CHECK(head_direction_part(s.token(1), policy) == "DET");
  CHECK(head_direction_part(s.token(4), policy) == "ROOT");
  CHECK(head_direction_part(s.token(5), policy) == "DOB/L");

  policy.root_is_directional = true;
  CHECK(head_direction_part(s.token(4), policy) == "ROOT/L");
}

TEST_CASE("extract_supertags matches the three reference columns") {
  SupertagPolicy policy;
  Sentence s = testsup::example_sentence();
  CHECK(extract_supertags(s, SupertagModel::M0, policy) == testsup::example_m0());
  CHECK(extract_supertags(s, SupertagModel::M1, policy) == testsup::example_m1());
  CHECK(extract_supertags(s, SupertagModel::M2, policy) == testsup::example_m2());
}

TEST_CASE("extract_supertags on hand-built copula and one-argument verbs") {
  SupertagPolicy policy;
  // "Tôi ăn cơm ." — SUB, ROOT, DOB, PUNCT.
  Sentence eat = testsup::sentence_from({2, 0, 2, 2}, {"SUB", "ROOT", "DOB", "PUNCT"},
                                        {"P", "V", "N", "CH"}, {"tôi", "ăn", "cơm", "."});
  CHECK(extract_supertags(eat, SupertagModel::M0, policy) ==
        std::vector<std::string>{"SUB/R", "ROOT", "DOB/L", "PUNCT"});
  CHECK(extract_supertags(eat, SupertagModel::M1, policy) ==
        std::vector<std::string>{"SUB/R", "ROOT+L_R", "DOB/L", "PUNCT"});
  CHECK(extract_supertags(eat, SupertagModel::M2, policy) ==
        std::vector<std::string>{"SUB/R", "ROOT+SUB/L_DOB/R", "DOB/L", "PUNCT"});

  // Verb with a subject only: M2 lists just the one obligatory dependent.
  Sentence sleep = testsup::sentence_from({2, 0, 2}, {"SUB", "ROOT", "PUNCT"}, {"P", "V", "CH"},
                                          {"anh_ấy", "ngủ", "."});
  CHECK(extract_supertags(sleep, SupertagModel::M2, policy) ==
        std::vector<std::string>{"SUB/R", "ROOT+SUB/L", "PUNCT"});

  // Verb whose dependents are all non-obligatory: falls back to the M1 tag.
  Sentence mod = testsup::sentence_from({2, 0, 2, 2}, {"VMOD", "ROOT", "VMOD", "PUNCT"},
                                        {"R", "V", "R", "CH"}, {"đã", "chạy", "nhanh", "."});
  CHECK(extract_supertags(mod, SupertagModel::M1, policy)[1] == "ROOT+L_R");
  CHECK(extract_supertags(mod, SupertagModel::M2, policy)[1] == "ROOT+L_R");
}

TEST_CASE("extract_supertags rejects invalid trees") {
  SupertagPolicy policy;
  Sentence bad = testsup::sentence_from({2, 1}, {"NMOD", "NMOD"});
  CHECK_THROWS_AS(extract_supertags(bad, SupertagModel::M0, policy), DataError);
}

TEST_CASE("build_vocabulary counts distinct tags") {
  SupertagPolicy policy;
  std::vector<Sentence> corpus = {testsup::example_sentence()};

  SupertagVocab m0 = build_vocabulary(corpus, SupertagModel::M0, policy);
  CHECK(m0.size() == 6);  // NMOD/L appears twice
  CHECK(m0.contains("NMOD/L"));
  CHECK(m0.tags[0].first == "NMOD/L");
  CHECK(m0.tags[0].second == 2);

  // M2 swaps ROOT+L_R for ROOT+SUB/L_DOB/R; NMOD/L still repeats, so the
  // distinct count stays at 6.
  SupertagVocab m2 = build_vocabulary(corpus, SupertagModel::M2, policy);
  CHECK(m2.size() == 6);
  CHECK(m2.contains("ROOT+SUB/L_DOB/R"));
  CHECK(!m2.contains("ROOT+L_R"));

  // Duplicating sentences changes counts but not the tag set.
  std::vector<Sentence> tripled = {testsup::example_sentence(), testsup::example_sentence(), testsup::example_sentence()};
  SupertagVocab m0x3 = build_vocabulary(tripled, SupertagModel::M0, policy);
  REQUIRE(m0x3.size() == m0.size());
  for (size_t i = 0; i < m0.size(); ++i) {
    CHECK(m0x3.tags[i].first == m0.tags[i].first);
    CHECK(m0x3.tags[i].second == 3 * m0.tags[i].second);
  }

  CHECK_THROWS_AS(build_vocabulary({}, SupertagModel::M0, policy), DataError);
}

TEST_CASE("annotate_corpus fills gold supertags and nothing else") {
  SupertagPolicy policy;
  std::vector<Sentence> corpus = {testsup::example_sentence()};
  std::string before = to_conllx(corpus);
  annotate_corpus(corpus, SupertagModel::M1, policy);
  for (int i = 1; i <= 7; ++i) {
    CHECK(corpus[0].token(i).gold_supertag ==
          std::optional<std::string>(testsup::example_m1()[static_cast<size_t>(i - 1)]));
  }
  // All serialized columns unchanged when the annotation is not requested.
  CHECK(to_conllx(corpus) == before);

  std::vector<Sentence> empty;
  annotate_corpus(empty, SupertagModel::M1, policy);
  CHECK(empty.empty());
}

TEST_CASE("vocabulary sizes refine across models") {
  SupertagPolicy policy;
  std::vector<Sentence> corpus = read_conllx_file(testsup::data_path("toy.conllx"));
  size_t m0 = build_vocabulary(corpus, SupertagModel::M0, policy).size();
  size_t m1 = build_vocabulary(corpus, SupertagModel::M1, policy).size();
  size_t m2 = build_vocabulary(corpus, SupertagModel::M2, policy).size();
  CHECK(m0 <= m1);
  CHECK(m1 <= m2);
}

TEST_CASE("tag structure properties on random projective trees") {
  SupertagPolicy policy;
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    Sentence s = testsup::random_projective_tree(rng, 1 + static_cast<int>(rng.below(10)));
    std::vector<std::string> m0 = extract_supertags(s, SupertagModel::M0, policy);
    std::vector<std::string> m1 = extract_supertags(s, SupertagModel::M1, policy);
    std::vector<std::string> m2 = extract_supertags(s, SupertagModel::M2, policy);
    for (size_t i = 0; i < m0.size(); ++i) {
      // The M0 tag prefixes the M1 tag of the same token.
      CHECK(m1[i].substr(0, m0[i].size()) == m0[i]);
      // Non-verbs keep their M1 tag in M2.
      if (!policy.is_verb(s.tokens[i].pos)) CHECK(m2[i] == m1[i]);
      // Stripping "+..." and "/L|/R" recovers the deprel.
      std::string base = m1[i].substr(0, m1[i].find('+'));
      size_t slash = base.rfind('/');
      if (slash != std::string::npos && (base.substr(slash) == "/L" || base.substr(slash) == "/R")) {
        base = base.substr(0, slash);
      }
      CHECK(base == s.tokens[i].deprel);
    }
    // Determinism.
    CHECK(extract_supertags(s, SupertagModel::M2, policy) == m2);
  }
}

TEST_CASE("vocab file renders tag<TAB>count lines in order") {
  SupertagPolicy policy;
  SupertagVocab vocab = build_vocabulary({testsup::example_sentence()}, SupertagModel::M0, policy);
  std::ostringstream out;
  write_vocab(vocab, out);
  CHECK(out.str().substr(0, 9) == "NMOD/L\t2\n");
}

TEST_CASE("policy file overrides the default label sets") {
  std::string path = "policy_test.tmp";
  {
    std::ofstream f(path);
    f << "# test policy\n";
    f << "directional_labels = SUB, DOB\n";
    f << "obligatory_labels = SUB\n";
    f << "verb_pos_prefixes = V, VB\n";
    f << "root_is_directional = true\n";
  }
  SupertagPolicy policy = load_policy_file(path);
  CHECK(policy.directional_labels == std::set<std::string>{"DOB", "SUB"});
  CHECK(policy.obligatory_labels == std::set<std::string>{"SUB"});
  CHECK(policy.verb_pos_prefixes == std::vector<std::string>{"V", "VB"});
  CHECK(policy.root_is_directional);
  std::remove(path.c_str());
}
