#include "stagdep/eval.hpp"

#include "doctest.h"
#include "test_support.hpp"

using namespace stagdep;

namespace {

// The perturbed prediction used in the fixtures: token 3's head moved from
// 2 to 4, token 5's label changed DOB -> IOB.
std::vector<Sentence> perturbed_example_sentence() {
  Sentence pred = testsup::example_sentence();
  pred.token(3).head = 4;
  pred.token(5).deprel = "IOB";
  return {pred};
}

const RelationRow* find_row(const std::vector<RelationRow>& rows, const std::string& rel) {
  for (const RelationRow& r : rows) {
    if (r.relation == rel) return &r;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("attachment_scores: identity, perturbation, punctuation exclusion") {
  std::vector<Sentence> gold = {testsup::example_sentence()};
  auto [u1, l1] = attachment_scores(gold, gold, false);
  CHECK(u1 == 1.0);
  CHECK(l1 == 1.0);

  std::vector<Sentence> pred = perturbed_example_sentence();
  auto [u2, l2] = attachment_scores(gold, pred, false);
  CHECK(u2 == doctest::Approx(6.0 / 7.0));
  CHECK(l2 == doctest::Approx(5.0 / 7.0));

  auto [u3, l3] = attachment_scores(gold, pred, true);
  CHECK(u3 == doctest::Approx(5.0 / 6.0));
  CHECK(l3 == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("misaligned corpora are rejected") {
  std::vector<Sentence> gold = {testsup::example_sentence()};
  CHECK_THROWS_AS(attachment_scores(gold, {}, false), DataError);

  std::vector<Sentence> shorter = {testsup::example_sentence()};
  shorter[0].tokens.pop_back();
  CHECK_THROWS_AS(attachment_scores(gold, shorter, false), DataError);

  std::vector<Sentence> renamed = {testsup::example_sentence()};
  renamed[0].token(1).form = "Ba";
  CHECK_THROWS_AS(attachment_scores(gold, renamed, false), DataError);
}

TEST_CASE("per_relation_report on the identity parse") {
  std::vector<Sentence> gold = {testsup::example_sentence()};
  std::vector<RelationRow> rows = per_relation_report(gold, gold);

  const RelationRow* nmod = find_row(rows, "NMOD");
  REQUIRE(nmod != nullptr);
  CHECK(nmod->gold_count == 2);
  CHECK(nmod->precision == 1.0);
  CHECK(nmod->recall == 1.0);
  CHECK(nmod->dla == 1.0);  // both NMOD arcs have length 1

  const RelationRow* root = find_row(rows, "ROOT");
  REQUIRE(root != nullptr);
  CHECK(root->dla == 4.0);  // |0 - 4| with the root-position convention

  // Most frequent relation leads the table.
  CHECK(rows[0].relation == "NMOD");
}

TEST_CASE("per_relation_report counts misses against both sides") {
  std::vector<Sentence> gold = {testsup::example_sentence()};
  std::vector<Sentence> pred = perturbed_example_sentence();
  std::vector<RelationRow> rows = per_relation_report(gold, pred);

  // DOB exists in gold but the prediction relabeled it IOB.
  const RelationRow* dob = find_row(rows, "DOB");
  REQUIRE(dob != nullptr);
  CHECK(dob->gold_count == 1);
  CHECK(dob->pred_count == 0);
  CHECK(dob->precision == 0.0);
  CHECK(dob->recall == 0.0);

  // IOB was predicted but never gold, so it has a row with zero recall.
  const RelationRow* iob = find_row(rows, "IOB");
  REQUIRE(iob != nullptr);
  CHECK(iob->gold_count == 0);
  CHECK(iob->pred_count == 1);
  CHECK(iob->precision == 0.0);
  CHECK(iob->recall == 0.0);
  CHECK(iob->dla == 0.0);
}

TEST_CASE("correct counts sum to the LAS numerator") {
  Rng rng(43);
  std::vector<Sentence> gold;
  for (int i = 0; i < 20; ++i) {
    gold.push_back(testsup::random_projective_tree(rng, 1 + static_cast<int>(rng.below(9))));
  }
  // Predictions: random rewires of heads and labels.
  std::vector<Sentence> pred = gold;
  for (Sentence& s : pred) {
    for (Token& t : s.tokens) {
      if (rng.below(3) == 0) t.head = static_cast<int>(rng.below(static_cast<uint64_t>(s.size()) + 1));
      if (t.head == t.id) t.head = 0;
      if (rng.below(4) == 0) t.deprel = "XXX";
    }
  }
  EvalReport report = evaluate(gold, pred);
  long correct_sum = 0;
  for (const RelationRow& row : report.per_relation) correct_sum += row.correct;
  CHECK(static_cast<double>(correct_sum) ==
        doctest::Approx(report.las * static_cast<double>(report.token_count)));
}

TEST_CASE("UAS dominates LAS on randomized predictions") {
  Rng rng(47);
  for (int trial = 0; trial < 1000; ++trial) {
    Sentence g = testsup::random_projective_tree(rng, 1 + static_cast<int>(rng.below(8)));
    Sentence p = g;
    for (Token& t : p.tokens) {
      if (rng.below(2) == 0) t.head = static_cast<int>(rng.below(static_cast<uint64_t>(g.size()) + 1));
      if (t.head == t.id) t.head = 0;
      if (rng.below(2) == 0) t.deprel = "ALT";
    }
    EvalReport report = evaluate({g}, {p});
    CHECK(report.uas >= report.las);
  }
}

TEST_CASE("report is invariant under sentence permutation") {
  Rng rng(53);
  std::vector<Sentence> gold, pred;
  for (int i = 0; i < 10; ++i) {
    Sentence g = testsup::random_projective_tree(rng, 2 + static_cast<int>(rng.below(6)));
    Sentence p = g;
    p.token(1).deprel = "ALT";
    gold.push_back(g);
    pred.push_back(p);
  }
  EvalReport forward = evaluate(gold, pred);
  std::vector<Sentence> gold_r(gold.rbegin(), gold.rend());
  std::vector<Sentence> pred_r(pred.rbegin(), pred.rend());
  EvalReport backward = evaluate(gold_r, pred_r);
  CHECK(forward.uas == backward.uas);
  CHECK(forward.las == backward.las);
  REQUIRE(forward.per_relation.size() == backward.per_relation.size());
  for (size_t i = 0; i < forward.per_relation.size(); ++i) {
    CHECK(forward.per_relation[i].relation == backward.per_relation[i].relation);
    CHECK(forward.per_relation[i].dla == backward.per_relation[i].dla);
  }
}

TEST_CASE("eval renders both formats") {
  std::vector<Sentence> gold = {testsup::example_sentence()};
  EvalReport report = evaluate(gold, gold);
  std::string text = render_eval_text(report);
  CHECK(text.find("UAS: 100.00") != std::string::npos);
  CHECK(text.find("NMOD") != std::string::npos);
  std::string tsv = render_eval_tsv(report);
  CHECK(tsv.find("ROOT\t4.00\t100.00\t100.00\n") != std::string::npos);
}
