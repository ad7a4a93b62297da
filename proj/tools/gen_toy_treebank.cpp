// Generates the bundled toy treebank (data/toy.conllx): a small synthetic
// Vietnamese-flavored corpus in CoNLL-X with Vietnamese-treebank-style POS tags and
// dependency relations.
//
// The grammar mixes fully predictable structure with attachment decisions
// of graded visibility:
//   - most sentence-final PPs attach per the verb's subcategorization
//     class (object-modifying verbs take NMOD PPs on the object, locative
//     verbs take VMOD/LOC PPs).  At the parser's attachment decision the
//     verb form sits at S1 where only its POS is observable, while a
//     tagger sees the verb inside its form window — so the supertag
//     carries signal the baseline feature set cannot recover;
//   - a smaller PP slice is decided by a hidden coin nobody can predict;
//   - about 4.5% of sentences carry a crossing arc (an extraposed
//     modifier of the subject), mirroring the non-projective rate of
//     real treebanks.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "stagdep/conllx.hpp"
#include "stagdep/util.hpp"

using namespace stagdep;

namespace {

const std::vector<std::string> kNouns = {
    "kịch_bản",  "cuộc_sống", "thành_phố", "ngôi_nhà",  "trẻ_em",    "cuốn_sách",
    "âm_nhạc",   "con_đường", "dòng_sông", "ngôi_trường", "bức_tranh", "câu_chuyện",
    "người_dân", "khu_vườn",  "món_ăn",    "bài_hát",   "cánh_đồng", "thư_viện",
    "bầu_trời",  "lễ_hội",    "chuyến_đi", "kỷ_niệm",   "phong_cảnh", "truyền_thống"};
const std::vector<std::string> kProper = {"Hà_Nội", "Việt_Nam", "Huế", "Đà_Nẵng", "Sài_Gòn"};
const std::vector<std::string> kVerbs = {
    "mô_tả",    "yêu",      "đọc",    "viết",     "xây_dựng", "bảo_vệ", "khám_phá",
    "chia_sẻ",  "tìm_thấy", "giới_thiệu", "ca_ngợi", "ghi_lại", "nhớ",   "thể_hiện"};
const std::vector<std::string> kGiveVerbs = {"tặng", "gửi", "trao", "dạy"};
const std::vector<std::string> kAdjs = {"mới",       "hiện_đại", "đẹp",    "cổ_kính", "yên_bình",
                                        "nổi_tiếng", "xanh",     "nhỏ",    "rộng_lớn", "thân_thiện"};
const std::vector<std::string> kPronouns = {"tôi", "chúng_tôi", "anh_ấy", "cô_ấy", "họ", "chúng_ta"};
const std::vector<std::string> kNumerals = {"hai", "ba", "bốn", "năm", "nhiều", "một"};
const std::vector<std::string> kPreps = {"ở", "tại", "trong", "về", "từ"};
const std::vector<std::string> kAdverbs = {"đã", "sẽ", "luôn", "thường", "vừa"};

// Subcategorization class of a verb: even-indexed verbs take noun-attached
// NMOD PPs, odd-indexed verbs attach the PP themselves; the label for
// verb-attached PPs alternates between VMOD and LOC per verb.
bool verb_attaches_pp(size_t verb_index) { return verb_index % 2 == 1; }
const char* verb_pp_label(size_t verb_index) { return (verb_index / 2) % 2 == 0 ? "VMOD" : "LOC"; }

struct Draft {
  Sentence s;

  int add(const std::string& form, const std::string& pos, int head, const std::string& deprel) {
    int id = s.size() + 1;
    Token t;
    t.id = id;
    t.form = form;
    t.lemma = "_";
    t.cpos = pos;
    t.pos = pos;
    t.head = head;
    t.deprel = deprel;
    s.tokens.push_back(std::move(t));
    return id;
  }
};

// Noun phrase; returns the id of its head noun.
int add_np(Draft& d, Rng& rng, bool allow_coord = true) {
  if (rng.below(5) == 0) {
    int head = d.add(rng.pick(kPronouns), "P", 0, "_");
    return head;
  }
  int det = -1;
  if (rng.below(3) == 0) det = d.add(rng.pick(kNumerals), "M", 0, "_");
  int head = d.add(rng.pick(kNouns), "N", 0, "_");
  if (det > 0) {
    d.s.token(det).head = head;
    d.s.token(det).deprel = "DET";
  }
  if (rng.below(3) == 0) {
    int adj = d.add(rng.pick(kAdjs), "A", head, "NMOD");
    if (rng.below(4) == 0) d.add("rất", "R", adj, "AMOD");
  }
  if (allow_coord && rng.below(7) == 0) {
    int conj = d.add("và", "C", head, "COORD");
    d.add(rng.pick(kNouns), "N", conj, "CONJ");
  }
  return head;
}

// Prepositional phrase attached to `head` with `label`; returns nothing of
// interest.  The preposition takes a noun object (POB).
void add_pp(Draft& d, Rng& rng, int head, const std::string& label) {
  int prep = d.add(rng.pick(kPreps), "E", head, label);
  if (rng.below(2) == 0) {
    d.add(rng.pick(kProper), "Np", prep, "POB");
  } else {
    d.add(rng.pick(kNouns), "N", prep, "POB");
  }
}

Sentence example_sentence() {
  Draft d;
  d.add("Hai", "M", 2, "DET");
  d.add("kịch_bản", "N", 4, "SUB");
  d.add("mới", "A", 2, "NMOD");
  d.add("mô_tả", "V", 0, "ROOT");
  d.add("cuộc_sống", "N", 4, "DOB");
  d.add("hiện_đại", "A", 5, "NMOD");
  d.add(".", "CH", 4, "PUNCT");
  return d.s;
}

Sentence make_sentence(Rng& rng) {
  Draft d;
  int pattern = static_cast<int>(rng.below(10));

  if (pattern == 0) {
    // Copula: SUBJ là NP-PRD .
    int subj = add_np(d, rng);
    int verb = d.add("là", "V", 0, "ROOT");
    d.s.token(subj).head = verb;
    d.s.token(subj).deprel = "SUB";
    int prd = add_np(d, rng);
    d.s.token(prd).head = verb;
    d.s.token(prd).deprel = "PRD";
    d.add(".", "CH", verb, "PUNCT");
    return d.s;
  }

  if (pattern == 1) {
    // Ditransitive: SUBJ V DOB cho IOB .
    int subj = add_np(d, rng, false);
    int verb = d.add(rng.pick(kGiveVerbs), "V", 0, "ROOT");
    d.s.token(subj).head = verb;
    d.s.token(subj).deprel = "SUB";
    int dob = add_np(d, rng, false);
    d.s.token(dob).head = verb;
    d.s.token(dob).deprel = "DOB";
    int cho = d.add("cho", "E", verb, "IOB");
    int iob = add_np(d, rng, false);
    d.s.token(iob).head = cho;
    d.s.token(iob).deprel = "POB";
    d.add(".", "CH", verb, "PUNCT");
    return d.s;
  }

  if (pattern == 2) {
    // Intransitive with a verb-attached PP, labeled per the verb's class.
    int subj = add_np(d, rng);
    int adv = rng.below(2) == 0 ? d.add(rng.pick(kAdverbs), "R", 0, "_") : -1;
    size_t verb_index = rng.below(kVerbs.size());
    int verb = d.add(kVerbs[verb_index], "V", 0, "ROOT");
    d.s.token(subj).head = verb;
    d.s.token(subj).deprel = "SUB";
    if (adv > 0) {
      d.s.token(adv).head = verb;
      d.s.token(adv).deprel = "VMOD";
    }
    add_pp(d, rng, verb, verb_pp_label(verb_index));
    d.add(".", "CH", verb, "PUNCT");
    return d.s;
  }

  // Transitive patterns.
  bool with_pp = pattern <= 6;
  // Subcategorization-driven PPs keep the object bare so the verb stays
  // inside a tagger's two-token form window at the preposition.
  bool class_driven = with_pp && rng.below(10) < 7;
  int subj = add_np(d, rng);
  int adv = rng.below(3) == 0 ? d.add(rng.pick(kAdverbs), "R", 0, "_") : -1;
  size_t verb_index = rng.below(kVerbs.size());
  int verb = d.add(kVerbs[verb_index], "V", 0, "ROOT");
  d.s.token(subj).head = verb;
  d.s.token(subj).deprel = "SUB";
  if (adv > 0) {
    d.s.token(adv).head = verb;
    d.s.token(adv).deprel = "VMOD";
  }
  int obj;
  if (class_driven) {
    bool pronoun = rng.below(5) == 0;
    obj = d.add(pronoun ? rng.pick(kPronouns) : rng.pick(kNouns), pronoun ? "P" : "N", verb,
                "DOB");
  } else {
    obj = add_np(d, rng);
    d.s.token(obj).head = verb;
    d.s.token(obj).deprel = "DOB";
  }

  if (with_pp) {
    if (class_driven) {
      if (verb_attaches_pp(verb_index)) {
        add_pp(d, rng, verb, verb_pp_label(verb_index));
      } else {
        add_pp(d, rng, obj, "NMOD");
      }
    } else if (rng.coin()) {
      // Hidden coin: unpredictable for parser and tagger alike.
      add_pp(d, rng, obj, "NMOD");
    } else {
      add_pp(d, rng, verb, rng.coin() ? "VMOD" : "LOC");
    }
  }
  d.add(".", "CH", verb, "PUNCT");
  return d.s;
}

// Extraposed subject modifier producing one crossing arc.
Sentence make_nonprojective(Rng& rng) {
  Draft d;
  int subj = d.add(rng.pick(kNouns), "N", 0, "_");
  int adv = rng.below(2) == 0 ? d.add(rng.pick(kAdverbs), "R", 0, "_") : -1;
  int verb = d.add(rng.pick(kVerbs), "V", 0, "ROOT");
  d.s.token(subj).head = verb;
  d.s.token(subj).deprel = "SUB";
  if (adv > 0) {
    d.s.token(adv).head = verb;
    d.s.token(adv).deprel = "VMOD";
  }
  d.add(rng.pick(kNouns), "N", verb, "DOB");
  d.add(rng.pick(kAdjs), "A", subj, "NMOD");  // crosses the ROOT and DOB arcs
  d.add(".", "CH", verb, "PUNCT");
  return d.s;
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_path = argc > 1 ? argv[1] : "data/toy.conllx";
  int target = argc > 2 ? std::atoi(argv[2]) : 620;
  uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 20240601;

  Rng rng(seed);
  std::vector<Sentence> corpus;
  corpus.push_back(example_sentence());
  while (static_cast<int>(corpus.size()) < target) {
    // Non-projective sentences make up about 4.5% of the corpus.
    if (rng.below(1000) < 45) {
      corpus.push_back(make_nonprojective(rng));
    } else {
      corpus.push_back(make_sentence(rng));
    }
  }

  long nonproj = 0;
  for (const Sentence& s : corpus) {
    if (!is_valid_tree(s)) {
      std::cerr << "generator bug: invalid tree\n";
      return 1;
    }
    if (!is_projective(s)) ++nonproj;
  }
  write_conllx_file(corpus, out_path);
  std::cerr << "wrote " << corpus.size() << " sentences (" << nonproj << " non-projective) to "
            << out_path << "\n";
  return 0;
}
