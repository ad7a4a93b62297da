// CoNLL-X data model: tokens, sentences, reading/writing, tree checks.
//
// The on-disk format is 10 tab-separated columns per token
// (ID FORM LEMMA CPOSTAG POSTAG FEATS HEAD DEPREL PHEAD PDEPREL),
// sentences separated by blank lines.  Columns 9-10 are ignored on read
// and always written as "_".  Supertag annotations travel in FEATS as
// "stag=<TAG>"; the reader strips them out of `feats` into the requested
// annotation slot, the writer merges them back (stag entry last).
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stagdep/util.hpp"

namespace stagdep {

struct Token {
  int id = 0;  // 1-based sentence position
  std::string form;
  std::string lemma = "_";
  std::string cpos = "_";
  std::string pos = "_";
  std::string feats = "_";  // FEATS column without any stag= entry
  int head = -1;            // 0 = artificial root, -1 = unattached
  std::string deprel = "_";
  std::optional<std::string> gold_supertag;
  std::optional<std::string> pred_supertag;

  bool has_head() const { return head >= 0; }
};

struct Sentence {
  std::vector<Token> tokens;

  int size() const { return static_cast<int>(tokens.size()); }
  bool empty() const { return tokens.empty(); }

  // 1-based access matching CoNLL token ids.
  const Token& token(int id) const { return tokens[static_cast<size_t>(id - 1)]; }
  Token& token(int id) { return tokens[static_cast<size_t>(id - 1)]; }
};

// Structural properties, reported independently; nothing is rejected here.
struct TreeReport {
  bool is_single_headed = false;
  bool is_acyclic = false;
  bool is_connected = false;
  std::vector<int> root_children;  // ids whose head is 0, ascending
  bool is_projective = false;
};

enum class StagField { None, Gold, Pred };

struct ReadOptions {
  // Reject sentences that are not valid dependency trees.  Disable when
  // reading unparsed input (HEAD/DEPREL may then be "_").
  bool require_tree = true;
  // Which annotation slot a FEATS "stag=" entry lands in.
  StagField stag_into = StagField::Gold;
};

struct WriteOptions {
  // Which annotation slot, if any, is serialized into FEATS as "stag=".
  StagField stag_from = StagField::None;
};

std::vector<Sentence> read_conllx(std::istream& in, const ReadOptions& opts = {});
std::vector<Sentence> read_conllx_file(const std::string& path, const ReadOptions& opts = {});
std::vector<Sentence> read_conllx_string(const std::string& text, const ReadOptions& opts = {});

void write_conllx(const std::vector<Sentence>& sentences, std::ostream& out,
                  const WriteOptions& opts = {});
void write_conllx_file(const std::vector<Sentence>& sentences, const std::string& path,
                       const WriteOptions& opts = {});
std::string to_conllx(const std::vector<Sentence>& sentences, const WriteOptions& opts = {});

TreeReport validate_tree(const Sentence& s);

// Single-headed, acyclic and connected (ignores projectivity).
bool is_valid_tree(const Sentence& s);

// True iff no two arcs cross; arcs to node 0 span [0, dependent].
// Throws DataError when s is not a valid tree.
bool is_projective(const Sentence& s);

struct Dependents {
  std::vector<int> left;   // ids < i, ascending
  std::vector<int> right;  // ids > i, ascending
};

// Dependents of node i (0 = artificial root).  Throws std::out_of_range
// when i is outside [0, n].
Dependents dependents(const Sentence& s, int i);

}  // namespace stagdep
