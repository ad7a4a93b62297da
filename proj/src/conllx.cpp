#include "stagdep/conllx.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stagdep {

namespace {

int parse_int_column(const std::string& text, const char* what, long line_no) {
  if (text.empty()) {
    throw DataError("line " + std::to_string(line_no) + ": empty " + what + " column");
  }
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw DataError("line " + std::to_string(line_no) + ": non-numeric " + what + " '" +
                      text + "'");
    }
  }
  return std::stoi(text);
}

// Splits FEATS into the stag= entry (if any) and the remaining pairs.
void split_feats(const std::string& raw, std::string* rest,
                 std::optional<std::string>* stag) {
  *rest = "_";
  stag->reset();
  if (raw == "_" || raw.empty()) return;
  std::vector<std::string> kept;
  for (const std::string& part : split(raw, '|')) {
    if (starts_with(part, "stag=")) {
      *stag = part.substr(5);
    } else {
      kept.push_back(part);
    }
  }
  if (!kept.empty()) *rest = join(kept, "|");
}

void check_sentence(const Sentence& s, long end_line) {
  int n = s.size();
  for (const Token& t : s.tokens) {
    if (t.head > n) {
      throw DataError("sentence ending at line " + std::to_string(end_line) + ": token " +
                      std::to_string(t.id) + " has head " + std::to_string(t.head) +
                      " beyond sentence length " + std::to_string(n));
    }
  }
  TreeReport report = validate_tree(s);
  if (!report.is_single_headed || !report.is_acyclic || !report.is_connected) {
    std::string defect = !report.is_single_headed ? "a token lacks a head"
                         : !report.is_acyclic     ? "the head relation contains a cycle"
                                                  : "not all tokens are reachable from the root";
    throw DataError("sentence ending at line " + std::to_string(end_line) +
                    ": not a valid dependency tree (" + defect + ")");
  }
}

}  // namespace

std::vector<Sentence> read_conllx(std::istream& in, const ReadOptions& opts) {
  std::vector<Sentence> sentences;
  Sentence current;
  std::string line;
  long line_no = 0;

  auto flush = [&](long end_line) {
    if (current.empty()) return;
    if (opts.require_tree) check_sentence(current, end_line);
    sentences.push_back(std::move(current));
    current = Sentence{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      flush(line_no - 1);
      continue;
    }
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 10) {
      throw DataError("line " + std::to_string(line_no) + ": expected 10 tab-separated columns, got " +
                      std::to_string(cols.size()));
    }
    Token tok;
    tok.id = parse_int_column(cols[0], "ID", line_no);
    if (tok.id != current.size() + 1) {
      throw DataError("line " + std::to_string(line_no) + ": non-contiguous token id " +
                      std::to_string(tok.id) + " (expected " + std::to_string(current.size() + 1) +
                      ")");
    }
    tok.form = cols[1];
    if (tok.form.empty()) {
      throw DataError("line " + std::to_string(line_no) + ": empty FORM column");
    }
    tok.lemma = cols[2];
    tok.cpos = cols[3];
    tok.pos = cols[4];
    std::optional<std::string> stag;
    split_feats(cols[5], &tok.feats, &stag);
    if (stag) {
      if (opts.stag_into == StagField::Pred) {
        tok.pred_supertag = std::move(stag);
      } else if (opts.stag_into == StagField::Gold) {
        tok.gold_supertag = std::move(stag);
      }
    }
    if (cols[6] == "_") {
      if (opts.require_tree) {
        throw DataError("line " + std::to_string(line_no) +
                        ": HEAD is '_' but a parsed tree is required");
      }
      tok.head = -1;
    } else {
      tok.head = parse_int_column(cols[6], "HEAD", line_no);
      if (tok.head == tok.id) {
        throw DataError("line " + std::to_string(line_no) + ": token is its own head");
      }
    }
    tok.deprel = cols[7];
    if (opts.require_tree && tok.deprel == "_") {
      throw DataError("line " + std::to_string(line_no) +
                      ": DEPREL is '_' but a parsed tree is required");
    }
    current.tokens.push_back(std::move(tok));
  }
  flush(line_no);
  return sentences;
}

std::vector<Sentence> read_conllx_file(const std::string& path, const ReadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return read_conllx(in, opts);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<Sentence> read_conllx_string(const std::string& text, const ReadOptions& opts) {
  std::istringstream in(text);
  return read_conllx(in, opts);
}

void write_conllx(const std::vector<Sentence>& sentences, std::ostream& out,
                  const WriteOptions& opts) {
  for (const Sentence& s : sentences) {
    for (const Token& t : s.tokens) {
      std::string feats = t.feats.empty() ? "_" : t.feats;
      const std::optional<std::string>* stag = nullptr;
      if (opts.stag_from == StagField::Gold) stag = &t.gold_supertag;
      if (opts.stag_from == StagField::Pred) stag = &t.pred_supertag;
      if (stag && stag->has_value()) {
        feats = (feats == "_") ? "stag=" + **stag : feats + "|stag=" + **stag;
      }
      out << t.id << '\t' << t.form << '\t' << (t.lemma.empty() ? "_" : t.lemma) << '\t'
          << (t.cpos.empty() ? "_" : t.cpos) << '\t' << (t.pos.empty() ? "_" : t.pos) << '\t'
          << feats << '\t';
      if (t.head < 0) {
        out << '_';
      } else {
        out << t.head;
      }
      out << '\t' << (t.deprel.empty() ? "_" : t.deprel) << "\t_\t_\n";
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed");
}

void write_conllx_file(const std::vector<Sentence>& sentences, const std::string& path,
                       const WriteOptions& opts) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  write_conllx(sentences, out, opts);
}

std::string to_conllx(const std::vector<Sentence>& sentences, const WriteOptions& opts) {
  std::ostringstream out;
  write_conllx(sentences, out, opts);
  return out.str();
}

namespace {

// Is `node` a descendant of `ancestor` under the head relation?
bool is_descendant(const Sentence& s, int node, int ancestor) {
  if (ancestor == 0) return true;  // everything hangs off the root
  int a = node;
  for (int steps = 0; steps <= s.size(); ++steps) {
    a = s.token(a).head;
    if (a == ancestor) return true;
    if (a <= 0) return false;
  }
  return false;
}

bool projective_impl(const Sentence& s) {
  // An arc (h, d) is projective iff every token strictly between h and d
  // is a descendant of h; the tree is projective iff all arcs are.
  for (const Token& t : s.tokens) {
    int lo = std::min(t.head, t.id);
    int hi = std::max(t.head, t.id);
    for (int k = lo + 1; k < hi; ++k) {
      if (!is_descendant(s, k, t.head)) return false;
    }
  }
  return true;
}

}  // namespace

TreeReport validate_tree(const Sentence& s) {
  TreeReport report;
  int n = s.size();

  report.is_single_headed = true;
  for (const Token& t : s.tokens) {
    if (t.head < 0 || t.head > n || t.head == t.id) report.is_single_headed = false;
    if (t.head == 0) report.root_children.push_back(t.id);
  }

  // Walk head chains; a chain that reaches node 0 is rooted, a chain that
  // revisits a token is a cycle.  state: 0 unseen, 1 in progress, 2 rooted,
  // 3 dead (cycle or broken link).
  std::vector<int> state(static_cast<size_t>(n) + 1, 0);
  state[0] = 2;
  report.is_acyclic = true;
  report.is_connected = true;
  for (int i = 1; i <= n; ++i) {
    if (state[static_cast<size_t>(i)] != 0) continue;
    std::vector<int> path;
    int a = i;
    while (a >= 1 && a <= n && state[static_cast<size_t>(a)] == 0) {
      state[static_cast<size_t>(a)] = 1;
      path.push_back(a);
      a = s.token(a).head;
    }
    int verdict;
    if (a >= 0 && a <= n && state[static_cast<size_t>(a)] == 2) {
      verdict = 2;
    } else if (a >= 1 && a <= n && state[static_cast<size_t>(a)] == 1) {
      verdict = 3;  // ran into our own path: cycle
      report.is_acyclic = false;
    } else {
      verdict = 3;  // out-of-range head or a known-dead chain
      if (a >= 1 && a <= n && state[static_cast<size_t>(a)] == 3) {
        // downstream of a dead chain; acyclicity not affected here
      }
    }
    if (verdict == 3) report.is_connected = false;
    for (int p : path) state[static_cast<size_t>(p)] = verdict;
  }

  bool valid = report.is_single_headed && report.is_acyclic && report.is_connected;
  report.is_projective = valid && projective_impl(s);
  return report;
}

bool is_valid_tree(const Sentence& s) {
  TreeReport r = validate_tree(s);
  return r.is_single_headed && r.is_acyclic && r.is_connected;
}

bool is_projective(const Sentence& s) {
  if (!is_valid_tree(s)) throw DataError("is_projective: not a valid dependency tree");
  return projective_impl(s);
}

Dependents dependents(const Sentence& s, int i) {
  if (i < 0 || i > s.size()) {
    throw std::out_of_range("dependents: node " + std::to_string(i) + " outside [0, " +
                            std::to_string(s.size()) + "]");
  }
  Dependents deps;
  for (const Token& t : s.tokens) {
    if (t.head != i) continue;
    if (t.id < i) {
      deps.left.push_back(t.id);
    } else {
      deps.right.push_back(t.id);
    }
  }
  return deps;
}

}  // namespace stagdep
