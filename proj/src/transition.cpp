#include "stagdep/transition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace stagdep {

std::string Transition::to_string() const {
  switch (kind) {
    case TransitionKind::Shift: return "SHIFT";
    case TransitionKind::Reduce: return "REDUCE";
    case TransitionKind::LeftArc: return "LEFT_ARC:" + label;
    case TransitionKind::RightArc: return "RIGHT_ARC:" + label;
  }
  return "SHIFT";
}

Transition Transition::from_string(const std::string& s) {
  if (s == "SHIFT") return shift();
  if (s == "REDUCE") return reduce();
  if (starts_with(s, "LEFT_ARC:")) return left_arc(s.substr(9));
  if (starts_with(s, "RIGHT_ARC:")) return right_arc(s.substr(10));
  throw DataError("unknown transition '" + s + "'");
}

ParserConfig ParserConfig::initial(int n) {
  if (n < 1) throw std::invalid_argument("initial_config: sentence length must be >= 1");
  ParserConfig c;
  c.n_ = n;
  c.stack_.push_back(0);
  c.buffer_.resize(static_cast<size_t>(n));
  std::iota(c.buffer_.begin(), c.buffer_.end(), 1);
  c.head_.assign(static_cast<size_t>(n) + 1, -1);
  c.label_.assign(static_cast<size_t>(n) + 1, "");
  return c;
}

int ParserConfig::stack_at(int k) const {
  int size = static_cast<int>(stack_.size());
  if (k < 0 || k >= size) return -1;
  return stack_[static_cast<size_t>(size - 1 - k)];
}

int ParserConfig::buffer_at(int k) const {
  if (k < 0 || k >= static_cast<int>(buffer_.size())) return -1;
  return buffer_[static_cast<size_t>(k)];
}

int ParserConfig::leftmost_dep(int node) const {
  int best = -1;
  for (const Arc& a : arcs_) {
    if (a.head == node && (best < 0 || a.dep < best)) best = a.dep;
  }
  return best;
}

int ParserConfig::rightmost_dep(int node) const {
  int best = -1;
  for (const Arc& a : arcs_) {
    if (a.head == node && a.dep > best) best = a.dep;
  }
  return best;
}

bool legal(const ParserConfig& c, const Transition& t) {
  int top = c.stack_at(0);
  switch (t.kind) {
    case TransitionKind::Shift:
      return !c.buffer_empty();
    case TransitionKind::LeftArc:
      return !c.buffer_empty() && top > 0 && !c.has_head(top);
    case TransitionKind::RightArc:
      return !c.buffer_empty() && top >= 0;
    case TransitionKind::Reduce:
      return top > 0 && c.has_head(top);
  }
  return false;
}

namespace {

[[noreturn]] void illegal(const ParserConfig& c, const Transition& t) {
  std::string why;
  int top = c.stack_at(0);
  switch (t.kind) {
    case TransitionKind::Shift:
      why = "SHIFT requires a non-empty buffer";
      break;
    case TransitionKind::LeftArc:
      why = c.buffer_empty() ? "LEFT_ARC requires a non-empty buffer"
            : top <= 0       ? "LEFT_ARC cannot target the root node"
                             : "LEFT_ARC requires a headless stack top";
      break;
    case TransitionKind::RightArc:
      why = "RIGHT_ARC requires a non-empty buffer";
      break;
    case TransitionKind::Reduce:
      why = top <= 0 ? "REDUCE cannot pop the root node"
                     : "REDUCE requires the stack top to have a head";
      break;
  }
  throw std::logic_error("illegal transition " + t.to_string() + ": " + why);
}

}  // namespace

ParserConfig apply(const ParserConfig& c, const Transition& t) {
  if (!legal(c, t)) illegal(c, t);
  ParserConfig next = c;
  switch (t.kind) {
    case TransitionKind::Shift: {
      next.stack_.push_back(next.buffer_.front());
      next.buffer_.erase(next.buffer_.begin());
      break;
    }
    case TransitionKind::LeftArc: {
      int dep = next.stack_.back();
      int head = next.buffer_.front();
      next.stack_.pop_back();
      next.arcs_.push_back({head, dep, t.label});
      next.head_[static_cast<size_t>(dep)] = head;
      next.label_[static_cast<size_t>(dep)] = t.label;
      break;
    }
    case TransitionKind::RightArc: {
      int head = next.stack_.back();
      int dep = next.buffer_.front();
      next.buffer_.erase(next.buffer_.begin());
      next.stack_.push_back(dep);
      next.arcs_.push_back({head, dep, t.label});
      next.head_[static_cast<size_t>(dep)] = head;
      next.label_[static_cast<size_t>(dep)] = t.label;
      break;
    }
    case TransitionKind::Reduce: {
      next.stack_.pop_back();
      break;
    }
  }
  return next;
}

Transition static_oracle(const ParserConfig& c, const Sentence& gold) {
  if (c.buffer_empty()) throw std::logic_error("static_oracle: buffer is empty");
  int top = c.stack_at(0);
  int front = c.buffer_at(0);
  if (top > 0 && gold.token(top).head == front) {
    return Transition::left_arc(gold.token(top).deprel);
  }
  if (gold.token(front).head == top) {
    return Transition::right_arc(gold.token(front).deprel);
  }
  // Reduce once the top is attached and the front relates to something
  // further down the stack (or to the root).
  if (c.has_head(top)) {
    for (int k = 0; k < top; ++k) {
      bool gold_arc = (k >= 1 && gold.token(k).head == front) || gold.token(front).head == k;
      if (gold_arc) return Transition::reduce();
    }
  }
  return Transition::shift();
}

std::vector<Transition> oracle_sequence(const Sentence& gold) {
  if (gold.empty()) throw DataError("oracle_sequence: empty sentence");
  if (!is_projective(gold)) {
    throw DataError("oracle_sequence: non-projective sentence");
  }
  std::vector<Transition> seq;
  ParserConfig c = ParserConfig::initial(gold.size());
  while (!c.buffer_empty()) {
    Transition t = static_oracle(c, gold);
    c = apply(c, t);
    seq.push_back(std::move(t));
  }
  // Replay must reproduce the gold arcs exactly; anything else signals a
  // tree the oracle cannot derive.
  for (const Token& tok : gold.tokens) {
    if (c.head_of(tok.id) != tok.head || c.label_of(tok.id) != tok.deprel) {
      throw DataError("oracle_sequence: derivation does not reproduce the gold tree");
    }
  }
  return seq;
}

std::string transitions_to_lines(const std::vector<Transition>& seq) {
  std::string out;
  for (const Transition& t : seq) {
    out += t.to_string();
    out += '\n';
  }
  return out;
}

std::vector<Transition> transitions_from_lines(const std::string& text) {
  std::vector<Transition> seq;
  for (const std::string& line : split(text, '\n')) {
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    seq.push_back(Transition::from_string(std::string(sv)));
  }
  return seq;
}

}  // namespace stagdep
