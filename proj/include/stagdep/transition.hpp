// Arc-eager transition system: configurations, legality, application,
// static oracle and oracle sequences.
#pragma once

#include <string>
#include <vector>

#include "stagdep/conllx.hpp"

namespace stagdep {

enum class TransitionKind { Shift, Reduce, LeftArc, RightArc };

struct Transition {
  TransitionKind kind = TransitionKind::Shift;
  std::string label;  // arc transitions only

  static Transition shift() { return {TransitionKind::Shift, ""}; }
  static Transition reduce() { return {TransitionKind::Reduce, ""}; }
  static Transition left_arc(std::string l) { return {TransitionKind::LeftArc, std::move(l)}; }
  static Transition right_arc(std::string l) { return {TransitionKind::RightArc, std::move(l)}; }

  bool operator==(const Transition& o) const { return kind == o.kind && label == o.label; }

  // "SHIFT", "REDUCE", "LEFT_ARC:label", "RIGHT_ARC:label".
  std::string to_string() const;
  static Transition from_string(const std::string& s);
};

struct Arc {
  int head = 0;
  int dep = 0;
  std::string label;

  bool operator==(const Arc& o) const {
    return head == o.head && dep == o.dep && label == o.label;
  }
};

// Parser state.  Values are immutable: apply() returns a new configuration.
// Node 0 sits at the stack bottom and is never removed.
class ParserConfig {
 public:
  static ParserConfig initial(int n);  // stack [0], buffer [1..n], no arcs

  int n() const { return n_; }
  const std::vector<int>& stack() const { return stack_; }
  const std::vector<int>& buffer() const { return buffer_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  bool buffer_empty() const { return buffer_.empty(); }
  // Stack item k from the top / buffer item k from the front; -1 when absent.
  int stack_at(int k) const;
  int buffer_at(int k) const;

  // Head / arc label of a node in the current arc set; -1 / "" when unattached.
  int head_of(int node) const { return head_[static_cast<size_t>(node)]; }
  const std::string& label_of(int node) const { return label_[static_cast<size_t>(node)]; }
  bool has_head(int node) const { return head_of(node) >= 0; }
  // Leftmost / rightmost dependent of a node in the current arcs; -1 when none.
  int leftmost_dep(int node) const;
  int rightmost_dep(int node) const;

 private:
  std::vector<int> stack_;   // top = back
  std::vector<int> buffer_;  // front = [0]
  std::vector<Arc> arcs_;
  std::vector<int> head_;          // per node id, -1 = none
  std::vector<std::string> label_;
  int n_ = 0;

  friend ParserConfig apply(const ParserConfig&, const Transition&);
};

bool legal(const ParserConfig& c, const Transition& t);

// Throws std::logic_error naming the violated precondition when illegal.
ParserConfig apply(const ParserConfig& c, const Transition& t);

// The transition that keeps the derivation consistent with the gold tree.
// Only defined while the buffer is non-empty.
Transition static_oracle(const ParserConfig& c, const Sentence& gold);

// Full derivation whose replay reproduces the gold arc set exactly.
// Throws DataError for non-projective input.
std::vector<Transition> oracle_sequence(const Sentence& gold);

// Debug serialization: one transition per line ("SHIFT", "LEFT_ARC:SUB", ...).
std::string transitions_to_lines(const std::vector<Transition>& seq);
std::vector<Transition> transitions_from_lines(const std::string& text);

}  // namespace stagdep
