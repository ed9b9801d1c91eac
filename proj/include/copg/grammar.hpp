#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "copg/opm.hpp"

namespace copg {

// Element of the total alphabet V = terminals ∪ nonterminals.
struct Sym {
  bool is_term = true;
  std::string name;

  friend bool operator==(const Sym&, const Sym&) = default;
  friend auto operator<=>(const Sym&, const Sym&) = default;
};

inline Sym term(std::string n) { return Sym{true, std::move(n)}; }
inline Sym nonterm(std::string n) { return Sym{false, std::move(n)}; }

using VStr = std::vector<Sym>;

std::string to_string(const Sym& s);
std::string to_string(const VStr& s);  // symbol names concatenated

// One item of a rule right-hand side: a terminal, a nonterminal, or a
// parenthesized repetition group (one or more iterations of its content).
struct RhsItem {
  enum class Kind { Term, NonTerm, Group };
  Kind kind = Kind::Term;
  std::string name;            // Term / NonTerm
  std::vector<RhsItem> items;  // Group content

  friend bool operator==(const RhsItem&, const RhsItem&) = default;
};

using Rhs = std::vector<RhsItem>;

RhsItem rterm(std::string n);
RhsItem rnonterm(std::string n);
RhsItem rgroup(Rhs items);

struct Rule {
  std::string lhs;
  Rhs rhs;  // empty only for the designated ε-rule

  friend bool operator==(const Rule&, const Rule&) = default;
};

// Cyclic operator grammar. Rule order is significant: the labeled parser's
// backtracking uses declaration order as its tie-break.
struct Copg {
  std::vector<std::string> terminals;
  std::vector<std::string> nonterminals;
  std::vector<Rule> rules;
  std::vector<std::string> axioms;

  bool is_terminal(const std::string& s) const;
  bool is_nonterminal(const std::string& s) const;
  // Index of the designated ε-rule, if any.
  std::optional<std::size_t> epsilon_rule() const;
};

struct Violation {
  int rule;  // index into rules, or -1 for grammar-level problems
  int position;
  std::string message;
};

std::string format_violations(const Copg& g, const std::vector<Violation>& vs);

// Empty result iff g is a well-formed cyclic operator grammar: operator form
// everywhere, groups nonempty and ending in a terminal, ε-rule discipline.
std::vector<Violation> validate(const Copg& g);

// Erases group structure (each group contributes one iteration).
VStr flatten(const Rhs& rhs);

// Replaces every group by two copies of its (recursively expanded) content.
// Two iterations expose every adjacent pair a repetition can create.
VStr double_expand(const Rhs& rhs);

struct TerminalSets {
  std::map<std::string, std::set<std::string>> left, right;
};

// Least fixpoint of the left/right terminal-set equations over flattened
// right-hand sides.
TerminalSets terminal_sets(const Copg& g);

// Rule indices contributing each relation of each cell, for conflict reports.
using OpmContributors = std::map<std::pair<std::string, std::string>, std::set<int>>;

// Precedence matrix of the grammar. Cells may be multi-valued; the grammar is
// a C-OPG iff the result is conflict-free.
Opm compute_opm(const Copg& g, OpmContributors* contributors = nullptr);

// Finite recognizer compiled from a rhs expression; accepts exactly the
// strings over V the expression denotes. States are opaque ints.
class RhsRecognizer {
 public:
  explicit RhsRecognizer(const Rhs& rhs);

  std::vector<int> start() const;
  std::vector<int> advance(const std::vector<int>& states, const Sym& sym) const;
  bool any_accepting(const std::vector<int>& states) const;
  bool matches(const VStr& s) const;
  static bool intersects(const RhsRecognizer& a, const RhsRecognizer& b);

 private:
  std::vector<std::map<Sym, std::vector<int>>> step_;
  std::vector<bool> accept_;
};

// Membership of a string over V in the language of a rhs expression.
bool rhs_matches(const Rhs& rhs, const VStr& s);

struct BdReport {
  bool bd = true;
  // Pairs of rule indices with distinct lhs whose rhs languages intersect.
  std::vector<std::pair<int, int>> collisions;
};

// Backward determinism as rhs-language disjointness, decided via product
// automata over the compiled rhs recognizers.
BdReport is_bd(const Copg& g);

using Word = std::vector<std::string>;

// Exactly the sentences of length <= maxlen. Sound because every group
// iteration contributes at least one terminal, so group expansion can be
// capped at maxlen repetitions before exhaustive derivation.
std::set<Word> enumerate_language(const Copg& g, std::size_t maxlen);

// Same bound, derivations started from a single nonterminal.
std::set<Word> language_of(const Copg& g, const std::string& nt, std::size_t maxlen);

}  // namespace copg
