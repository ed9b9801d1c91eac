#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "copg/grammar.hpp"
#include "copg/opa.hpp"

namespace copg {

// --- grammar -> automaton ----------------------------------------------------

// Bounded expansion set of a rhs expression: every repetition group unrolled
// once or twice, inner groups first, choices combined by cross product.
std::set<VStr> tilde_of(const Rhs& rhs);

// Group-erased form of a rhs.
VStr hat_of(const Rhs& rhs);

std::set<VStr> tilde_set(const Copg& g);  // union over non-empty rules
std::set<VStr> hat_set(const Copg& g);

// Prefixes, ending with a terminal, of the bounded expansions.
std::set<VStr> prefix_set(const Copg& g);

struct ConvReport {
  std::size_t state_count = 0;
  std::size_t prefix_count = 0;
  std::size_t nonterminal_count = 0;
  // structural bound (1 + |P| + |N|) * (1 + |P|) on the state count
  std::size_t state_bound = 0;
};

// Equivalent automaton over the same matrix. States are pairs: the prefix of
// the rhs under construction and the prefix previously under construction,
// generated lazily from (ε,ε) by transition closure. Shifts that would append
// a second adjacent copy of a repetition-group body cut it back to one copy.
Opa grammar_to_opa(const Copg& g, ConvReport* report = nullptr);

// --- automaton -> grammar ----------------------------------------------------

struct GapChoice {
  bool present = false;
  StateId entry = -1, exit = -1;  // support endpoints of the nested chain

  friend bool operator==(const GapChoice&, const GapChoice&) = default;
  friend auto operator<=>(const GapChoice&, const GapChoice&) = default;
};

// One enumerated support skeleton: chain context, spine, start state, per-gap
// endpoint choices, arrival states after the push and each shift, and the
// state after the final pop.
struct EssentialSupport {
  std::string left, right;
  std::vector<std::string> spine;
  StateId q0 = -1;
  std::vector<GapChoice> gaps;    // spine.size() + 1
  std::vector<StateId> arrivals;  // spine.size()
  StateId qend = -1;

  friend bool operator==(const EssentialSupport&, const EssentialSupport&) = default;
  friend auto operator<=>(const EssentialSupport&, const EssentialSupport&) = default;
};

// All support skeletons in which every annotated spine edge occurs at most
// twice, so that every cyclic behavior appears at most doubled. Gap endpoint
// choices range over pairs realizable by some support (a saturation
// precomputation). Canonically sorted.
std::vector<EssentialSupport> essential_supports(const Opa& a);

// Equivalent cyclic grammar: one rule per enumerated support with doubled
// cyclic segments re-folded into repetition groups, nonterminals the
// (context, state, state, context) tuples, useless symbols removed.
Copg opa_to_grammar(const Opa& a);

}  // namespace copg
