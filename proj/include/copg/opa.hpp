#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "copg/chain.hpp"
#include "copg/opm.hpp"
#include "json.hpp"

namespace copg {

using StateId = int;

struct StackSymbol {
  std::string symbol;
  StateId origin;  // state the automaton was in when the symbol was pushed

  friend bool operator==(const StackSymbol&, const StackSymbol&) = default;
};

// ⟨stack, state, remaining input⟩. The stack excludes the bottom marker; the
// input is represented by the full word plus a cursor, with an implicit
// trailing delimiter.
struct Configuration {
  std::vector<StackSymbol> stack;
  StateId state = -1;
  std::shared_ptr<const std::vector<std::string>> word;
  std::size_t pos = 0;

  const std::string& lookahead() const;  // "#" at the end
  std::string top_symbol() const;        // "#" on the bare bottom
};

enum class MoveKind { Push, Shift, Pop };

// Operator precedence automaton: push/shift/pop transition relations driven by
// the matrix. Immutable after construction; acceptance queries are safe to run
// concurrently.
class Opa {
 public:
  Opm opm;

  StateId add_state(const std::string& name);    // idempotent
  StateId state_id(const std::string& name) const;  // throws for unknown names
  const std::string& state_name(StateId s) const { return names_.at(s); }
  std::size_t state_count() const { return names_.size(); }
  const std::vector<std::string>& state_names() const { return names_; }

  void mark_initial(const std::string& name);
  void mark_final(const std::string& name);
  bool is_initial(StateId s) const;
  bool is_final(StateId s) const;
  const std::vector<StateId>& initial() const { return initial_; }
  const std::vector<StateId>& finals() const { return final_; }

  void add_push(const std::string& from, const std::string& sym, const std::string& to);
  void add_shift(const std::string& from, const std::string& sym, const std::string& to);
  void add_pop(const std::string& from, const std::string& label, const std::string& to);

  const std::vector<StateId>& push_targets(StateId s, const std::string& sym) const;
  const std::vector<StateId>& shift_targets(StateId s, const std::string& sym) const;
  const std::vector<StateId>& pop_targets(StateId s, StateId label) const;

  // Structural problems (transition endpoints, matrix conflicts), empty when
  // well formed.
  std::vector<std::string> check() const;

  nlohmann::json to_json() const;
  static Opa from_json(const nlohmann::json& j);

 private:
  std::vector<std::string> names_;
  std::map<std::string, StateId> ids_;
  std::vector<StateId> initial_, final_;
  std::map<std::pair<StateId, std::string>, std::vector<StateId>> push_, shift_;
  std::map<std::pair<StateId, StateId>, std::vector<StateId>> pop_;
};

// Successor configurations; the move kind is determined by the matrix alone,
// dead configurations yield the empty set.
std::vector<Configuration> step(const Opa& a, const Configuration& c);
std::optional<MoveKind> move_kind(const Opa& a, const Configuration& c);

struct AcceptResult {
  bool accepted = false;
  std::vector<Configuration> trace;  // initial-to-accepting witness run
};

// Breadth-first search over the configuration graph with visited-state
// deduplication.
AcceptResult accepts(const Opa& a, const std::vector<std::string>& word);

std::string format_config(const Opa& a, const Configuration& c);
// Three-column run table: stack | state | current input.
std::string format_trace(const Opa& a, const std::vector<Configuration>& trace);

// State path by which the automaton traverses a chain: the state before the
// initial push, the states after the push and after each shift, the state
// after the final pop, and one nested path per nonempty gap.
struct Support;
using SupportPtr = std::shared_ptr<const Support>;
struct Support {
  StateId start = -1;               // state entering the chain (pop label source)
  std::vector<StateId> states;      // after push a1, after each shift
  StateId end = -1;                 // after the final pop
  std::vector<SupportPtr> gaps;     // gaps.size() == states.size() + 1, null = empty
};

// Verifies that path is a support for chain c in a: push on the first spine
// symbol, shifts along the spine, recursive supports in the gaps, and the
// final pop labeled by the state after gap 0.
bool check_support(const Opa& a, const Chain& c, const Support& path);

}  // namespace copg
