#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace copg {

// The reserved string delimiter. It is never part of a user alphabet but may
// appear as a row/column of a precedence matrix.
inline constexpr const char* kDelim = "#";

enum class PrecRel : std::uint8_t { Yields = 0, Equals = 1, Takes = 2 };

const char* rel_glyph(PrecRel r);   // ⋖ ⩵ ⋗
char rel_ascii(PrecRel r);          // < = >
std::optional<PrecRel> rel_from_ascii(char c);

struct OpmConflict {
  std::string a, b;
  std::vector<PrecRel> rels;
};

// Operator precedence matrix: a partial map from ordered pairs over the
// alphabet plus the delimiter to sets of precedence relations. Cells may hold
// several relations while a matrix is being built (grammar extraction, unions);
// lookup() is only available once the matrix is conflict-free.
//
// Instances are immutable once construction finishes and safe for concurrent
// reads.
class Opm {
 public:
  Opm() = default;
  explicit Opm(std::vector<std::string> alphabet);

  // Symbols must belong to the alphabet or be the delimiter. Adding a (#,#)
  // relation other than Equals is rejected.
  void add(const std::string& a, const std::string& b, PrecRel r);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  bool has_symbol(const std::string& sym) const;  // alphabet or delimiter

  // Unique relation of a cell, or nullopt for an empty cell.
  // Throws std::domain_error for symbols outside the alphabet and
  // std::logic_error when the matrix has conflicts.
  std::optional<PrecRel> lookup(const std::string& a, const std::string& b) const;

  std::vector<PrecRel> cell(const std::string& a, const std::string& b) const;

  bool conflict_free() const;
  std::vector<OpmConflict> conflicts() const;

  // Every cell over (alphabet ∪ {#})² nonempty. Meaningful for conflict-free
  // matrices.
  bool is_total() const;

  // No terminal reaches itself through Equals edges (delimiter excluded).
  // Returns a witness cycle [a, ..., a] when cyclic.
  std::optional<std::vector<std::string>> eq_cycle() const;
  bool eq_acyclic() const { return !eq_cycle().has_value(); }

  // Cell-wise set union over the united alphabets.
  static Opm unite(const Opm& m1, const Opm& m2);
  static bool compatible(const Opm& m1, const Opm& m2);

  // Cell-for-cell equality; alphabets compared as sets.
  bool same_cells(const Opm& other) const;
  std::size_t filled_cells() const;

  // --- id-level interface used by the parsers -------------------------------
  int id_of(const std::string& sym) const;  // throws std::domain_error
  int delim_id() const { return n_; }
  const std::string& name_of(int id) const;
  std::uint8_t mask(int a, int b) const { return cells_[idx(a, b)]; }
  // Unique relation by ids; empty cell -> nullopt. Assumes conflict-free.
  std::optional<PrecRel> rel_by_id(int a, int b) const;

  nlohmann::json to_json() const;
  static Opm from_json(const nlohmann::json& j);
  std::string to_table() const;

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * (n_ + 1) + b; }

  std::vector<std::string> alphabet_;
  std::map<std::string, int> index_;
  std::vector<std::uint8_t> cells_;
  int n_ = 0;
};

}  // namespace copg
