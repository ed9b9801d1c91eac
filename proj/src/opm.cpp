#include "copg/opm.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "copg/text_util.hpp"

namespace copg {

const char* rel_glyph(PrecRel r) {
  switch (r) {
    case PrecRel::Yields: return "⋖";  // ⋖
    case PrecRel::Equals: return "⩵";  // ⩵
    case PrecRel::Takes: return "⋗";   // ⋗
  }
  return "?";
}

char rel_ascii(PrecRel r) {
  switch (r) {
    case PrecRel::Yields: return '<';
    case PrecRel::Equals: return '=';
    case PrecRel::Takes: return '>';
  }
  return '?';
}

std::optional<PrecRel> rel_from_ascii(char c) {
  switch (c) {
    case '<': return PrecRel::Yields;
    case '=': return PrecRel::Equals;
    case '>': return PrecRel::Takes;
  }
  return std::nullopt;
}

Opm::Opm(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {
  n_ = static_cast<int>(alphabet_.size());
  for (int i = 0; i < n_; ++i) {
    if (alphabet_[i] == kDelim)
      throw std::invalid_argument("the delimiter # cannot be an alphabet symbol");
    if (alphabet_[i].empty())
      throw std::invalid_argument("empty terminal name");
    if (!index_.emplace(alphabet_[i], i).second)
      throw std::invalid_argument("duplicate terminal: " + alphabet_[i]);
  }
  cells_.assign(static_cast<std::size_t>(n_ + 1) * (n_ + 1), 0);
}

bool Opm::has_symbol(const std::string& sym) const {
  return sym == kDelim || index_.count(sym) > 0;
}

int Opm::id_of(const std::string& sym) const {
  if (sym == kDelim) return n_;
  auto it = index_.find(sym);
  if (it == index_.end()) throw std::domain_error("symbol outside alphabet: " + sym);
  return it->second;
}

const std::string& Opm::name_of(int id) const {
  static const std::string delim = kDelim;
  if (id == n_) return delim;
  return alphabet_.at(id);
}

void Opm::add(const std::string& a, const std::string& b, PrecRel r) {
  int ia = id_of(a), ib = id_of(b);
  if (ia == n_ && ib == n_ && r != PrecRel::Equals)
    throw std::invalid_argument("the (#,#) cell may only hold the equals relation");
  cells_[idx(ia, ib)] |= static_cast<std::uint8_t>(1u << static_cast<int>(r));
}

std::vector<PrecRel> Opm::cell(const std::string& a, const std::string& b) const {
  std::uint8_t m = cells_[idx(id_of(a), id_of(b))];
  std::vector<PrecRel> out;
  for (int r = 0; r < 3; ++r)
    if (m & (1u << r)) out.push_back(static_cast<PrecRel>(r));
  return out;
}

bool Opm::conflict_free() const {
  for (std::uint8_t m : cells_)
    if (__builtin_popcount(m) > 1) return false;
  return true;
}

std::vector<OpmConflict> Opm::conflicts() const {
  std::vector<OpmConflict> out;
  for (int a = 0; a <= n_; ++a)
    for (int b = 0; b <= n_; ++b) {
      std::uint8_t m = cells_[idx(a, b)];
      if (__builtin_popcount(m) > 1) {
        OpmConflict c{name_of(a), name_of(b), {}};
        for (int r = 0; r < 3; ++r)
          if (m & (1u << r)) c.rels.push_back(static_cast<PrecRel>(r));
        out.push_back(std::move(c));
      }
    }
  return out;
}

std::optional<PrecRel> Opm::rel_by_id(int a, int b) const {
  std::uint8_t m = cells_[idx(a, b)];
  if (m == 0) return std::nullopt;
  for (int r = 0; r < 3; ++r)
    if (m & (1u << r)) return static_cast<PrecRel>(r);
  return std::nullopt;
}

std::optional<PrecRel> Opm::lookup(const std::string& a, const std::string& b) const {
  if (!conflict_free())
    throw std::logic_error("lookup on a matrix with precedence conflicts");
  int ia = id_of(a), ib = id_of(b);
  std::uint8_t m = cells_[idx(ia, ib)];
  if (m == 0) return std::nullopt;
  for (int r = 0; r < 3; ++r)
    if (m & (1u << r)) return static_cast<PrecRel>(r);
  return std::nullopt;
}

bool Opm::is_total() const {
  for (std::uint8_t m : cells_)
    if (m == 0) return false;
  return true;
}

std::optional<std::vector<std::string>> Opm::eq_cycle() const {
  // DFS over the Equals digraph restricted to the alphabet.
  std::vector<int> color(n_, 0);  // 0 white, 1 on stack, 2 done
  std::vector<int> stack;
  std::function<std::optional<std::vector<std::string>>(int)> dfs =
      [&](int v) -> std::optional<std::vector<std::string>> {
    color[v] = 1;
    stack.push_back(v);
    for (int w = 0; w < n_; ++w) {
      if (!(cells_[idx(v, w)] & (1u << static_cast<int>(PrecRel::Equals)))) continue;
      if (color[w] == 1) {
        std::vector<std::string> cyc;
        auto it = std::find(stack.begin(), stack.end(), w);
        for (; it != stack.end(); ++it) cyc.push_back(alphabet_[*it]);
        cyc.push_back(alphabet_[w]);
        return cyc;
      }
      if (color[w] == 0) {
        if (auto c = dfs(w)) return c;
      }
    }
    stack.pop_back();
    color[v] = 2;
    return std::nullopt;
  };
  for (int v = 0; v < n_; ++v)
    if (color[v] == 0)
      if (auto c = dfs(v)) return c;
  return std::nullopt;
}

Opm Opm::unite(const Opm& m1, const Opm& m2) {
  std::vector<std::string> alpha = m1.alphabet_;
  for (const auto& s : m2.alphabet_)
    if (std::find(alpha.begin(), alpha.end(), s) == alpha.end()) alpha.push_back(s);
  Opm out(alpha);
  auto copy_in = [&](const Opm& m) {
    for (int a = 0; a <= m.n_; ++a)
      for (int b = 0; b <= m.n_; ++b) {
        std::uint8_t mask = m.cells_[m.idx(a, b)];
        if (!mask) continue;
        int ia = out.id_of(m.name_of(a));
        int ib = out.id_of(m.name_of(b));
        out.cells_[out.idx(ia, ib)] |= mask;
      }
  };
  copy_in(m1);
  copy_in(m2);
  return out;
}

bool Opm::compatible(const Opm& m1, const Opm& m2) {
  return unite(m1, m2).conflict_free();
}

bool Opm::same_cells(const Opm& other) const {
  std::set<std::string> a1(alphabet_.begin(), alphabet_.end());
  std::set<std::string> a2(other.alphabet_.begin(), other.alphabet_.end());
  if (a1 != a2) return false;
  for (int a = 0; a <= n_; ++a)
    for (int b = 0; b <= n_; ++b) {
      int oa = other.id_of(name_of(a));
      int ob = other.id_of(name_of(b));
      if (cells_[idx(a, b)] != other.cells_[other.idx(oa, ob)]) return false;
    }
  return true;
}

std::size_t Opm::filled_cells() const {
  std::size_t k = 0;
  for (std::uint8_t m : cells_)
    if (m) ++k;
  return k;
}

nlohmann::json Opm::to_json() const {
  nlohmann::json j;
  j["alphabet"] = alphabet_;
  nlohmann::json cells = nlohmann::json::array();
  for (int a = 0; a <= n_; ++a)
    for (int b = 0; b <= n_; ++b) {
      std::uint8_t m = cells_[idx(a, b)];
      for (int r = 0; r < 3; ++r)
        if (m & (1u << r))
          cells.push_back({{"a", name_of(a)},
                           {"b", name_of(b)},
                           {"rel", std::string(1, rel_ascii(static_cast<PrecRel>(r)))}});
    }
  j["cells"] = std::move(cells);
  return j;
}

Opm Opm::from_json(const nlohmann::json& j) {
  Opm out(j.at("alphabet").get<std::vector<std::string>>());
  for (const auto& c : j.at("cells")) {
    std::string rel = c.at("rel").get<std::string>();
    if (rel.size() != 1)
      throw std::invalid_argument("rel must be one of <, =, >");
    auto r = rel_from_ascii(rel[0]);
    if (!r) throw std::invalid_argument("rel must be one of <, =, >");
    out.add(c.at("a").get<std::string>(), c.at("b").get<std::string>(), *r);
  }
  return out;
}

std::string Opm::to_table() const {
  std::vector<std::string> names;
  for (int i = 0; i <= n_; ++i) names.push_back(name_of(i));
  std::size_t roww = 1;
  for (const auto& s : names) roww = std::max(roww, display_width(s));
  auto pad = [](const std::string& s, std::size_t w) {
    std::string out = s;
    for (std::size_t i = display_width(s); i < w; ++i) out += ' ';
    return out;
  };
  auto cell_str = [&](int a, int b) {
    std::uint8_t m = cells_[idx(a, b)];
    std::string s;
    for (int r = 0; r < 3; ++r)
      if (m & (1u << r)) s += rel_glyph(static_cast<PrecRel>(r));
    return s;
  };
  std::size_t colw = 1;
  for (int a = 0; a <= n_; ++a)
    for (int b = 0; b <= n_; ++b) colw = std::max(colw, display_width(cell_str(a, b)));
  for (const auto& s : names) colw = std::max(colw, display_width(s));

  std::ostringstream out;
  out << pad("", roww);
  for (int b = 0; b <= n_; ++b) out << " | " << pad(names[b], colw);
  out << "\n";
  for (int a = 0; a <= n_; ++a) {
    out << pad(names[a], roww);
    for (int b = 0; b <= n_; ++b) out << " | " << pad(cell_str(a, b), colw);
    out << "\n";
  }
  return out.str();
}

}  // namespace copg
