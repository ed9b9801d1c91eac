#include "copg/opa.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "copg/text_util.hpp"

namespace copg {

static const std::vector<StateId> kNoTargets;

const std::string& Configuration::lookahead() const {
  static const std::string delim = kDelim;
  return pos < word->size() ? (*word)[pos] : delim;
}

std::string Configuration::top_symbol() const {
  return stack.empty() ? std::string(kDelim) : stack.back().symbol;
}

StateId Opa::add_state(const std::string& name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  StateId id = static_cast<StateId>(names_.size());
  names_.push_back(name);
  ids_[name] = id;
  return id;
}

StateId Opa::state_id(const std::string& name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) throw std::domain_error("unknown state: " + name);
  return it->second;
}

void Opa::mark_initial(const std::string& name) {
  StateId s = add_state(name);
  if (std::find(initial_.begin(), initial_.end(), s) == initial_.end()) initial_.push_back(s);
}

void Opa::mark_final(const std::string& name) {
  StateId s = add_state(name);
  if (std::find(final_.begin(), final_.end(), s) == final_.end()) final_.push_back(s);
}

bool Opa::is_initial(StateId s) const {
  return std::find(initial_.begin(), initial_.end(), s) != initial_.end();
}

bool Opa::is_final(StateId s) const {
  return std::find(final_.begin(), final_.end(), s) != final_.end();
}

void Opa::add_push(const std::string& from, const std::string& sym, const std::string& to) {
  auto& v = push_[{add_state(from), sym}];
  StateId t = add_state(to);
  if (std::find(v.begin(), v.end(), t) == v.end()) v.push_back(t);
}

void Opa::add_shift(const std::string& from, const std::string& sym, const std::string& to) {
  auto& v = shift_[{add_state(from), sym}];
  StateId t = add_state(to);
  if (std::find(v.begin(), v.end(), t) == v.end()) v.push_back(t);
}

void Opa::add_pop(const std::string& from, const std::string& label, const std::string& to) {
  auto& v = pop_[{add_state(from), add_state(label)}];
  StateId t = add_state(to);
  if (std::find(v.begin(), v.end(), t) == v.end()) v.push_back(t);
}

const std::vector<StateId>& Opa::push_targets(StateId s, const std::string& sym) const {
  auto it = push_.find({s, sym});
  return it == push_.end() ? kNoTargets : it->second;
}

const std::vector<StateId>& Opa::shift_targets(StateId s, const std::string& sym) const {
  auto it = shift_.find({s, sym});
  return it == shift_.end() ? kNoTargets : it->second;
}

const std::vector<StateId>& Opa::pop_targets(StateId s, StateId label) const {
  auto it = pop_.find({s, label});
  return it == pop_.end() ? kNoTargets : it->second;
}

std::vector<std::string> Opa::check() const {
  std::vector<std::string> out;
  if (!opm.conflict_free()) out.push_back("precedence matrix has conflicts");
  auto check_sym = [&](const std::string& sym, const char* kind) {
    if (sym == kDelim || !opm.has_symbol(sym))
      out.push_back(std::string(kind) + " transition on unknown symbol " + sym);
  };
  for (const auto& [key, _] : push_) check_sym(key.second, "push");
  for (const auto& [key, _] : shift_) check_sym(key.second, "shift");
  if (initial_.empty()) out.push_back("no initial state");
  return out;
}

std::optional<MoveKind> move_kind(const Opa& a, const Configuration& c) {
  const std::string la = c.lookahead();
  const std::string top = c.top_symbol();
  auto r = a.opm.rel_by_id(a.opm.id_of(top), a.opm.id_of(la));
  if (!r) return std::nullopt;
  switch (*r) {
    case PrecRel::Yields: return la == kDelim ? std::nullopt : std::make_optional(MoveKind::Push);
    case PrecRel::Equals:
      return (c.stack.empty() || la == kDelim) ? std::nullopt
                                               : std::make_optional(MoveKind::Shift);
    case PrecRel::Takes:
      return c.stack.empty() ? std::nullopt : std::make_optional(MoveKind::Pop);
  }
  return std::nullopt;
}

std::vector<Configuration> step(const Opa& a, const Configuration& c) {
  std::vector<Configuration> out;
  auto kind = move_kind(a, c);
  if (!kind) return out;
  switch (*kind) {
    case MoveKind::Push: {
      const std::string& b = c.lookahead();
      for (StateId q : a.push_targets(c.state, b)) {
        Configuration n = c;
        n.stack.push_back({b, c.state});
        n.state = q;
        n.pos = c.pos + 1;
        out.push_back(std::move(n));
      }
      break;
    }
    case MoveKind::Shift: {
      const std::string& b = c.lookahead();
      for (StateId q : a.shift_targets(c.state, b)) {
        Configuration n = c;
        n.stack.back().symbol = b;  // origin state unchanged
        n.state = q;
        n.pos = c.pos + 1;
        out.push_back(std::move(n));
      }
      break;
    }
    case MoveKind::Pop: {
      StateId origin = c.stack.back().origin;
      for (StateId q : a.pop_targets(c.state, origin)) {
        Configuration n = c;
        n.stack.pop_back();
        n.state = q;
        out.push_back(std::move(n));
      }
      break;
    }
  }
  return out;
}

namespace {

std::string config_key(const Configuration& c) {
  std::string key = std::to_string(c.state) + '|' + std::to_string(c.pos);
  for (const auto& s : c.stack) {
    key += '|';
    key += s.symbol;
    key += ':';
    key += std::to_string(s.origin);
  }
  return key;
}

}  // namespace

AcceptResult accepts(const Opa& a, const std::vector<std::string>& word) {
  for (const auto& t : word)
    if (t == kDelim || !a.opm.has_symbol(t)) return {};
  auto shared = std::make_shared<const std::vector<std::string>>(word);
  std::vector<Configuration> nodes;
  std::vector<int> parent;
  std::deque<std::size_t> queue;
  std::map<std::string, std::size_t> seen;

  for (StateId q : a.initial()) {
    Configuration c;
    c.state = q;
    c.word = shared;
    c.pos = 0;
    std::string key = config_key(c);
    if (seen.count(key)) continue;
    seen[key] = nodes.size();
    nodes.push_back(std::move(c));
    parent.push_back(-1);
    queue.push_back(nodes.size() - 1);
  }

  while (!queue.empty()) {
    std::size_t idx = queue.front();
    queue.pop_front();
    Configuration cur = nodes[idx];
    if (cur.pos == word.size() && cur.stack.empty() && a.is_final(cur.state)) {
      AcceptResult res;
      res.accepted = true;
      std::vector<std::size_t> path;
      for (int i = static_cast<int>(idx); i >= 0; i = parent[i]) path.push_back(i);
      for (auto it = path.rbegin(); it != path.rend(); ++it) res.trace.push_back(nodes[*it]);
      return res;
    }
    for (auto& n : step(a, cur)) {
      std::string key = config_key(n);
      if (seen.count(key)) continue;
      seen[key] = nodes.size();
      nodes.push_back(std::move(n));
      parent.push_back(static_cast<int>(idx));
      queue.push_back(nodes.size() - 1);
    }
  }
  return {};
}

std::string format_config(const Opa& a, const Configuration& c) {
  std::string stack = "⊥";  // ⊥
  for (const auto& s : c.stack) {
    stack += " [";
    stack += s.symbol;
    stack += ' ';
    stack += a.state_name(s.origin);
    stack += ']';
  }
  std::vector<std::string> rest(c.word->begin() + c.pos, c.word->end());
  rest.push_back(kDelim);
  return stack + " | " + a.state_name(c.state) + " | " + join_compact(rest);
}

std::string format_trace(const Opa& a, const std::vector<Configuration>& trace) {
  std::string out = "stack | state | current input\n";
  for (const auto& c : trace) {
    out += format_config(a, c);
    out += '\n';
  }
  return out;
}

bool check_support(const Opa& a, const Chain& c, const Support& path) {
  if (path.states.size() != c.spine.size()) return false;
  if (path.gaps.size() != c.gaps.size() || c.gaps.size() != c.spine.size() + 1) return false;

  auto gap_exit = [&](StateId entry, std::size_t i) -> std::optional<StateId> {
    if (!c.gaps[i]) return path.gaps[i] ? std::nullopt : std::make_optional(entry);
    if (!path.gaps[i]) return std::nullopt;
    if (path.gaps[i]->start != entry) return std::nullopt;
    if (!check_support(a, *c.gaps[i], *path.gaps[i])) return std::nullopt;
    return path.gaps[i]->end;
  };
  auto contains = [](const std::vector<StateId>& v, StateId s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };

  auto e0 = gap_exit(path.start, 0);
  if (!e0) return false;
  StateId pop_label = *e0;
  if (!contains(a.push_targets(pop_label, c.spine[0]), path.states[0])) return false;
  StateId cur = path.states[0];
  for (std::size_t i = 1; i < c.spine.size(); ++i) {
    auto ei = gap_exit(cur, i);
    if (!ei) return false;
    if (!contains(a.shift_targets(*ei, c.spine[i]), path.states[i])) return false;
    cur = path.states[i];
  }
  auto en = gap_exit(cur, c.spine.size());
  if (!en) return false;
  return contains(a.pop_targets(*en, pop_label), path.end);
}

nlohmann::json Opa::to_json() const {
  nlohmann::json j;
  j["opm"] = opm.to_json();
  j["states"] = names_;
  nlohmann::json init = nlohmann::json::array(), fin = nlohmann::json::array();
  for (StateId s : initial_) init.push_back(names_[s]);
  for (StateId s : final_) fin.push_back(names_[s]);
  j["initial"] = std::move(init);
  j["final"] = std::move(fin);
  auto dump_sym = [&](const std::map<std::pair<StateId, std::string>, std::vector<StateId>>& m) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [key, targets] : m) {
      nlohmann::json tos = nlohmann::json::array();
      for (StateId t : targets) tos.push_back(names_[t]);
      arr.push_back({{"from", names_[key.first]}, {"sym", key.second}, {"to", std::move(tos)}});
    }
    return arr;
  };
  j["push"] = dump_sym(push_);
  j["shift"] = dump_sym(shift_);
  nlohmann::json pops = nlohmann::json::array();
  for (const auto& [key, targets] : pop_) {
    nlohmann::json tos = nlohmann::json::array();
    for (StateId t : targets) tos.push_back(names_[t]);
    pops.push_back(
        {{"from", names_[key.first]}, {"label", names_[key.second]}, {"to", std::move(tos)}});
  }
  j["pop"] = std::move(pops);
  return j;
}

Opa Opa::from_json(const nlohmann::json& j) {
  Opa a;
  a.opm = Opm::from_json(j.at("opm"));
  for (const auto& s : j.at("states")) a.add_state(s.get<std::string>());
  for (const auto& s : j.at("initial")) a.mark_initial(s.get<std::string>());
  for (const auto& s : j.at("final")) a.mark_final(s.get<std::string>());
  for (const auto& t : j.at("push"))
    for (const auto& to : t.at("to"))
      a.add_push(t.at("from").get<std::string>(), t.at("sym").get<std::string>(),
                 to.get<std::string>());
  for (const auto& t : j.at("shift"))
    for (const auto& to : t.at("to"))
      a.add_shift(t.at("from").get<std::string>(), t.at("sym").get<std::string>(),
                  to.get<std::string>());
  for (const auto& t : j.at("pop"))
    for (const auto& to : t.at("to"))
      a.add_pop(t.at("from").get<std::string>(), t.at("label").get<std::string>(),
                to.get<std::string>());
  return a;
}

}  // namespace copg
