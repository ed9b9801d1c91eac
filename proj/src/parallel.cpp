#include "copg/parallel.hpp"

#include <future>
#include <sstream>
#include <stdexcept>

#include "copg/parser.hpp"
#include "reduce_core.hpp"

namespace copg {

namespace detail {

namespace {

enum class Mark { Frozen, Open, Eq };

struct Entry {
  PItem item;
  Mark mark = Mark::Frozen;
};

}  // namespace

ReduceResult reduce_pass(const Opm& m, const std::vector<PItem>& input, bool closed,
                         std::size_t end_pos) {
  std::vector<Entry> stack;
  std::size_t count = 0;
  const int delim = m.delim_id();

  auto top_term = [&]() -> int {
    for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i)
      if (!stack[i].item.is_tree) return i;
    return -1;
  };

  auto reduce_at = [&](int open_idx) {
    int start = open_idx;
    if (start > 0 && stack[start - 1].item.is_tree) --start;
    std::vector<TreePtr> children;
    children.reserve(stack.size() - start);
    for (std::size_t i = start; i < stack.size(); ++i) {
      const PItem& it = stack[i].item;
      children.push_back(it.is_tree ? it.tree : SyntaxTree::make_leaf(it.term));
    }
    PItem t;
    t.is_tree = true;
    t.tree = SyntaxTree::make_node(std::move(children));
    t.src_pos = stack[start].item.src_pos;
    stack.resize(start);
    stack.push_back(Entry{std::move(t), Mark::Frozen});
    ++count;
  };

  // Reduces the topmost handle if its opening yield is known, i.e. the scan
  // down through equal-linked terminals hits an Open mark before a Frozen one.
  auto try_reduce = [&]() -> bool {
    for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i) {
      if (stack[i].item.is_tree) continue;
      if (stack[i].mark == Mark::Open) {
        reduce_at(i);
        return true;
      }
      if (stack[i].mark == Mark::Eq) continue;
      return false;
    }
    return false;
  };

  auto feed_terminal = [&](const PItem& it) {
    int b = m.id_of(it.term);
    for (;;) {
      int ti = top_term();
      if (ti < 0) {
        Mark mk = Mark::Frozen;
        if (closed) {
          auto r = m.rel_by_id(delim, b);
          if (!r) throw NoRelationError(kDelim, it.term, it.src_pos);
          mk = (*r == PrecRel::Yields) ? Mark::Open : Mark::Frozen;
        }
        stack.push_back(Entry{it, mk});
        return;
      }
      auto r = m.rel_by_id(m.id_of(stack[ti].item.term), b);
      if (!r) throw NoRelationError(stack[ti].item.term, it.term, it.src_pos);
      switch (*r) {
        case PrecRel::Yields:
          stack.push_back(Entry{it, Mark::Open});
          return;
        case PrecRel::Equals:
          stack.push_back(Entry{it, Mark::Eq});
          return;
        case PrecRel::Takes:
          if (!try_reduce()) {
            stack.push_back(Entry{it, Mark::Frozen});
            return;
          }
          break;
      }
    }
  };

  for (const auto& it : input) {
    if (it.is_tree)
      stack.push_back(Entry{it, Mark::Frozen});
    else
      feed_terminal(it);
  }

  if (closed) {
    for (;;) {
      int ti = top_term();
      if (ti < 0) break;
      auto r = m.rel_by_id(m.id_of(stack[ti].item.term), delim);
      if (!r) throw NoRelationError(stack[ti].item.term, kDelim, end_pos);
      if (*r != PrecRel::Takes) throw IncompleteParseError();
      if (!try_reduce()) throw IncompleteParseError();
    }
  }

  ReduceResult out;
  out.items.reserve(stack.size());
  for (auto& e : stack) out.items.push_back(std::move(e.item));
  out.reductions = count;
  return out;
}

}  // namespace detail

std::vector<std::string> PartialParse::frontier_tokens() const {
  std::vector<std::string> out;
  for (const auto& it : items) {
    if (it.is_tree) {
      auto f = frontier(it.tree);
      out.insert(out.end(), f.begin(), f.end());
    } else {
      out.push_back(it.term);
    }
  }
  return out;
}

PartialParse local_parse(const Opm& m, const std::vector<std::string>& chunk,
                         std::size_t pos_offset) {
  std::vector<PItem> items;
  items.reserve(chunk.size());
  for (std::size_t i = 0; i < chunk.size(); ++i) {
    PItem it;
    it.is_tree = false;
    it.term = chunk[i];
    it.src_pos = pos_offset + i;
    items.push_back(std::move(it));
  }
  auto res = detail::reduce_pass(m, items, false);
  PartialParse out;
  out.items = std::move(res.items);
  out.reductions = res.reductions;
  return out;
}

PartialParse merge(const Opm& m, const PartialParse& left, const PartialParse& right) {
  std::vector<PItem> items = left.items;
  items.insert(items.end(), right.items.begin(), right.items.end());
  auto res = detail::reduce_pass(m, items, false);
  PartialParse out;
  out.items = std::move(res.items);
  out.reductions = left.reductions + right.reductions + res.reductions;
  return out;
}

TreePtr finish(const Opm& m, const PartialParse& p, std::size_t* reduction_count) {
  std::size_t end_pos = p.items.empty() ? 1 : p.items.back().src_pos + 1;
  auto res = detail::reduce_pass(m, p.items, true, end_pos);
  if (reduction_count) *reduction_count = res.reductions;
  if (res.items.empty()) return SyntaxTree::make_node({});
  if (res.items.size() == 1 && res.items[0].is_tree) return res.items[0].tree;
  throw IncompleteParseError();
}

std::size_t WorkStats::total_reductions() const {
  std::size_t t = merge_reductions;
  for (auto r : worker_reductions) t += r;
  return t;
}

std::string WorkStats::to_csv() const {
  std::ostringstream out;
  out << "worker,chunk_len,reductions\n";
  for (std::size_t i = 0; i < worker_reductions.size(); ++i)
    out << i << ',' << chunk_lengths[i] << ',' << worker_reductions[i] << "\n";
  std::size_t total_len = 0;
  for (auto l : chunk_lengths) total_len += l;
  out << "merge," << total_len << ',' << merge_reductions << "\n";
  return out.str();
}

ParallelResult parallel_parse_with_splits(const Opm& m, const std::vector<std::string>& word,
                                          const std::vector<std::size_t>& splits) {
  for (std::size_t i = 0; i < splits.size(); ++i) {
    if (splits[i] == 0 || splits[i] >= word.size())
      throw std::invalid_argument("split point out of range");
    if (i > 0 && splits[i] <= splits[i - 1])
      throw std::invalid_argument("split points must be strictly increasing");
  }
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t begin = 0;
  for (auto s : splits) {
    ranges.push_back({begin, s});
    begin = s;
  }
  ranges.push_back({begin, word.size()});

  std::vector<std::future<PartialParse>> futs;
  futs.reserve(ranges.size());
  for (auto [lo, hi] : ranges)
    futs.push_back(std::async(std::launch::async, [&, lo = lo, hi = hi] {
      std::vector<std::string> chunk(word.begin() + lo, word.begin() + hi);
      return local_parse(m, chunk, lo + 1);
    }));

  ParallelResult out;
  std::vector<PartialParse> parts;
  parts.reserve(futs.size());
  for (auto& f : futs) parts.push_back(f.get());
  std::size_t local_total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out.stats.worker_reductions.push_back(parts[i].reductions);
    out.stats.chunk_lengths.push_back(ranges[i].second - ranges[i].first);
    local_total += parts[i].reductions;
  }
  out.stats.split_points = splits;

  // balanced binary reduction tree over the chunks
  while (parts.size() > 1) {
    std::vector<std::future<PartialParse>> round;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
      round.push_back(std::async(std::launch::async,
                                 [&m, &parts, i] { return merge(m, parts[i], parts[i + 1]); }));
    std::vector<PartialParse> next;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(round[i / 2].get());
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }

  PartialParse whole = parts.empty() ? PartialParse{} : std::move(parts.front());
  std::size_t finish_count = 0;
  out.tree = finish(m, whole, &finish_count);
  out.stats.merge_reductions = whole.reductions - local_total + finish_count;
  return out;
}

ParallelResult parallel_parse(const Opm& m, const std::vector<std::string>& word, std::size_t k) {
  if (k == 0) throw std::invalid_argument("worker count must be at least 1");
  k = std::min(k, std::max<std::size_t>(word.size(), 1));
  std::vector<std::size_t> splits;
  for (std::size_t i = 1; i < k; ++i) {
    std::size_t s = i * word.size() / k;
    if (s > 0 && s < word.size() && (splits.empty() || s > splits.back())) splits.push_back(s);
  }
  return parallel_parse_with_splits(m, word, splits);
}

}  // namespace copg
