#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "copg/opm.hpp"
#include "copg/syntax_tree.hpp"

namespace copg {

// One item of a partial parse: a still-unattached terminal or a completed
// subtree. src_pos is the position of the item's first token in the original
// word (1-based, delimiter at 0), used for error reporting.
struct PItem {
  bool is_tree = false;
  std::string term;
  TreePtr tree;
  std::size_t src_pos = 0;
};

// Residual item sequence of a chunk after every reduction whose opening yield
// and closing take are both determined by symbols inside the chunk. The
// boundary-dependent prefix/suffix stays symbolic.
struct PartialParse {
  std::vector<PItem> items;
  std::size_t reductions = 0;

  std::vector<std::string> frontier_tokens() const;
};

// Chunk-local reduction to normal form. pos_offset is the original position of
// the chunk's first token.
PartialParse local_parse(const Opm& m, const std::vector<std::string>& chunk,
                         std::size_t pos_offset = 1);

// Concatenates and re-reduces across the seam only (the seam relations become
// interior). Identity element: the empty partial parse.
PartialParse merge(const Opm& m, const PartialParse& left, const PartialParse& right);

// Surrounds the items with delimiters and completes all reductions.
// reduction_count, when given, receives the number of reductions this step
// performed.
TreePtr finish(const Opm& m, const PartialParse& p, std::size_t* reduction_count = nullptr);

struct WorkStats {
  std::vector<std::size_t> worker_reductions;
  std::vector<std::size_t> chunk_lengths;
  std::size_t merge_reductions = 0;  // merging plus the finishing pass
  std::vector<std::size_t> split_points;

  std::size_t total_reductions() const;
  std::string to_csv() const;  // worker,chunk_len,reductions rows plus a merge row
};

struct ParallelResult {
  TreePtr tree;
  WorkStats stats;
};

// Splits w into k contiguous near-equal chunks, reduces them concurrently,
// merges by a balanced reduction tree and finishes. The tree equals the
// sequential parse for every split.
ParallelResult parallel_parse(const Opm& m, const std::vector<std::string>& word, std::size_t k);

// Same with explicit split points (token indices, strictly increasing).
ParallelResult parallel_parse_with_splits(const Opm& m, const std::vector<std::string>& word,
                                          const std::vector<std::size_t>& splits);

}  // namespace copg
