#pragma once

// Shared shift-reduce core of the sequential and chunk-local parsers.

#include <cstddef>
#include <vector>

#include "copg/opm.hpp"
#include "copg/parallel.hpp"

namespace copg::detail {

struct ReduceResult {
  std::vector<PItem> items;
  std::size_t reductions = 0;
};

// One pass over an item sequence. With closed=true the sequence is bounded by
// delimiters: the first terminal's opening relation comes from # and a virtual
// trailing # drains the stack (end_pos is its position for error reporting).
// With closed=false only handles whose opening yield and closing take are both
// determined by interior symbols are reduced.
ReduceResult reduce_pass(const Opm& m, const std::vector<PItem>& input, bool closed,
                         std::size_t end_pos = 0);

}  // namespace copg::detail
