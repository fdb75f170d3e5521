#pragma once

#include <string_view>

#include "adkit/density_report.hpp"
#include "adkit/injective_map.hpp"
#include "adkit/int_set.hpp"
#include "adkit/intertwiner.hpp"

namespace adkit {

// Set expressions:
//   expr := "all" | "empty" | "evens" | "odds" | "squares"
//         | "ap(" int "," int ")"
//         | "union(" expr "," expr ")" | "inter(" expr "," expr ")"
//         | "diff(" expr "," expr ")" | "window(" expr "," int "," int ")"
// ap(a, m) = {n >= 1 : n = a (mod m)}. Whitespace between tokens is ignored.
// Expressions built from periodic pieces evaluate to periodic sets with
// exact densities.
IntSet parse_set_expr(std::string_view text);

// mexpr := "id" | "dilate(" int ")" | "interleave3" | "blockperm(" int-list ")"
//        | "finperm(" int-list ")" | "compose(" mexpr "," mexpr ")"
InjectiveMap parse_map_expr(std::string_view text);

// "geo(a,r)": eps_k = a r^k. a and r may be decimals or fractions.
EpsilonSchedule parse_epsilon_schedule(std::string_view text);

// "geo(theta,n0)".
CheckpointSchedule parse_checkpoint_schedule(std::string_view text);

}  // namespace adkit
