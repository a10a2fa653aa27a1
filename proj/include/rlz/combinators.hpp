#pragma once

#include <optional>
#include <vector>

#include "rlz/term.hpp"

namespace rlz {

// Church numeral n: 0 is \u.\v. v and n+1 is \u.\v. (n u)(u v).
TermPtr church(std::uint64_t n);

// The closed terms used throughout: I, th (the self-replicating prefix of
// w0), w0 = th th, w1, th' (prefix of w2), w2 = th' th', w5, w6, and the
// successor term s_succ with s_succ n ->beta n+1. w3 and w4 have no published
// term and are rejected.
TermPtr combinator(const std::string& id);

// Known combinator ids, in a stable order.
const std::vector<std::string>& combinator_ids();

// Resolution table {id -> term} for parsing contexts that allow combinator
// names as free identifiers.
const std::vector<std::pair<std::string, TermPtr>>& combinator_table();

// Normal-order beta normal form, or nullopt if not reached within fuel
// reduction steps.
std::optional<TermPtr> beta_normalize(const TermPtr& t, std::uint64_t fuel);

}  // namespace rlz
