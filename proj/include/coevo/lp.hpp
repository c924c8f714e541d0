#pragma once

#include "coevo/rational.hpp"

namespace coevo::lp {

/// maximize c·x  subject to  a_ub x ≤ b_ub,  a_eq x = b_eq,  x ≥ 0.
struct Problem {
  Vec c;
  Mat a_ub;
  Vec b_ub;
  Mat a_eq;
  Vec b_eq;
};

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Rational value;
  Vec x;
  int pivots = 0;
};

/// Two-phase dense simplex over exact rationals with Bland's rule, so it
/// terminates on degenerate problems. Intended for the small LPs in this
/// library (tens of variables).
Result solve(const Problem& p);

}  // namespace coevo::lp
