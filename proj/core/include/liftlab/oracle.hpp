#pragma once

#include "liftlab/errors.hpp"
#include "liftlab/int.hpp"

#include <vector>

// Ground-truth discrete-log solvers and subgroup enumeration for property
// tests. This module must stay independent of the lift machinery: it may
// include nothing beyond basic integer arithmetic, so that cross-checks
// against it cannot be circular.

namespace liftlab::oracle {

struct DlogAnswer {
    bool found = false;
    Int n;  // valid when found; g^n = h mod m
};

/// Linear scan n = 0 .. order_bound-1, first match wins.
DlogAnswer dlog_bruteforce(const Int& g, const Int& h, const Int& m, const Int& order_bound,
                           const Int& scan_cap = Int(10000000));

/// Baby-step giant-step, O(sqrt(order)) time and space.
DlogAnswer dlog_bsgs(const Int& g, const Int& h, const Int& m, const Int& order);

/// [g^0, g^1, ..., g^(order-1)] with the closure check g^order = 1; throws
/// NotClosed otherwise.
std::vector<Int> subgroup_elements(const Int& g, const Int& m, const Int& order);

} // namespace liftlab::oracle
