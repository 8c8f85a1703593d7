// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "gita/graph.hpp"

namespace gita::testing {

/// Weighted 7-node graph reproducing the shortest-path case study: the route
/// 4-6-0 costs 1+2 = 3 and the visually direct 4-2-0 costs 1+3 = 4. The
/// remaining edges never offer a cheaper 4-0 route.
inline Graph case_study_graph() {
    return Graph(false, 7,
                 {{4, 6, 1}, {6, 0, 2}, {4, 2, 1}, {2, 0, 3}, {1, 2, 4}, {1, 3, 5}, {3, 5, 2}, {5, 6, 6}});
}

}  // namespace gita::testing
