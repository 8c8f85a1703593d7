// SPDX-License-Identifier: Apache-2.0
//
// Seeded random instance generation for the seven benchmark tasks.
//
// Graphs are Erdos-Renyi style with per-task structure:
//   Connect  union of 2-3 internally connected groups, endpoints drawn so that
//            Yes/No are equally likely
//   Cycle    random spanning tree plus each remaining pair with probability p
//   TS       random DAG: a hidden node order, each forward pair with probability p
//   SP       connected, weighted (spanning tree plus extra pairs)
//   MaxFlow  directed, capacitated, each ordered pair with probability p
//   BGM      two contiguous id blocks, each cross pair with probability p
//   HP       a planted Hamiltonian path plus extra pairs
// Default node ranges and densities approximate the per-task averages of the
// original benchmark.

#pragma once

#include <cstdint>

#include "gita/task.hpp"

namespace gita {

struct IntRange {
    std::int64_t min = 0;
    std::int64_t max = 0;
};

struct GeneratorSpec {
    TaskKind task = TaskKind::Connect;
    IntRange nodes{2, 2};
    /// Edge probability in [0,1]; interpreted per task as described above.
    double edge_density = 0.0;
    /// Weighted tasks only (SP weights, MaxFlow capacities).
    IntRange weights{1, 10};
    std::uint64_t seed = 0;
};

/// Tuned defaults for one of the seven benchmark tasks.
GeneratorSpec default_generator_spec(TaskKind task, std::uint64_t seed);

/// Pure function of `spec`. Throws ParameterError for invalid or unsatisfiable specs.
TaskInstance generate_instance(const GeneratorSpec& spec);

}  // namespace gita
