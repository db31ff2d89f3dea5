#ifndef STAKETOW_RANDOM_TREE_H_
#define STAKETOW_RANDOM_TREE_H_

#include <cstdint>

#include "staketow/graph.h"

namespace staketow {

// Uniform attachment with degree at most 4, then rooted at a uniformly
// chosen leaf. The vertex count is uniform on [3, max_vertices].
BoundaryPaymentGraph RandomRootRewardGraph(std::uint64_t seed,
                                           int max_vertices = 40);

}  // namespace staketow

#endif  // STAKETOW_RANDOM_TREE_H_
