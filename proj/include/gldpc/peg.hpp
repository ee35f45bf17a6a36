#pragma once
#include "gldpc/base_matrix.hpp"
#include "gldpc/rng.hpp"

namespace gldpc {

struct PegConfig {
    int n_c = 0;
    int n_v = 0;
    DegreeCountVector target_degrees;
    uint64_t rng_seed = 0;
    int max_retries = 200;  // used by callers that redraw on typical-dmin failure

    void validate() const;  // counts sum to n_v, every degree <= n_c
};

// Progressive edge growth. Variable nodes are processed in ascending degree
// order; each edge goes to an unreached check if any exists after BFS over the
// current subgraph, otherwise to a check at maximum BFS distance; ties resolve
// to minimum current check degree, then a uniform seeded draw. Parallel edges
// are avoided unless every candidate is already a neighbor.
BaseMatrix peg_build(const PegConfig& cfg);

}  // namespace gldpc
