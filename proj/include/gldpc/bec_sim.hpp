#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "gldpc/doping.hpp"

namespace gldpc {

struct SimConfig {
    double epsilon = 0.0;
    long long max_blocks = 1000000;
    int target_errors = 100;
    int max_decoder_iters = 200;
    uint64_t rng_seed = 1;
    int workers = 1;

    void validate() const;
};

struct SimResult {
    long long blocks_run = 0;
    long long block_errors = 0;
    double bler = 0.0;
    double ci_low = 0.0;   // Wilson 95% interval
    double ci_high = 0.0;
    double mean_iters = 0.0;
    std::map<int, long long> residual_erasure_histogram;  // residual count -> blocks
};

struct DecodeOutcome {
    bool success = false;
    std::vector<uint8_t> residual;  // 1 = still erased; subset of the input
    int iters = 0;                  // outer peel/ML rounds that made progress
};

// Iterative BEC decoding of one erasure pattern (all-zero codeword): SPC rows
// with exactly one erased neighbor resolve it (worklist peeling); GC blocks
// whose erased-neighbor set changed re-run ml_erase_decode on their mu
// columns. Runs to fixpoint or the iteration cap; the outcome does not depend
// on processing order.
DecodeOutcome decode_block(const PdGldpcCode& code, const std::vector<uint8_t>& erasures,
                           int max_iters = 200);

// Monte Carlo BLER at fixed epsilon. Per-block erasures come from
// substream(rng_seed, "sim", block_index), so results are byte-identical for
// any worker count; blocks are consumed in fixed batches and the run stops
// after the first batch whose cumulative error count reaches target_errors.
SimResult run_bler(const PdGldpcCode& code, const SimConfig& cfg);

// Exact ML-over-the-whole-code decodability: true iff the full-PCM submatrix
// on the erased columns has full column rank. Guards decode_block in tests;
// capped at 2^12 columns.
bool erasure_rank_oracle(const PdGldpcCode& code, const std::vector<uint8_t>& erasures);

}  // namespace gldpc
