#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "gldpc/base_matrix.hpp"

namespace gldpc {

// Sparse binary parity-check matrix produced by copy-and-permute lifting,
// possibly extended with appended GC rows (see doping.hpp). Stored as sorted
// adjacency in both directions: the decoder walks rows, the peeling update
// walks columns.
struct LiftedPcm {
    int rows = 0;
    int cols = 0;
    int N = 0;  // lifting factor (copies per protograph node); 0 if hand-built

    std::vector<std::vector<int>> row_cols;  // per row, sorted column indices
    std::vector<std::vector<int>> col_rows;  // per column, sorted row indices

    // Lifted column j*N + t originates from protograph column j. Lifted rows
    // carry the protograph row index; rows appended or substituted by doping
    // carry base.n_c() + gc_block_id instead.
    std::vector<int> col_origin;
    std::vector<int> row_origin;

    size_t edge_count() const;
    void add_entry(int r, int c);  // unsorted insert; call finalize() after
    void finalize();               // sorts adjacency, rejects duplicate entries
    bool structure_equal(const LiftedPcm& other) const;  // rows/cols/adjacency
};

// Copy-and-permute lifting: every base entry b_{i,j} becomes b_{i,j} mutually
// disjoint N x N permutation matrices between the copy-sets of c_i and v_j.
// Permutations are Fisher-Yates draws from substream(rng_seed, "lift");
// parallel-edge permutations are redrawn until disjoint. Requires mu | N.
LiftedPcm lift(const BaseMatrix& B, int N, int mu, uint64_t rng_seed);

// Number of length-4 cycles (pairs of rows sharing >= 2 columns, counted once
// per column pair). Reported for diagnostics, never enforced.
uint64_t count_4cycles(const LiftedPcm& H);

// MacKay alist text format (1-based indices, zero-padded rows). Structure
// only; origins are not representable and come back empty.
void write_alist(const LiftedPcm& H, const std::string& path);
LiftedPcm read_alist(const std::string& path);

// Compact binary cache; lossless including N and the origin maps.
void write_pcm_binary(const LiftedPcm& H, const std::string& path);
LiftedPcm read_pcm_binary(const std::string& path);

}  // namespace gldpc
