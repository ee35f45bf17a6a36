#pragma once
#include <cstdint>
#include <vector>

namespace gldpc {

// Dense GF(2) matrix with rows packed into 64-bit words. Used for rank
// computations and RREF on lifted parity-check matrices; small component-code
// solves use plain integer masks instead (see component_code.hpp).
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(static_cast<size_t>(rows) * words_, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const {
        return (data_[static_cast<size_t>(r) * words_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(int r, int c, bool v) {
        uint64_t& w = data_[static_cast<size_t>(r) * words_ + c / 64];
        uint64_t m = 1ull << (c % 64);
        if (v) w |= m; else w &= ~m;
    }
    void xor_row(int dst, int src) {
        uint64_t* d = row_ptr(dst);
        const uint64_t* s = row_ptr(src);
        for (int w = 0; w < words_; ++w) d[w] ^= s[w];
    }

    // Rank by column-pivoted Gaussian elimination (operates on a copy).
    int rank() const;

    // In-place reduced row echelon form. Returns pivot column per pivot row
    // (size = rank); rows beyond the rank are zero.
    std::vector<int> rref_in_place();

    // Rank of the submatrix formed by the given columns (order irrelevant).
    int rank_of_columns(const std::vector<int>& cols) const;

private:
    uint64_t* row_ptr(int r) { return data_.data() + static_cast<size_t>(r) * words_; }
    const uint64_t* row_ptr(int r) const { return data_.data() + static_cast<size_t>(r) * words_; }

    int rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<uint64_t> data_;
};

}  // namespace gldpc
