#include "gldpc/gf2.hpp"

namespace gldpc {

int Gf2Matrix::rank() const {
    Gf2Matrix m = *this;
    std::vector<int> piv = m.rref_in_place();
    return static_cast<int>(piv.size());
}

std::vector<int> Gf2Matrix::rref_in_place() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
        int sel = -1;
        for (int r = row; r < rows_; ++r) {
            if (get(r, col)) { sel = r; break; }
        }
        if (sel < 0) continue;
        if (sel != row) {
            uint64_t* a = row_ptr(sel);
            uint64_t* b = row_ptr(row);
            for (int w = 0; w < words_; ++w) std::swap(a[w], b[w]);
        }
        for (int r = 0; r < rows_; ++r) {
            if (r != row && get(r, col)) xor_row(r, row);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int Gf2Matrix::rank_of_columns(const std::vector<int>& cols) const {
    // Eliminate column vectors against an incremental basis. Basis vectors are
    // kept sorted by ascending leading (lowest set) row index; reducing in that
    // order never re-introduces a bit at an already-cleared lead, because
    // xoring a vector only changes bits at or above its own lead.
    const int wrows = (rows_ + 63) / 64;
    std::vector<std::pair<int, std::vector<uint64_t>>> basis;  // (lead, vector)
    std::vector<uint64_t> v(wrows);
    int rank = 0;
    for (int c : cols) {
        for (int w = 0; w < wrows; ++w) v[w] = 0;
        for (int r = 0; r < rows_; ++r) {
            if (get(r, c)) v[r / 64] |= 1ull << (r % 64);
        }
        for (const auto& [l, vec] : basis) {
            if ((v[l / 64] >> (l % 64)) & 1u) {
                for (int w = 0; w < wrows; ++w) v[w] ^= vec[w];
            }
        }
        int l = -1;
        for (int w = 0; w < wrows && l < 0; ++w) {
            if (v[w]) l = w * 64 + __builtin_ctzll(v[w]);
        }
        if (l >= 0) {
            auto pos = basis.begin();
            while (pos != basis.end() && pos->first < l) ++pos;
            basis.insert(pos, {l, v});
            ++rank;
        }
    }
    return rank;
}

}  // namespace gldpc
