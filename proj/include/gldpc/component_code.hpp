#pragma once
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace gldpc {

// (mu, kappa) binary linear component code given by its parity-check matrix.
// Columns are stored as (mu-kappa)-bit masks (bit r = row r), which keeps the
// per-block erasure solves in the simulator to a handful of word operations.
struct ComponentCode {
    int mu = 0;
    int kappa = 0;
    std::vector<uint32_t> cols;  // size mu, each a (mu-kappa)-bit column mask
    int d_min = 0;
    int d_min_dual = 0;

    int m() const { return mu - kappa; }
    int col_weight(int j) const { return __builtin_popcount(cols[j]); }
    // Histogram of PCM column weights: weight -> count. Drives the doping
    // degree transform (a doped degree-2 VN gains the weight of its column).
    std::map<int, int> column_weight_histogram() const;
    void validate() const;  // rank check, dimensions
};

// Hamming code with mu = 2^m - 1. Systematic layout: data columns (all masks
// of weight >= 2, ascending as integers) followed by the identity.
// Non-systematic layout: all nonzero masks ascending (1, 2, 3, ...).
ComponentCode hamming(int m, bool systematic = true);

// EXIT bookkeeping for a GC node. e_tilde[h] is the sum of rank(H_S) over all
// h-subsets S of PCM columns; D[h] = h*e_tilde[h] - (mu-h+1)*e_tilde[h-1] is
// the bracket actually used by the closed form. Values are exact integers
// computed in big-integer arithmetic and stored as double.
struct ExitTable {
    int mu = 0;
    std::vector<double> e_tilde;  // index 0..mu, e_tilde[0] = 0
    std::vector<double> D;        // index 0..mu, D[0] unused
    // The published closed form for e_tilde (transcribed verbatim) disagrees
    // with the enumeration; the verified subspace-count form is used instead
    // and the discrepancy is recorded here.
    bool printed_formula_matches = false;
    std::string discrepancy_note;
};

ExitTable exit_table(const ComponentCode& code);

// I_EGC = (1/mu) sum_h (1-I_A)^{h-1} I_A^{mu-h} D[h], clamped to [0,1].
// Throws std::domain_error if I_A is outside [0,1].
double exit_closed_form(const ExitTable& table, double I_A);

// Independent enumeration oracle (mu <= 20): for every erasure pattern of the
// other mu-1 positions, bit j is extrinsically recoverable iff its PCM column
// is independent of the erased columns; returns the exact average recovery
// probability. Computed as an integer-coefficient polynomial in I_A.
struct ExitOraclePoly {
    int mu = 0;
    std::vector<double> D;  // same D[h] convention as ExitTable
};
ExitOraclePoly exit_oracle_poly(const ComponentCode& code);
double exit_oracle(const ComponentCode& code, double I_A);
double exit_oracle_eval(const ExitOraclePoly& poly, double I_A);

// ML erasure decoding of one component block (RREF of the erased-column
// submatrix). known_bits holds values at non-erased positions (entries at
// erased positions are ignored). Full rank resolves everything; otherwise
// exactly the weight-1 RREF rows resolve. Throws std::runtime_error if a zero
// RREF row has nonzero syndrome (inconsistent known bits).
struct MlEraseResult {
    std::map<int, int> resolved;  // position -> bit value
    std::set<int> unresolved;
};
MlEraseResult ml_erase_decode(const ComponentCode& code, const std::vector<int>& erased,
                              const std::vector<uint8_t>& known_bits);

}  // namespace gldpc
