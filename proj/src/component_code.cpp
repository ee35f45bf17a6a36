#include "gldpc/component_code.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace gldpc {

using boost::multiprecision::cpp_int;

namespace {

cpp_int binom(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    cpp_int r = 1;
    for (long long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

// Gaussian binomial coefficient [a, b]_2: number of b-dimensional subspaces
// of F_2^a. Product form divides exactly at every step when done as a single
// numerator/denominator pair.
cpp_int gauss_binom(int a, int b) {
    if (b < 0 || b > a) return 0;
    cpp_int num = 1, den = 1;
    for (int i = 0; i < b; ++i) {
        num *= (cpp_int(1) << a) - (cpp_int(1) << i);
        den *= (cpp_int(1) << b) - (cpp_int(1) << i);
    }
    return num / den;
}

int basis_insert(uint32_t* basis, int basis_size, uint32_t v) {
    // Reduce v against the basis (kept with distinct leading bits) and insert
    // if independent. Returns the new basis size.
    for (int i = 0; i < basis_size; ++i) {
        v = std::min(v, v ^ basis[i]);
    }
    if (v == 0) return basis_size;
    basis[basis_size] = v;
    // Re-normalize so every element has a distinct top bit and the array stays
    // usable by the min-reduction above.
    std::sort(basis, basis + basis_size + 1, std::greater<uint32_t>());
    return basis_size + 1;
}

bool in_span(const uint32_t* basis, int basis_size, uint32_t v) {
    for (int i = 0; i < basis_size; ++i) {
        v = std::min(v, v ^ basis[i]);
    }
    return v == 0;
}

// Exact rank-subset sums by depth-first traversal over the 2^mu column
// subsets, carrying the incremental basis. acc_rank[h] += rank(S) for every
// |S| = h; acc_indep[h] += #{j not in S : col_j independent of S} for every
// |S| = h (the extrinsic-recovery count used by the oracle polynomial).
struct SubsetAccumulator {
    const std::vector<uint32_t>* cols;
    std::vector<cpp_int> acc_rank;
    std::vector<cpp_int> acc_indep;

    void walk(size_t next, int count, uint32_t* basis, int basis_size) {
        const auto& c = *cols;
        if (next == c.size()) {
            acc_rank[count] += basis_size;
            int indep = 0;
            for (size_t j = 0; j < c.size(); ++j) {
                // Members of S are in the span by construction, so counting
                // independent columns over all j only picks up j outside S.
                if (!in_span(basis, basis_size, c[j])) ++indep;
            }
            acc_indep[count] += indep;
            return;
        }
        walk(next + 1, count, basis, basis_size);
        uint32_t saved[32];
        std::copy(basis, basis + basis_size, saved);
        int ns = basis_insert(basis, basis_size, c[next]);
        walk(next + 1, count + 1, basis, ns);
        std::copy(saved, saved + basis_size, basis);
    }
};

void enumerate_subsets(const ComponentCode& code, std::vector<cpp_int>& rank_sums,
                       std::vector<cpp_int>& indep_counts) {
    if (code.mu > 20) {
        throw std::domain_error("subset enumeration limited to mu <= 20 (got " +
                                std::to_string(code.mu) + ")");
    }
    SubsetAccumulator acc;
    acc.cols = &code.cols;
    acc.acc_rank.assign(code.mu + 1, 0);
    acc.acc_indep.assign(code.mu + 1, 0);
    uint32_t basis[32];
    acc.walk(0, 0, basis, 0);
    rank_sums = std::move(acc.acc_rank);
    indep_counts = std::move(acc.acc_indep);
}

bool is_full_hamming_layout(const ComponentCode& code) {
    // True when the PCM columns are exactly the 2^m - 1 distinct nonzero
    // vectors (any order); only then does the subspace-counting closed form
    // for the rank sums apply.
    int m = code.m();
    if (code.mu != (1 << m) - 1) return false;
    std::vector<uint32_t> sorted = code.cols;
    std::sort(sorted.begin(), sorted.end());
    for (int v = 1; v <= code.mu; ++v) {
        if (sorted[v - 1] != static_cast<uint32_t>(v)) return false;
    }
    return true;
}

// Verified closed form for the rank sums of a full Hamming layout:
//   e_tilde[h] = sum_{t=1..m} t * [m,t]_2
//                * sum_{u=0..t} (-1)^u 2^{u(u-1)/2} [t,u]_2 binom(2^{t-u}-1, h)
// The inner sum counts h-subsets of the nonzero vectors of a t-dimensional
// space that span it (inclusion-exclusion over proper subspaces), so the
// total is sum over subsets S of rank(S), grouped by span.
std::vector<cpp_int> e_tilde_closed_hamming(int m) {
    int mu = (1 << m) - 1;
    std::vector<cpp_int> e(mu + 1, 0);
    for (int h = 1; h <= mu; ++h) {
        cpp_int total = 0;
        for (int t = 1; t <= m; ++t) {
            cpp_int inner = 0;
            for (int u = 0; u <= t; ++u) {
                cpp_int term = (cpp_int(1) << (u * (u - 1) / 2)) * gauss_binom(t, u) *
                               binom((1LL << (t - u)) - 1, h);
                if (u % 2 == 0)
                    inner += term;
                else
                    inner -= term;
            }
            total += t * gauss_binom(m, t) * inner;
        }
        e[h] = total;
    }
    return e;
}

// The published variant of the closed form, transcribed verbatim:
//   e_tilde[h] = sum_{t=1..h} t * sum_{u=0..t-1} (-1)^u 2^binom(u,t)
//                * [m,t]_2 [t,u]_2 binom(2^{t-u}, h)
// (binom(u,t) = 0 for u < t, so the power-of-two factor is always 1).
// Kept only to document that it does not reproduce the enumerated sums.
std::vector<cpp_int> e_tilde_printed(int m) {
    int mu = (1 << m) - 1;
    std::vector<cpp_int> e(mu + 1, 0);
    for (int h = 1; h <= mu; ++h) {
        cpp_int total = 0;
        for (int t = 1; t <= h; ++t) {
            for (int u = 0; u <= t - 1; ++u) {
                cpp_int two_pow = 1;
                cpp_int bu = binom(u, t);
                if (bu > 0) two_pow = cpp_int(1) << static_cast<unsigned>(bu.convert_to<long long>());
                cpp_int term = two_pow * gauss_binom(m, t) * gauss_binom(t, u) *
                               binom(1LL << (t - u), h);
                if (u % 2 == 0)
                    total += t * term;
                else
                    total -= t * term;
            }
        }
        e[h] = total;
    }
    return e;
}

std::vector<double> to_double_vec(const std::vector<cpp_int>& v) {
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].convert_to<double>();
    return out;
}

}  // namespace

std::map<int, int> ComponentCode::column_weight_histogram() const {
    std::map<int, int> hist;
    for (int j = 0; j < mu; ++j) hist[col_weight(j)]++;
    return hist;
}

void ComponentCode::validate() const {
    if (mu < 2 || kappa < 1 || kappa >= mu) {
        throw std::invalid_argument("component code needs 1 <= kappa < mu, mu >= 2");
    }
    if (static_cast<int>(cols.size()) != mu) {
        throw std::invalid_argument("component code column count mismatch");
    }
    int rows = m();
    if (rows > 31) throw std::invalid_argument("component code limited to 31 PCM rows");
    uint32_t basis[32];
    int basis_size = 0;
    for (int j = 0; j < mu; ++j) {
        if (cols[j] == 0) throw std::invalid_argument("component code PCM has a zero column");
        if (cols[j] >> rows) throw std::invalid_argument("component code column exceeds row count");
        basis_size = basis_insert(basis, basis_size, cols[j]);
    }
    if (basis_size != rows) {
        throw std::invalid_argument("component code PCM is not full row rank");
    }
}

ComponentCode hamming(int m, bool systematic) {
    if (m < 2 || m > 8) throw std::domain_error("hamming: m must be in [2, 8]");
    ComponentCode code;
    code.mu = (1 << m) - 1;
    code.kappa = code.mu - m;
    code.cols.reserve(code.mu);
    if (systematic) {
        for (uint32_t v = 1; v < (1u << m); ++v) {
            if (__builtin_popcount(v) >= 2) code.cols.push_back(v);
        }
        for (int r = 0; r < m; ++r) code.cols.push_back(1u << r);
    } else {
        for (uint32_t v = 1; v < (1u << m); ++v) code.cols.push_back(v);
    }
    code.d_min = 3;
    code.d_min_dual = 1 << (m - 1);  // simplex dual: all nonzero words weigh 2^(m-1)
    code.validate();
    return code;
}

ExitTable exit_table(const ComponentCode& code) {
    code.validate();
    ExitTable table;
    table.mu = code.mu;

    std::vector<cpp_int> exact;
    bool hamming_layout = is_full_hamming_layout(code);
    if (hamming_layout) {
        exact = e_tilde_closed_hamming(code.m());
        if (code.mu <= 20) {
            std::vector<cpp_int> rank_sums, indep_counts;
            enumerate_subsets(code, rank_sums, indep_counts);
            if (rank_sums != exact) {
                // Enumeration is ground truth; the closed form should never
                // disagree, but if it does, trust the count.
                std::clog << "exit_table: closed-form rank sums disagreed with enumeration "
                             "for mu=" << code.mu << "; using enumeration\n";
                exact = std::move(rank_sums);
            }
        }
    } else {
        std::vector<cpp_int> indep_counts;
        enumerate_subsets(code, exact, indep_counts);
    }

    table.e_tilde = to_double_vec(exact);
    table.D.assign(code.mu + 1, 0.0);
    for (int h = 1; h <= code.mu; ++h) {
        cpp_int d = h * exact[h] - (code.mu - h + 1) * exact[h - 1];
        if (d < 0) throw std::logic_error("exit_table: negative bracket at h=" + std::to_string(h));
        table.D[h] = d.convert_to<double>();
    }

    if (hamming_layout) {
        std::vector<cpp_int> printed = e_tilde_printed(code.m());
        table.printed_formula_matches = (printed == exact);
        if (!table.printed_formula_matches) {
            int first_bad = -1;
            for (int h = 1; h <= code.mu; ++h) {
                if (printed[h] != exact[h]) {
                    first_bad = h;
                    break;
                }
            }
            std::ostringstream note;
            note << "published rank-sum closed form diverges from enumeration starting at h="
                 << first_bad << " (printed " << printed[first_bad] << ", actual "
                 << exact[first_bad] << "); corrected subspace-count form in use";
            table.discrepancy_note = note.str();
        }
    } else {
        table.printed_formula_matches = false;
        table.discrepancy_note = "non-Hamming column layout: rank sums enumerated directly";
    }
    return table;
}

double exit_closed_form(const ExitTable& table, double I_A) {
    if (!(I_A >= 0.0 && I_A <= 1.0)) {
        throw std::domain_error("exit_closed_form: I_A must be in [0, 1]");
    }
    double sum = 0.0;
    for (int h = 1; h <= table.mu; ++h) {
        if (table.D[h] == 0.0) continue;
        sum += std::pow(1.0 - I_A, h - 1) * std::pow(I_A, table.mu - h) * table.D[h];
    }
    sum /= table.mu;
    return std::min(1.0, std::max(0.0, sum));
}

ExitOraclePoly exit_oracle_poly(const ComponentCode& code) {
    code.validate();
    std::vector<cpp_int> rank_sums, indep_counts;
    enumerate_subsets(code, rank_sums, indep_counts);
    ExitOraclePoly poly;
    poly.mu = code.mu;
    poly.D.assign(code.mu + 1, 0.0);
    // indep_counts[s] counts (S, j) pairs with |S| = s, j outside S and col_j
    // not in span(S): exactly the patterns where position j is extrinsically
    // recovered when the s set positions are the erased ones. With h = s + 1
    // this matches the (1-I_A)^(h-1) I_A^(mu-h) bracket convention.
    for (int s = 0; s < code.mu; ++s) {
        poly.D[s + 1] = indep_counts[s].convert_to<double>();
    }
    return poly;
}

double exit_oracle_eval(const ExitOraclePoly& poly, double I_A) {
    if (!(I_A >= 0.0 && I_A <= 1.0)) {
        throw std::domain_error("exit_oracle_eval: I_A must be in [0, 1]");
    }
    double sum = 0.0;
    for (int h = 1; h <= poly.mu; ++h) {
        if (poly.D[h] == 0.0) continue;
        sum += std::pow(1.0 - I_A, h - 1) * std::pow(I_A, poly.mu - h) * poly.D[h];
    }
    return std::min(1.0, std::max(0.0, sum / poly.mu));
}

double exit_oracle(const ComponentCode& code, double I_A) {
    return exit_oracle_eval(exit_oracle_poly(code), I_A);
}

MlEraseResult ml_erase_decode(const ComponentCode& code, const std::vector<int>& erased,
                              const std::vector<uint8_t>& known_bits) {
    if (static_cast<int>(known_bits.size()) != code.mu) {
        throw std::invalid_argument("ml_erase_decode: known_bits must have mu entries");
    }
    int n_e = static_cast<int>(erased.size());
    if (n_e > 31) throw std::invalid_argument("ml_erase_decode: too many erasures for one block");
    std::vector<uint8_t> is_erased(code.mu, 0);
    for (int pos : erased) {
        if (pos < 0 || pos >= code.mu) throw std::invalid_argument("ml_erase_decode: bad position");
        is_erased[pos] = 1;
    }

    int m = code.m();
    // Row r of the local system: mask over erased positions + syndrome bit
    // from the known positions.
    std::vector<uint32_t> row_mask(m, 0);
    std::vector<uint8_t> row_rhs(m, 0);
    for (int j = 0; j < code.mu; ++j) {
        uint32_t col = code.cols[j];
        if (is_erased[j]) continue;
        if (known_bits[j] & 1) {
            for (int r = 0; r < m; ++r) row_rhs[r] ^= (col >> r) & 1;
        }
    }
    for (int e = 0; e < n_e; ++e) {
        uint32_t col = code.cols[erased[e]];
        for (int r = 0; r < m; ++r) {
            if ((col >> r) & 1) row_mask[r] |= 1u << e;
        }
    }

    // Reduced row echelon form over GF(2).
    int pivot_row = 0;
    for (int c = 0; c < n_e && pivot_row < m; ++c) {
        int sel = -1;
        for (int r = pivot_row; r < m; ++r) {
            if ((row_mask[r] >> c) & 1) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(row_mask[pivot_row], row_mask[sel]);
        std::swap(row_rhs[pivot_row], row_rhs[sel]);
        for (int r = 0; r < m; ++r) {
            if (r != pivot_row && ((row_mask[r] >> c) & 1)) {
                row_mask[r] ^= row_mask[pivot_row];
                row_rhs[r] ^= row_rhs[pivot_row];
            }
        }
        ++pivot_row;
    }

    MlEraseResult result;
    std::vector<uint8_t> solved(n_e, 0);
    for (int r = 0; r < m; ++r) {
        if (row_mask[r] == 0) {
            if (row_rhs[r]) {
                throw std::runtime_error("ml_erase_decode: inconsistent syndrome");
            }
            continue;
        }
        if (__builtin_popcount(row_mask[r]) == 1) {
            int e = __builtin_ctz(row_mask[r]);
            result.resolved[erased[e]] = row_rhs[r];
            solved[e] = 1;
        }
    }
    for (int e = 0; e < n_e; ++e) {
        if (!solved[e]) result.unresolved.insert(erased[e]);
    }
    return result;
}

}  // namespace gldpc
