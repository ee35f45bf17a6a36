#include "gldpc/lifting.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "gldpc/rng.hpp"

namespace gldpc {

size_t LiftedPcm::edge_count() const {
    size_t n = 0;
    for (const auto& r : row_cols) n += r.size();
    return n;
}

void LiftedPcm::add_entry(int r, int c) {
    row_cols[r].push_back(c);
    col_rows[c].push_back(r);
}

void LiftedPcm::finalize() {
    for (auto& r : row_cols) {
        std::sort(r.begin(), r.end());
        if (std::adjacent_find(r.begin(), r.end()) != r.end()) {
            throw std::logic_error("LiftedPcm: duplicate (row, col) entry");
        }
    }
    for (auto& c : col_rows) std::sort(c.begin(), c.end());
}

bool LiftedPcm::structure_equal(const LiftedPcm& other) const {
    return rows == other.rows && cols == other.cols && row_cols == other.row_cols &&
           col_rows == other.col_rows;
}

LiftedPcm lift(const BaseMatrix& B, int N, int mu, uint64_t rng_seed) {
    B.validate();
    if (mu < 1 || N < mu || N % mu != 0) {
        throw std::invalid_argument("lift: lifting factor must be a positive multiple of mu (mu=" +
                                    std::to_string(mu) + ", N=" + std::to_string(N) + ")");
    }
    const int n_c = B.n_c(), n_v = B.n_v();

    LiftedPcm H;
    H.rows = N * n_c;
    H.cols = N * n_v;
    H.N = N;
    H.row_cols.resize(H.rows);
    H.col_rows.resize(H.cols);
    H.row_origin.resize(H.rows);
    H.col_origin.resize(H.cols);
    for (int i = 0; i < n_c; ++i)
        for (int s = 0; s < N; ++s) H.row_origin[i * N + s] = i;
    for (int j = 0; j < n_v; ++j)
        for (int t = 0; t < N; ++t) H.col_origin[j * N + t] = j;

    Rng rng = substream(rng_seed, "lift");
    std::vector<int> perm(N);
    // used[t] = rows already taken at column copy t of the current block, so
    // parallel-edge permutations stay disjoint.
    std::vector<std::vector<int>> used(N);

    for (int i = 0; i < n_c; ++i) {
        for (int j = 0; j < n_v; ++j) {
            int b = B.b(i, j);
            if (b == 0) continue;
            if (b > N) {
                throw std::invalid_argument("lift: multiplicity " + std::to_string(b) +
                                            " exceeds lifting factor " + std::to_string(N));
            }
            for (auto& u : used) u.clear();
            for (int k = 0; k < b; ++k) {
                int attempts = 0;
                for (;;) {
                    std::iota(perm.begin(), perm.end(), 0);
                    rng.shuffle(perm);
                    bool disjoint = true;
                    for (int t = 0; t < N && disjoint; ++t) {
                        for (int taken : used[t]) {
                            if (perm[t] == taken) {
                                disjoint = false;
                                break;
                            }
                        }
                    }
                    if (disjoint) break;
                    if (++attempts > 100000) {
                        throw std::runtime_error("lift: could not draw disjoint permutations");
                    }
                }
                for (int t = 0; t < N; ++t) {
                    H.add_entry(i * N + perm[t], j * N + t);
                    used[t].push_back(perm[t]);
                }
            }
        }
    }
    H.finalize();
    return H;
}

uint64_t count_4cycles(const LiftedPcm& H) {
    // A 4-cycle is an unordered pair of rows sharing an unordered pair of
    // columns. Bucket (col-pair -> #rows containing it) and sum C(count, 2).
    std::unordered_map<uint64_t, uint32_t> pair_count;
    for (const auto& cols : H.row_cols) {
        for (size_t a = 0; a < cols.size(); ++a) {
            for (size_t b = a + 1; b < cols.size(); ++b) {
                uint64_t key = (static_cast<uint64_t>(cols[a]) << 32) | static_cast<uint32_t>(cols[b]);
                ++pair_count[key];
            }
        }
    }
    uint64_t cycles = 0;
    for (const auto& [key, n] : pair_count) {
        (void)key;
        cycles += static_cast<uint64_t>(n) * (n - 1) / 2;
    }
    return cycles;
}

void write_alist(const LiftedPcm& H, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    size_t max_col = 0, max_row = 0;
    for (const auto& c : H.col_rows) max_col = std::max(max_col, c.size());
    for (const auto& r : H.row_cols) max_row = std::max(max_row, r.size());

    out << H.cols << " " << H.rows << "\n";
    out << max_col << " " << max_row << "\n";
    for (int j = 0; j < H.cols; ++j) out << H.col_rows[j].size() << (j + 1 < H.cols ? " " : "\n");
    for (int i = 0; i < H.rows; ++i) out << H.row_cols[i].size() << (i + 1 < H.rows ? " " : "\n");
    for (int j = 0; j < H.cols; ++j) {
        for (size_t k = 0; k < max_col; ++k) {
            long v = k < H.col_rows[j].size() ? H.col_rows[j][k] + 1 : 0;
            out << v << (k + 1 < max_col ? " " : "");
        }
        out << "\n";
    }
    for (int i = 0; i < H.rows; ++i) {
        for (size_t k = 0; k < max_row; ++k) {
            long v = k < H.row_cols[i].size() ? H.row_cols[i][k] + 1 : 0;
            out << v << (k + 1 < max_row ? " " : "");
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

// Integer tokenizer that reports the byte offset of the offending token on
// failure, per the CLI error contract.
class IntReader {
public:
    explicit IntReader(const std::string& path) : in_(path), path_(path) {
        if (!in_) throw std::runtime_error("cannot open: " + path);
    }
    long next() {
        in_ >> std::ws;
        std::streampos at = in_.tellg();
        long v;
        if (!(in_ >> v)) {
            std::ostringstream msg;
            msg << "alist parse error at byte " << static_cast<long long>(at) << " in " << path_
                << ": expected integer";
            throw std::runtime_error(msg.str());
        }
        return v;
    }
    bool at_eof() {
        in_ >> std::ws;
        return in_.eof();
    }

private:
    std::ifstream in_;
    std::string path_;
};

}  // namespace

LiftedPcm read_alist(const std::string& path) {
    IntReader rd(path);
    auto expect_nonneg = [&](long v, const char* what) {
        if (v < 0) throw std::runtime_error(std::string("alist: negative ") + what + " in " + path);
        return v;
    };
    long cols = expect_nonneg(rd.next(), "column count");
    long rows = expect_nonneg(rd.next(), "row count");
    long max_col = expect_nonneg(rd.next(), "max column degree");
    long max_row = expect_nonneg(rd.next(), "max row degree");

    LiftedPcm H;
    H.rows = static_cast<int>(rows);
    H.cols = static_cast<int>(cols);
    H.row_cols.resize(rows);
    H.col_rows.resize(cols);

    std::vector<long> col_deg(cols), row_deg(rows);
    for (long j = 0; j < cols; ++j) col_deg[j] = expect_nonneg(rd.next(), "column degree");
    for (long i = 0; i < rows; ++i) row_deg[i] = expect_nonneg(rd.next(), "row degree");

    for (long j = 0; j < cols; ++j) {
        for (long k = 0; k < max_col; ++k) {
            long v = rd.next();
            if (v < 0 || v > rows) throw std::runtime_error("alist: row index out of range in " + path);
            if (v == 0) continue;
            H.col_rows[j].push_back(static_cast<int>(v - 1));
        }
        if (static_cast<long>(H.col_rows[j].size()) != col_deg[j]) {
            throw std::runtime_error("alist: column " + std::to_string(j) +
                                     " degree mismatch in " + path);
        }
    }
    for (long i = 0; i < rows; ++i) {
        for (long k = 0; k < max_row; ++k) {
            long v = rd.next();
            if (v < 0 || v > cols) throw std::runtime_error("alist: column index out of range in " + path);
            if (v == 0) continue;
            H.row_cols[i].push_back(static_cast<int>(v - 1));
        }
        if (static_cast<long>(H.row_cols[i].size()) != row_deg[i]) {
            throw std::runtime_error("alist: row " + std::to_string(i) + " degree mismatch in " + path);
        }
    }
    H.finalize();
    // Cross-validate the two adjacency views.
    size_t col_edges = 0;
    for (const auto& c : H.col_rows) col_edges += c.size();
    if (col_edges != H.edge_count()) {
        throw std::runtime_error("alist: row/column adjacency disagree in " + path);
    }
    return H;
}

namespace {

constexpr char kPcmMagic[4] = {'G', 'P', 'C', 'M'};
constexpr uint32_t kPcmVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
template <typename T>
T take(std::ifstream& in, const std::string& path) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw std::runtime_error("truncated binary pcm: " + path);
    return v;
}

}  // namespace

void write_pcm_binary(const LiftedPcm& H, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(kPcmMagic, 4);
    put<uint32_t>(out, kPcmVersion);
    put<int64_t>(out, H.rows);
    put<int64_t>(out, H.cols);
    put<int64_t>(out, H.N);
    put<uint8_t>(out, H.row_origin.empty() ? 0 : 1);
    for (int v : H.row_origin) put<int32_t>(out, v);
    put<uint8_t>(out, H.col_origin.empty() ? 0 : 1);
    for (int v : H.col_origin) put<int32_t>(out, v);
    for (const auto& r : H.row_cols) {
        put<int32_t>(out, static_cast<int32_t>(r.size()));
        for (int c : r) put<int32_t>(out, c);
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

LiftedPcm read_pcm_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kPcmMagic, 4) != 0) {
        throw std::runtime_error("not a binary pcm file: " + path);
    }
    if (take<uint32_t>(in, path) != kPcmVersion) {
        throw std::runtime_error("unsupported binary pcm version: " + path);
    }
    LiftedPcm H;
    H.rows = static_cast<int>(take<int64_t>(in, path));
    H.cols = static_cast<int>(take<int64_t>(in, path));
    H.N = static_cast<int>(take<int64_t>(in, path));
    if (H.rows < 0 || H.cols < 0) throw std::runtime_error("corrupt binary pcm: " + path);
    H.row_cols.resize(H.rows);
    H.col_rows.resize(H.cols);
    if (take<uint8_t>(in, path)) {
        H.row_origin.resize(H.rows);
        for (int i = 0; i < H.rows; ++i) H.row_origin[i] = take<int32_t>(in, path);
    }
    if (take<uint8_t>(in, path)) {
        H.col_origin.resize(H.cols);
        for (int j = 0; j < H.cols; ++j) H.col_origin[j] = take<int32_t>(in, path);
    }
    for (int i = 0; i < H.rows; ++i) {
        int32_t deg = take<int32_t>(in, path);
        if (deg < 0 || deg > H.cols) throw std::runtime_error("corrupt binary pcm: " + path);
        H.row_cols[i].resize(deg);
        for (int k = 0; k < deg; ++k) {
            int32_t c = take<int32_t>(in, path);
            if (c < 0 || c >= H.cols) throw std::runtime_error("corrupt binary pcm: " + path);
            H.row_cols[i][k] = c;
            H.col_rows[c].push_back(i);
        }
    }
    H.finalize();
    return H;
}

}  // namespace gldpc
