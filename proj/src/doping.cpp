#include "gldpc/doping.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace gldpc {

using nlohmann::json;

void DopingSpec::validate(const BaseMatrix& base) const {
    code.validate();
    std::set<int> seen;
    for (int j : doped_cols) {
        if (j < 0 || j >= base.n_v()) {
            throw std::invalid_argument("doping: column index out of range");
        }
        if (!seen.insert(j).second) {
            throw std::invalid_argument("doping: duplicate doped column");
        }
        if (base.col_degree(j) != 2) {
            throw std::invalid_argument("doping: column " + std::to_string(j) +
                                        " has degree " + std::to_string(base.col_degree(j)) +
                                        "; only degree-2 columns are doped");
        }
    }
    if (y != 0 && static_cast<int>(doped_cols.size()) != y * code.mu) {
        throw std::invalid_argument("doping: y set but doped count is not y*mu");
    }
}

Rational PdGldpcCode::rate() const {
    return design_rate(pcm.rows, pcm.cols);
}

PdGldpcCode dope_partial(const BaseMatrix& base, const LiftedPcm& lifted, const DopingSpec& spec) {
    base.validate();
    spec.validate(base);
    const int mu = spec.code.mu, m = spec.code.m();
    const int N = lifted.N;
    if (N <= 0 || N % mu != 0) {
        throw std::invalid_argument("dope_partial: lifting factor must be a multiple of mu");
    }
    if (lifted.rows != N * base.n_c() || lifted.cols != N * base.n_v()) {
        throw std::invalid_argument("dope_partial: lifted matrix does not match the base");
    }
    const int beta = N / mu;
    const int x = static_cast<int>(spec.doped_cols.size());
    const long appended = static_cast<long>(m) * beta * x;
    if (appended >= static_cast<long>(N) * (base.n_v() - base.n_c())) {
        throw std::domain_error("dope_partial: doping consumes the whole code dimension (rate <= 0)");
    }

    PdGldpcCode code;
    code.base = base;
    code.spec = spec;
    code.N = N;
    code.beta = beta;
    code.pcm = lifted;
    code.pcm.rows += static_cast<int>(appended);
    code.pcm.row_cols.resize(code.pcm.rows);
    code.pcm.row_origin.resize(code.pcm.rows);

    int block_id = 0;
    for (int d = 0; d < x; ++d) {
        const int j = spec.doped_cols[d];
        for (int g = 0; g < beta; ++g, ++block_id) {
            GcBlock blk;
            blk.id = block_id;
            blk.doped_col = j;
            const int first_row = N * base.n_c() + block_id * m;
            for (int r = 0; r < m; ++r) {
                blk.rows.push_back(first_row + r);
                code.pcm.row_origin[first_row + r] = base.n_c() + block_id;
            }
            for (int t = 0; t < mu; ++t) {
                const int c = j * N + g * mu + t;
                blk.cols.push_back(c);
                const uint32_t col_mask = spec.code.cols[t];
                for (int r = 0; r < m; ++r) {
                    if ((col_mask >> r) & 1) code.pcm.add_entry(first_row + r, c);
                }
            }
            code.gc_blocks.push_back(std::move(blk));
        }
    }
    code.pcm.finalize();
    return code;
}

PdGldpcCode dope_conventional(const BaseMatrix& base, int check_idx, const ComponentCode& comp,
                              const LiftedPcm& lifted) {
    base.validate();
    comp.validate();
    if (check_idx < 0 || check_idx >= base.n_c()) {
        throw std::invalid_argument("dope_conventional: check index out of range");
    }
    if (base.row_degree(check_idx) != comp.mu) {
        throw std::invalid_argument("dope_conventional: check degree " +
                                    std::to_string(base.row_degree(check_idx)) +
                                    " != component length " + std::to_string(comp.mu));
    }
    const int N = lifted.N;
    if (N <= 0 || lifted.rows != N * base.n_c() || lifted.cols != N * base.n_v()) {
        throw std::invalid_argument("dope_conventional: lifted matrix does not match the base");
    }
    const int m = comp.m();

    PdGldpcCode code;
    code.base = base;
    code.spec.code = comp;
    code.N = N;
    code.beta = N / comp.mu;
    code.conventional_check = check_idx;
    code.pcm.rows = N * (base.n_c() - 1) + N * m;
    code.pcm.cols = lifted.cols;
    code.pcm.N = N;
    code.pcm.row_cols.resize(code.pcm.rows);
    code.pcm.col_rows.resize(code.pcm.cols);
    code.pcm.row_origin.resize(code.pcm.rows);
    code.pcm.col_origin = lifted.col_origin;

    // Rows are rebuilt in original order; each lifted copy of the replaced
    // check expands in place into the m component rows on its mu neighbors
    // (so replacing with an SPC "component" reproduces the input exactly).
    int out_row = 0;
    int block_id = 0;
    for (int in_row = 0; in_row < lifted.rows; ++in_row) {
        if (lifted.row_origin[in_row] != check_idx) {
            for (int c : lifted.row_cols[in_row]) code.pcm.add_entry(out_row, c);
            code.pcm.row_origin[out_row] = lifted.row_origin[in_row];
            ++out_row;
            continue;
        }
        const std::vector<int>& nbrs = lifted.row_cols[in_row];  // sorted, size mu
        GcBlock blk;
        blk.id = block_id;
        blk.cols = nbrs;
        for (int r = 0; r < m; ++r) {
            blk.rows.push_back(out_row + r);
            code.pcm.row_origin[out_row + r] = base.n_c() + block_id;
        }
        for (int t = 0; t < comp.mu; ++t) {
            const uint32_t col_mask = comp.cols[t];
            for (int r = 0; r < m; ++r) {
                if ((col_mask >> r) & 1) code.pcm.add_entry(out_row + r, nbrs[t]);
            }
        }
        out_row += m;
        ++block_id;
        code.gc_blocks.push_back(std::move(blk));
    }
    code.pcm.finalize();
    return code;
}

DminWitness typical_dmin_check(const BaseMatrix& base, const DopingSpec& spec) {
    std::vector<char> doped(base.n_v(), 0);
    for (int j : spec.doped_cols) doped[j] = 1;

    // Forest under construction: parent pointers for union-find plus explicit
    // adjacency (check -> (check, vn)) to recover a witness path on failure.
    std::vector<int> parent(base.n_c());
    for (int i = 0; i < base.n_c(); ++i) parent[i] = i;
    auto find = [&](int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    std::vector<std::vector<std::pair<int, int>>> adj(base.n_c());

    DminWitness res;
    for (int j = 0; j < base.n_v(); ++j) {
        if (doped[j] || base.col_degree(j) != 2) continue;
        int c1 = -1, c2 = -1;
        for (int i = 0; i < base.n_c(); ++i) {
            int b = base.b(i, j);
            if (b == 0) continue;
            if (b >= 2) {  // double edge: a 2-cycle on its own
                res.ok = false;
                res.cycle_vns = {j};
                return res;
            }
            if (c1 < 0) c1 = i; else c2 = i;
        }
        if (find(c1) == find(c2)) {
            // Adding (c1, c2) closes a cycle; walk the existing tree path.
            std::vector<int> prev_check(base.n_c(), -1), prev_vn(base.n_c(), -1);
            std::deque<int> queue{c1};
            prev_check[c1] = c1;
            while (!queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                if (u == c2) break;
                for (auto [v, vn] : adj[u]) {
                    if (prev_check[v] < 0) {
                        prev_check[v] = u;
                        prev_vn[v] = vn;
                        queue.push_back(v);
                    }
                }
            }
            res.ok = false;
            for (int u = c2; u != c1; u = prev_check[u]) res.cycle_vns.push_back(prev_vn[u]);
            res.cycle_vns.push_back(j);
            return res;
        }
        parent[find(c1)] = find(c2);
        adj[c1].push_back({c2, j});
        adj[c2].push_back({c1, j});
    }
    res.ok = true;
    return res;
}

int necessary_doping_bound(int n_v, int n_c, int mu) {
    if (n_v <= 0 || n_c <= 0 || mu <= 0) throw std::invalid_argument("doping bound: positive arguments required");
    int num = n_v - n_c + 1;
    if (num <= 0) return 0;
    return (num + mu - 1) / mu;
}

int necessary_doping_bound_regular(int n_v, int n_c0, int mu, int kappa) {
    if (n_v <= 0 || n_c0 <= 0 || mu <= 0 || kappa <= 0 || kappa >= mu) {
        throw std::invalid_argument("doping bound: invalid arguments");
    }
    int num = n_v - n_c0 + 1;
    if (num <= 0) return 0;
    return (num + kappa - 1) / kappa;
}

DegreeCountVector degree_transform(const DegreeCountVector& D_p, const ComponentCode& code, int y) {
    D_p.validate();
    if (y < 0) throw std::invalid_argument("degree_transform: negative y");
    if (D_p.count_of(2) < code.mu * y) {
        throw std::domain_error("degree_transform: fewer than mu*y degree-2 nodes available");
    }
    std::map<int, int> counts;
    for (auto [deg, cnt] : D_p.pairs) counts[deg] += cnt;
    counts[2] -= code.mu * y;
    for (auto [w, cnt] : code.column_weight_histogram()) counts[2 + w] += y * cnt;

    DegreeCountVector out;
    for (auto [deg, cnt] : counts) {
        if (cnt > 0) out.pairs.push_back({deg, cnt});
    }
    out.validate();
    return out;
}

void save_code(const PdGldpcCode& code, const std::string& alist_path, const std::string& json_path) {
    write_alist(code.pcm, alist_path);

    json j;
    j["base"] = json::parse(to_json(code.base));
    j["N"] = code.N;
    j["beta"] = code.beta;
    j["conventional_check"] = code.conventional_check;
    j["component"] = {{"mu", code.spec.code.mu},
                      {"kappa", code.spec.code.kappa},
                      {"cols", code.spec.code.cols},
                      {"d_min", code.spec.code.d_min},
                      {"d_min_dual", code.spec.code.d_min_dual}};
    j["doped_cols"] = code.spec.doped_cols;
    j["y"] = code.spec.y;
    j["row_origin"] = code.pcm.row_origin;
    j["col_origin"] = code.pcm.col_origin;
    json blocks = json::array();
    for (const auto& blk : code.gc_blocks) {
        blocks.push_back({{"id", blk.id}, {"doped_col", blk.doped_col}, {"cols", blk.cols}, {"rows", blk.rows}});
    }
    j["gc_blocks"] = std::move(blocks);

    std::ofstream out(json_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + json_path);
    out << j.dump(1, '\t') << "\n";
    if (!out) throw std::runtime_error("write failed: " + json_path);
}

PdGldpcCode load_code(const std::string& alist_path, const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw std::runtime_error("cannot open: " + json_path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("sidecar parse error at byte " + std::to_string(e.byte) + " in " +
                                 json_path + ": " + e.what());
    }

    PdGldpcCode code;
    code.pcm = read_alist(alist_path);
    code.base = base_matrix_from_json(j.at("base").dump());
    code.N = j.at("N").get<int>();
    code.beta = j.at("beta").get<int>();
    code.conventional_check = j.at("conventional_check").get<int>();
    const json& comp = j.at("component");
    code.spec.code.mu = comp.at("mu").get<int>();
    code.spec.code.kappa = comp.at("kappa").get<int>();
    code.spec.code.cols = comp.at("cols").get<std::vector<uint32_t>>();
    code.spec.code.d_min = comp.at("d_min").get<int>();
    code.spec.code.d_min_dual = comp.at("d_min_dual").get<int>();
    code.spec.code.validate();
    code.spec.doped_cols = j.at("doped_cols").get<std::vector<int>>();
    code.spec.y = j.at("y").get<int>();
    code.pcm.N = code.N;
    code.pcm.row_origin = j.at("row_origin").get<std::vector<int>>();
    code.pcm.col_origin = j.at("col_origin").get<std::vector<int>>();
    if (static_cast<int>(code.pcm.row_origin.size()) != code.pcm.rows ||
        static_cast<int>(code.pcm.col_origin.size()) != code.pcm.cols) {
        throw std::runtime_error("sidecar does not match alist dimensions: " + json_path);
    }
    for (const json& b : j.at("gc_blocks")) {
        GcBlock blk;
        blk.id = b.at("id").get<int>();
        blk.doped_col = b.at("doped_col").get<int>();
        blk.cols = b.at("cols").get<std::vector<int>>();
        blk.rows = b.at("rows").get<std::vector<int>>();
        if (static_cast<int>(blk.cols.size()) != code.spec.code.mu ||
            static_cast<int>(blk.rows.size()) != code.spec.code.m()) {
            throw std::runtime_error("sidecar GC block has wrong shape: " + json_path);
        }
        code.gc_blocks.push_back(std::move(blk));
    }
    return code;
}

}  // namespace gldpc
