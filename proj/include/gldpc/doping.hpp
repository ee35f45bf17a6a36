#pragma once
#include <optional>
#include <string>
#include <vector>

#include "gldpc/base_matrix.hpp"
#include "gldpc/component_code.hpp"
#include "gldpc/lifting.hpp"

namespace gldpc {

// Which protograph variable nodes get GC coverage, and with which component
// code. Every doped column must have protograph degree 2 (the constructions
// here never dope anything else). x = doped_cols.size(); when bulk-aligned,
// x = y * mu.
struct DopingSpec {
    std::vector<int> doped_cols;
    ComponentCode code;
    int y = 0;  // bulk count; 0 when x is not a multiple of mu

    void validate(const BaseMatrix& base) const;
};

struct GcBlock {
    int id = 0;
    int doped_col = -1;           // protograph column (partial doping); -1 for conventional
    std::vector<int> cols;        // the mu PCM columns, in component-column order
    std::vector<int> rows;        // the mu-kappa PCM rows of this block
};

struct PdGldpcCode {
    LiftedPcm pcm;
    BaseMatrix base;
    DopingSpec spec;
    int N = 0;
    int beta = 0;                 // N / mu
    int conventional_check = -1;  // protograph check replaced by GC nodes, if any
    std::vector<GcBlock> gc_blocks;

    int n() const { return pcm.cols; }
    int x() const { return static_cast<int>(spec.doped_cols.size()); }
    Rational rate() const;        // (cols - rows) / cols, full rank assumed
};

// Partial doping: append (mu-kappa) * beta * x GC rows below the lifted
// matrix. The N copies of each doped column split into beta consecutive
// blocks of mu columns; each block gets the component PCM in systematic
// column order. Throws if the appended rows consume the whole dimension
// (rate <= 0) or the lifting parameters are inconsistent.
PdGldpcCode dope_partial(const BaseMatrix& base, const LiftedPcm& lifted, const DopingSpec& spec);

// Conventional doping: every lifted copy of check c_i (which must have degree
// exactly mu, multiplicity counted) is replaced in place by the mu-kappa
// component PCM rows on its mu neighbor columns.
PdGldpcCode dope_conventional(const BaseMatrix& base, int check_idx, const ComponentCode& code,
                              const LiftedPcm& lifted);

struct DminWitness {
    bool ok = false;
    std::vector<int> cycle_vns;  // variable nodes forming one offending cycle
};

// Typical-minimum-distance condition: the multigraph whose vertices are the
// protograph checks and whose edges are the UNDOPED degree-2 variable nodes
// must be a forest. A degree-2 column with a double edge (b_{i,j} = 2) is a
// self-loop and fails immediately.
DminWitness typical_dmin_check(const BaseMatrix& base, const DopingSpec& spec);

// Smallest y with y >= (n_v - n_c + 1) / mu, for a fixed check count.
int necessary_doping_bound(int n_v, int n_c, int mu);
// Same bound when the check count itself shrinks with doping,
// n_c(y) = n_c0 - (mu - kappa) y: the inequality tightens to
// y >= (n_v - n_c0 + 1) / kappa.
int necessary_doping_bound_regular(int n_v, int n_c0, int mu, int kappa);

// Degree-count effect of doping y bulks of degree-2 nodes: removes mu*y
// degree-2 entries and adds, per bulk, one degree-(2+w) node for every
// component PCM column of weight w.
DegreeCountVector degree_transform(const DegreeCountVector& D_p, const ComponentCode& code, int y);

// Persistence: alist for the matrix structure plus a JSON sidecar carrying
// the base matrix, component code, doping layout, and origin maps. Both files
// are required to reload the code exactly.
void save_code(const PdGldpcCode& code, const std::string& alist_path, const std::string& json_path);
PdGldpcCode load_code(const std::string& alist_path, const std::string& json_path);

}  // namespace gldpc
