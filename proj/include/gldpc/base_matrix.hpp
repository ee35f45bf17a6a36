#pragma once
#include <Eigen/Dense>
#include <boost/rational.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gldpc {

using Rational = boost::rational<long long>;

// Integer protograph matrix. Entries are edge multiplicities b_{i,j}; parallel
// edges (entries > 1) are legal and meaningful throughout.
struct BaseMatrix {
    Eigen::MatrixXi b;

    BaseMatrix() = default;
    explicit BaseMatrix(Eigen::MatrixXi m) : b(std::move(m)) {}

    int n_c() const { return static_cast<int>(b.rows()); }
    int n_v() const { return static_cast<int>(b.cols()); }
    int col_degree(int j) const { return b.col(j).sum(); }
    int row_degree(int i) const { return b.row(i).sum(); }
    int edge_count() const { return b.sum(); }

    // Throws std::invalid_argument on: negative entries, a column of degree 0
    // (unconnected variable node), or a row of degree < 2 (degenerate check).
    void validate() const;
};

// (degree, count) histogram of variable-node degrees, sorted ascending.
struct DegreeCountVector {
    std::vector<std::pair<int, int>> pairs;  // (degree l_i, count a_i)

    int total_nodes() const;
    int total_edges() const;
    int count_of(int degree) const;
    // Expanded per-column degree list in ascending order.
    std::vector<int> expand() const;
    void validate() const;  // distinct ascending degrees, nonnegative counts

    bool operator==(const DegreeCountVector&) const = default;
};

// Edge-perspective degree distributions lambda(x), rho(x).
struct EnsembleDistribution {
    std::map<int, double> lambda;  // degree -> coefficient
    std::map<int, double> rho;

    double lambda_sum() const;
    double rho_sum() const;
    double lambda_integral() const;  // sum lambda_i / i
    double rho_integral() const;
    double lambda_eval(double x) const;  // sum lambda_i x^{i-1}
    double rho_eval(double x) const;
    // Coefficient sums must be 1 within 1e-9.
    void validate() const;
    // Scale both coefficient vectors to sum exactly 1 (used defensively for
    // published tables whose printed coefficients do not quite add up).
    EnsembleDistribution normalized() const;
};

DegreeCountVector column_degrees(const BaseMatrix& B);

struct DopingParams {
    int mu, kappa, y;
};

// R = 1 - (n_c + (mu-kappa) y)/n_v; doping absent means y = 0.
// Throws std::domain_error if the resulting rate is <= 0 (over-doped).
Rational design_rate(int n_c, int n_v, std::optional<DopingParams> doping = std::nullopt);
Rational design_rate(const BaseMatrix& B, std::optional<DopingParams> doping = std::nullopt);

// True iff |1 - (int rho / int lambda) - R| < 1e-6.
bool validate_ensemble(const EnsembleDistribution& E, Rational R);

// JSON (de)serialization. BaseMatrix: {"n_c","n_v","rows":[[...],...]};
// EnsembleDistribution: {"lambda":{"2":...},"rho":{...}}.
std::string to_json(const BaseMatrix& B);
BaseMatrix base_matrix_from_json(const std::string& text);
std::string to_json(const EnsembleDistribution& E);
EnsembleDistribution ensemble_from_json(const std::string& text);

}  // namespace gldpc
