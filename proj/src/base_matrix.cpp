#include "gldpc/base_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace gldpc {

void BaseMatrix::validate() const {
    if (b.rows() == 0 || b.cols() == 0) throw std::invalid_argument("base matrix: empty");
    for (int i = 0; i < n_c(); ++i)
        for (int j = 0; j < n_v(); ++j)
            if (b(i, j) < 0) throw std::invalid_argument("base matrix: negative entry");
    for (int j = 0; j < n_v(); ++j)
        if (col_degree(j) < 1) throw std::invalid_argument("base matrix: unconnected variable node");
    for (int i = 0; i < n_c(); ++i)
        if (row_degree(i) < 2) throw std::invalid_argument("base matrix: check of degree < 2");
}

int DegreeCountVector::total_nodes() const {
    int t = 0;
    for (auto& [d, c] : pairs) t += c;
    return t;
}

int DegreeCountVector::total_edges() const {
    int t = 0;
    for (auto& [d, c] : pairs) t += d * c;
    return t;
}

int DegreeCountVector::count_of(int degree) const {
    for (auto& [d, c] : pairs)
        if (d == degree) return c;
    return 0;
}

std::vector<int> DegreeCountVector::expand() const {
    std::vector<int> out;
    out.reserve(total_nodes());
    for (auto& [d, c] : pairs) out.insert(out.end(), c, d);
    return out;
}

void DegreeCountVector::validate() const {
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].second < 0) throw std::invalid_argument("degree counts: negative count");
        if (pairs[i].first < 1) throw std::invalid_argument("degree counts: degree < 1");
        if (i > 0 && pairs[i].first <= pairs[i - 1].first)
            throw std::invalid_argument("degree counts: degrees not ascending/distinct");
    }
}

double EnsembleDistribution::lambda_sum() const {
    double s = 0;
    for (auto& [d, c] : lambda) s += c;
    return s;
}
double EnsembleDistribution::rho_sum() const {
    double s = 0;
    for (auto& [d, c] : rho) s += c;
    return s;
}
double EnsembleDistribution::lambda_integral() const {
    double s = 0;
    for (auto& [d, c] : lambda) s += c / d;
    return s;
}
double EnsembleDistribution::rho_integral() const {
    double s = 0;
    for (auto& [d, c] : rho) s += c / d;
    return s;
}
double EnsembleDistribution::lambda_eval(double x) const {
    double s = 0;
    for (auto& [d, c] : lambda) s += c * std::pow(x, d - 1);
    return s;
}
double EnsembleDistribution::rho_eval(double x) const {
    double s = 0;
    for (auto& [d, c] : rho) s += c * std::pow(x, d - 1);
    return s;
}
void EnsembleDistribution::validate() const {
    for (auto& [d, c] : lambda)
        if (d < 2 || c < 0.0 || c > 1.0) throw std::invalid_argument("ensemble: bad lambda entry");
    for (auto& [d, c] : rho)
        if (d < 2 || c < 0.0 || c > 1.0) throw std::invalid_argument("ensemble: bad rho entry");
    if (std::abs(lambda_sum() - 1.0) > 1e-9) throw std::invalid_argument("ensemble: lambda does not sum to 1");
    if (std::abs(rho_sum() - 1.0) > 1e-9) throw std::invalid_argument("ensemble: rho does not sum to 1");
}
EnsembleDistribution EnsembleDistribution::normalized() const {
    EnsembleDistribution out = *this;
    double ls = lambda_sum(), rs = rho_sum();
    if (ls > 0)
        for (auto& [d, c] : out.lambda) c /= ls;
    if (rs > 0)
        for (auto& [d, c] : out.rho) c /= rs;
    return out;
}

DegreeCountVector column_degrees(const BaseMatrix& B) {
    B.validate();
    std::map<int, int> hist;
    for (int j = 0; j < B.n_v(); ++j) hist[B.col_degree(j)]++;
    DegreeCountVector out;
    for (auto& [d, c] : hist) out.pairs.push_back({d, c});
    return out;
}

Rational design_rate(int n_c, int n_v, std::optional<DopingParams> doping) {
    long long rows = n_c;
    if (doping) {
        if (doping->mu <= doping->kappa || doping->kappa < 1)
            throw std::invalid_argument("design_rate: need mu > kappa >= 1");
        if (doping->y < 0) throw std::invalid_argument("design_rate: negative y");
        rows += static_cast<long long>(doping->mu - doping->kappa) * doping->y;
    }
    Rational r = Rational(1) - Rational(rows, n_v);
    if (r <= 0) throw std::domain_error("design_rate: rate <= 0 (over-doped)");
    return r;
}

Rational design_rate(const BaseMatrix& B, std::optional<DopingParams> doping) {
    return design_rate(B.n_c(), B.n_v(), doping);
}

bool validate_ensemble(const EnsembleDistribution& E, Rational R) {
    double r = 1.0 - E.rho_integral() / E.lambda_integral();
    double target = static_cast<double>(R.numerator()) / static_cast<double>(R.denominator());
    return std::abs(r - target) < 1e-6;
}

std::string to_json(const BaseMatrix& B) {
    nlohmann::json j;
    j["n_c"] = B.n_c();
    j["n_v"] = B.n_v();
    auto rows = nlohmann::json::array();
    for (int i = 0; i < B.n_c(); ++i) {
        auto row = nlohmann::json::array();
        for (int jj = 0; jj < B.n_v(); ++jj) row.push_back(B.b(i, jj));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j.dump(2);
}

BaseMatrix base_matrix_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int nc = j.at("n_c").get<int>();
    int nv = j.at("n_v").get<int>();
    Eigen::MatrixXi m(nc, nv);
    const auto& rows = j.at("rows");
    if (static_cast<int>(rows.size()) != nc) throw std::invalid_argument("base json: row count mismatch");
    for (int i = 0; i < nc; ++i) {
        const auto& row = rows[i];
        if (static_cast<int>(row.size()) != nv) throw std::invalid_argument("base json: col count mismatch");
        for (int jj = 0; jj < nv; ++jj) m(i, jj) = row[jj].get<int>();
    }
    return BaseMatrix(std::move(m));
}

std::string to_json(const EnsembleDistribution& E) {
    nlohmann::json j;
    for (auto& [d, c] : E.lambda) j["lambda"][std::to_string(d)] = c;
    for (auto& [d, c] : E.rho) j["rho"][std::to_string(d)] = c;
    return j.dump(2);
}

EnsembleDistribution ensemble_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    EnsembleDistribution E;
    for (auto& [k, v] : j.at("lambda").items()) E.lambda[std::stoi(k)] = v.get<double>();
    for (auto& [k, v] : j.at("rho").items()) E.rho[std::stoi(k)] = v.get<double>();
    return E;
}

}  // namespace gldpc
