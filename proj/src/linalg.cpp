#include "tubealg/linalg.hpp"

#include <algorithm>

namespace tubealg {

std::optional<RMatrix> invert(const RMatrix& a)
{
    size_t n = a.size();
    RMatrix m = a, inv(n, std::vector<Rational>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[c]);
        std::swap(inv[piv], inv[c]);
        Rational s = 1 / m[c][c];
        for (size_t j = 0; j < n; ++j) {
            m[c][j] *= s;
            inv[c][j] *= s;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

int exact_rank(RMatrix m)
{
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

int numeric_rank(const Eigen::MatrixXcd& m, double rel_tol)
{
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    auto sv = svd.singularValues();
    double top = sv.size() ? sv(0) : 0.0;
    if (top == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * top) ++r;
    return r;
}

double min_hermitian_eigenvalue(const Eigen::MatrixXcd& m)
{
    if (m.size() == 0) return 0.0;
    Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double min_symmetric_eigenvalue(const Eigen::MatrixXd& m)
{
    if (m.size() == 0) return 0.0;
    Eigen::MatrixXd h = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace tubealg
