#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tubealg/annular.hpp"

namespace tubealg {

// u is omega (circle kind) for m > 0 and t (real kind) for m = 0
inline ParamKind kind_for(int m) { return m == 0 ? ParamKind::real : ParamKind::circle; }

// vector in the induced module of lowest weight m, stored on reduced (m,n) diagrams
class ModuleVector {
  public:
    using Terms = std::map<AnnularDiagram, Scalar>;

    ModuleVector() = default;
    ModuleVector(int m, int n) : m_(m), n_(n) {}
    static ModuleVector generator(int m);

    int m() const { return m_; }
    int n() const { return n_; }
    ParamKind kind() const { return kind_for(m_); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(const AnnularDiagram& d) const;
    // reduces d first: drops low rank, turns offsets and loops into powers of u
    void add(const AnnularDiagram& d, const Scalar& c, const QParam& P, int contractible = 0);
    ModuleVector& operator+=(const ModuleVector& o);
    ModuleVector& operator*=(const Scalar& c);
    friend ModuleVector operator*(const Scalar& c, ModuleVector v) { return v *= c; }
    bool operator==(const ModuleVector& o) const = default;

  private:
    int m_ = 0;
    int n_ = 0;
    Terms terms_;
};

std::vector<AnnularDiagram> module_basis(int m, int n);
// dimension of the induced module at level n, from the weight decomposition
long long module_dim(int m, int n);

ModuleVector act(const AnnularElement& x, const ModuleVector& v, const QParam& P);
ModuleVector act(const TLElement& x, const ModuleVector& v, const QParam& P);
Scalar inner_product(const ModuleVector& v, const ModuleVector& w, const QParam& P);

ModuleVector g_vector(int m, int k, const QParam& P);

Scalar b_step(int s, int m, const QParam& P);
Scalar b_recursive(int k, int m, int l, const QParam& P);
Scalar b_oracle(int k, int m, int l, const QParam& P);

enum class CharFamily { loops, rank_power0, rank_power1 };
// loops: x^k_{0,j}; rank_power0: x^k_{n,0} at m = 0; rank_power1: x^k_{n,1}
Scalar char_closed(int k, int m, CharFamily family, int index, const QParam& P);
Scalar char_oracle(int k, int m, const CornerElement& x, const QParam& P);

struct RankReport {
    bool admissible = true;
    int basis_size = 0;
    int numeric_rank = 0;
    std::optional<int> exact_rank;  // when the point is rational
    int g_line_rank = 0;            // 1 iff g_{m,n} survives in the quotient
    int predicted_rank = 0;         // sum over l of hom_dim(n,l) [g_{m,l} survives]
    double min_eigenvalue = 0;
};
// point is omega on the unit circle for m > 0, t in [-delta, delta] for m = 0
RankReport quotient_rank(int m, int n, std::complex<double> point, const QParam& P, double rel_tol = 1e-8);
std::optional<Rational> rational_point(std::complex<double> point);

std::vector<std::vector<Scalar>> gram_matrix(int m, int n, const QParam& P);

// CSV rows k,m,l,polynomial for m <= l <= k <= max_k
std::string btable_csv(int max_k, const QParam& P);

}  // namespace tubealg
