#pragma once

#include <compare>
#include <map>
#include <memory>
#include <vector>

#include "tubealg/linalg.hpp"
#include "tubealg/scalar.hpp"

namespace tubealg {

// bottom points 0..b-1, top points b..b+t-1
struct TLDiagram {
    int bottom = 0;
    int top = 0;
    std::vector<int> pairing;

    auto operator<=>(const TLDiagram&) const = default;
    bool operator==(const TLDiagram&) const = default;

    int size() const { return bottom + top; }
    bool is_through(int p) const { return (p < bottom) != (pairing[p] < bottom); }
    int through_count() const;

    static TLDiagram identity(int k);
    static TLDiagram cup();  // (0,2)
    static TLDiagram cap();  // (2,0)
    // e_i on k strands, 1-based i, joining strands i and i+1
    static TLDiagram e(int k, int i);
};

bool is_planar(const TLDiagram& d);

class TLElement {
  public:
    using Terms = std::map<TLDiagram, Scalar>;

    TLElement() = default;
    TLElement(int bottom, int top) : bottom_(bottom), top_(top) {}
    TLElement(const TLDiagram& d, const Scalar& c = Scalar(1));

    static TLElement identity(int k) { return TLElement(TLDiagram::identity(k)); }
    static TLElement zero(int bottom, int top) { return TLElement(bottom, top); }

    int bottom() const { return bottom_; }
    int top() const { return top_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(const TLDiagram& d) const;

    void add(const TLDiagram& d, const Scalar& c);
    TLElement& operator+=(const TLElement& o);
    TLElement& operator-=(const TLElement& o);
    TLElement& operator*=(const Scalar& c);
    friend TLElement operator+(TLElement a, const TLElement& b) { return a += b; }
    friend TLElement operator-(TLElement a, const TLElement& b) { return a -= b; }
    friend TLElement operator*(const Scalar& c, TLElement a) { return a *= c; }
    bool operator==(const TLElement& o) const = default;

  private:
    int bottom_ = 0;
    int top_ = 0;
    Terms terms_;
};

std::vector<TLDiagram> enumerate_diagrams(int bottom, int top);

// x below, y stacked on top; returns the glued diagram and the number of closed loops
std::pair<TLDiagram, int> compose_diagrams(const TLDiagram& x, const TLDiagram& y);
TLElement compose(const TLElement& x, const TLElement& y, const QParam& P);
TLElement tensor(const TLElement& x, const TLElement& y);
TLDiagram tensor_diagrams(const TLDiagram& x, const TLDiagram& y);
TLDiagram star_diagram(const TLDiagram& d);
TLElement star(const TLElement& x);

std::shared_ptr<const TLElement> jones_wenzl(int k, const QParam& P);
Scalar markov_trace(const TLElement& x, const QParam& P);
int markov_loops(const TLDiagram& d);
TLElement isotypic_projector(int n, int j, const QParam& P);

// v_a = f_j composed with the diagrams j -> n having j through strands, their stars,
// and the inverse of the Gram matrix v_a^* v_b = G_ab f_j
struct HomBasis {
    std::vector<TLElement> v;
    std::vector<TLElement> vstar;
    RMatrix gram_inv;
};
std::shared_ptr<const HomBasis> hom_basis(int n, int j, const QParam& P);

// diagram with a top cup at k-1,k and a bottom cap at p,p+1 (1-based), other strands through
TLDiagram single_cap_diagram(int k, int p);
// k strands with a cap at 1-based position i, as a (k, k-2) diagram, and its cup transpose
TLDiagram cap_at(int k, int i);
TLDiagram cup_at(int k, int i);

// multiplicity of f_j in the n-fold strand tensor power
long long hom_dim(int n, int j);
long long catalan(int n);

nlohmann::json to_json(const TLElement& x);
TLElement tl_from_json(const nlohmann::json& j);

}  // namespace tubealg
