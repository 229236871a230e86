#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tubealg/scalar.hpp"
#include "tubealg/tl.hpp"

namespace tubealg {

// Inner points 0..inner-1, outer points inner..inner+outer-1, all at evenly spaced
// angles (i + 1/2) / count with the cut at angle 0. cross[p] counts signed passages
// through the cut walking from p to partner[p], counterclockwise positive.
struct AnnularDiagram {
    int inner = 0;
    int outer = 0;
    std::vector<int> partner;
    std::vector<int> cross;
    int loops = 0;  // noncontractible circles

    auto operator<=>(const AnnularDiagram&) const = default;
    bool operator==(const AnnularDiagram&) const = default;

    int size() const { return inner + outer; }
    int rank() const;
    bool is_outer(int p) const { return p >= inner; }

    static AnnularDiagram identity(int k);
    static AnnularDiagram rotation(int k, int n);  // rho_k^n, inner i to outer i+n
    static AnnularDiagram from_tl(const TLDiagram& d);
    static AnnularDiagram circles(int j);  // j noncontractible loops on the empty boundary
};

bool is_valid(const AnnularDiagram& d);
AnnularDiagram ann_star_diagram(const AnnularDiagram& d);
// x outside, y inside; returns the glued diagram and the number of contractible loops
std::pair<AnnularDiagram, int> ann_compose_diagrams(const AnnularDiagram& x, const AnnularDiagram& y);

class AnnularElement {
  public:
    using Terms = std::map<AnnularDiagram, Scalar>;

    AnnularElement() = default;
    AnnularElement(int inner, int outer) : inner_(inner), outer_(outer) {}
    AnnularElement(const AnnularDiagram& d, const Scalar& c = Scalar(1));
    static AnnularElement from_tl(const TLElement& x);

    int inner() const { return inner_; }
    int outer() const { return outer_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(const AnnularDiagram& d) const;
    void add(const AnnularDiagram& d, const Scalar& c);
    AnnularElement& operator+=(const AnnularElement& o);
    AnnularElement& operator-=(const AnnularElement& o);
    friend AnnularElement operator-(AnnularElement a, const AnnularElement& b) { return a -= b; }
    friend AnnularElement operator+(AnnularElement a, const AnnularElement& b) { return a += b; }
    AnnularElement& operator*=(const Scalar& c);
    bool operator==(const AnnularElement& o) const = default;

  private:
    int inner_ = 0;
    int outer_ = 0;
    Terms terms_;
};

AnnularElement ann_compose(const AnnularElement& x, const AnnularElement& y, const QParam& P);
AnnularElement ann_star(const AnnularElement& x);

// index L with d = (normalized d) o rho_m^L; d must have all inner points through
int rotation_index(const AnnularDiagram& d);
AnnularDiagram normalize_rotation(const AnnularDiagram& d);

// cut the annulus open along the cut: bottom = left edge (top to bottom) then inner
// points, top = outer points then right edge (top to bottom)
struct CutOpen {
    int sides = 0;
    TLDiagram diagram;
    int loops = 0;  // unused, kept zero: every circle crossing the cut becomes a side strand
};
CutOpen cut_open(const AnnularDiagram& d);
// glue left side point i to right side point i around the cut
AnnularElement close_up(const TLElement& x, int sides, const QParam& P);

// ---- corner A_{k,k} = f_k ATL_{k,k} f_k ----

struct CornerLabel {
    int m = 0;
    int n = 0;
    auto operator<=>(const CornerLabel&) const = default;
    bool operator==(const CornerLabel&) const = default;
};

class CornerElement {
  public:
    using Terms = std::map<CornerLabel, Scalar>;

    CornerElement() = default;
    explicit CornerElement(int k) : k_(k) {}
    static CornerElement basis(int k, int m, int n, const Scalar& c = Scalar(1));
    static CornerElement unit(int k) { return basis(k, k, 0); }
    static CornerElement rho(int k, int power = 1) { return basis(k, k, power); }

    int k() const { return k_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(const CornerLabel& l) const;
    void add(const CornerLabel& l, const Scalar& c);
    CornerElement& operator+=(const CornerElement& o);
    CornerElement& operator-=(const CornerElement& o);
    CornerElement& operator*=(const Scalar& c);
    friend CornerElement operator+(CornerElement a, const CornerElement& b) { return a += b; }
    friend CornerElement operator-(CornerElement a, const CornerElement& b) { return a -= b; }
    friend CornerElement operator*(const Scalar& c, CornerElement a) { return a *= c; }
    bool operator==(const CornerElement& o) const = default;
    std::string str() const;

  private:
    int k_ = 0;
    Terms terms_;
};

bool valid_label(int k, const CornerLabel& l);
// m strands on the inside, the other k-m outer points paired around the back of the annulus
AnnularDiagram inclusion_diagram(int k, int m);
// the cap-free diagram of x^k_{m,n}
AnnularDiagram corner_diagram(int k, const CornerLabel& l);
std::optional<CornerLabel> capfree_label(const AnnularDiagram& d, int k);
bool has_front_cap(const AnnularDiagram& d);

std::vector<CornerLabel> corner_basis_labels(int k, int max_rank_defect, int max_winding);
std::vector<CornerElement> corner_basis(int k, int max_rank_defect, int max_winding);

// f_k . diagram . f_k, fully expanded
AnnularElement corner_expand(const CornerElement& a, const QParam& P);
// basis coefficients of an element of the corner, read off its cap-free diagrams
CornerElement corner_extract(const AnnularElement& z, int k);
CornerElement corner_mul(const CornerElement& a, const CornerElement& b, const QParam& P);
CornerElement corner_mul_expanded(const CornerElement& a, const CornerElement& b, const QParam& P);
CornerElement corner_star(const CornerElement& a);

// grade j component in Mor(j (x) k, k (x) j): bottom = j side strands then k, top = k then j
std::map<int, TLElement> grade_decompose(const CornerElement& a, const QParam& P);
std::map<int, TLElement> grade_decompose(const AnnularElement& z, const QParam& P);
AnnularElement grade_reassemble(const std::map<int, TLElement>& grades, const QParam& P);

Scalar Omega(const CornerElement& a, const QParam& P);
Scalar omega(const CornerElement& a, const QParam& P);

nlohmann::json to_json(const CornerElement& a);
CornerElement corner_from_json(const nlohmann::json& j);

}  // namespace tubealg
