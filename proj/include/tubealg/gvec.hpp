#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tubealg/scalar.hpp"

namespace tubealg {

class FiniteGroup {
  public:
    // validates identity (index 0), associativity and inverses
    FiniteGroup(std::string name, std::vector<std::vector<int>> table);
    static FiniteGroup from_json(const nlohmann::json& j, std::string name = "custom");
    static FiniteGroup trivial();
    static FiniteGroup cyclic(int n);
    static FiniteGroup dihedral(int n);  // symmetries of the n-gon, order 2n
    static FiniteGroup symmetric(int n);
    // "trivial", "cyclic:6", "dihedral:4", "symmetric:3", also "Z6", "D4", "S3"
    static FiniteGroup named(const std::string& spec);

    const std::string& name() const { return name_; }
    int order() const { return static_cast<int>(table_.size()); }
    int mul(int a, int b) const { return table_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int y, int x) const { return mul(mul(y, x), inv(y)); }  // y x y^{-1}
    nlohmann::json to_json() const;

  private:
    std::string name_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inv_;
};

struct ClassData {
    std::vector<std::vector<int>> classes;     // each sorted, ordered by least element
    std::vector<int> class_of;                 // element -> class index
    std::vector<std::vector<int>> centralizer;  // element -> sorted centralizer
};
ClassData classes_and_centralizers(const FiniteGroup& G);

// f^Y_X: from X to Y X Y^{-1} with side label Y
struct TubeBasis {
    int x = 0;
    int y = 0;
    auto operator<=>(const TubeBasis&) const = default;
};

class TubeElement {
  public:
    using Terms = std::map<TubeBasis, Rational>;
    TubeElement() = default;
    TubeElement(TubeBasis b, const Rational& c = 1) { add(b, c); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(TubeBasis b) const;
    void add(TubeBasis b, const Rational& c);
    TubeElement& operator+=(const TubeElement& o);
    bool operator==(const TubeElement& o) const = default;

  private:
    Terms terms_;
};

inline int tube_target(const FiniteGroup& G, TubeBasis b) { return G.conj(b.y, b.x); }
TubeElement tube_mul(const FiniteGroup& G, const TubeElement& a, const TubeElement& b);
TubeElement tube_star(const FiniteGroup& G, const TubeElement& a);
Rational omega_gvec(const TubeElement& a);

// explicit isomorphism A_Gamma -> C[Z_G(x0)] (x) matrix units over Gamma
struct ModelReport {
    int representative = 0;
    int class_size = 0;
    int centralizer_order = 0;
    long long dim = 0;
    long long expected_dim = 0;
    long long products_checked = 0;
    bool bijective = false;
    bool star_compatible = false;
    std::vector<std::pair<TubeBasis, TubeBasis>> counterexamples;
    bool ok() const { return bijective && star_compatible && counterexamples.empty() && dim == expected_dim; }
};
ModelReport model_check(const FiniteGroup& G, int class_index, const ClassData& cd);
nlohmann::json to_json(const ModelReport& r);

}  // namespace tubealg
