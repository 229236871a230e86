#include "tubealg/gvec.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <set>
#include <stdexcept>
#include <tuple>

namespace tubealg {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<int>> table) : name_(std::move(name)), table_(std::move(table))
{
    const int n = order();
    if (n == 0) throw std::invalid_argument("group table is empty");
    for (auto& row : table_) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw std::invalid_argument("group table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        if (table_[0][a] != a || table_[a][0] != a) throw std::invalid_argument("element 0 is not the identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) throw std::invalid_argument("group table is not associative");
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == 0 && table_[b][a] == 0) inv_[a] = b;
        if (inv_[a] < 0) throw std::invalid_argument("element without inverse");
    }
}

FiniteGroup FiniteGroup::from_json(const nlohmann::json& j, std::string name)
{
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(table.size()))
        throw std::invalid_argument("group order does not match the table");
    if (j.contains("name")) name = j.at("name").get<std::string>();
    return FiniteGroup(std::move(name), std::move(table));
}

nlohmann::json FiniteGroup::to_json() const { return {{"name", name_}, {"order", order()}, {"table", table_}}; }

FiniteGroup FiniteGroup::trivial() { return FiniteGroup("trivial", {{0}}); }

FiniteGroup FiniteGroup::cyclic(int n)
{
    if (n < 1) throw std::invalid_argument("cyclic group needs n >= 1");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup("Z" + std::to_string(n), std::move(t));
}

FiniteGroup FiniteGroup::dihedral(int n)
{
    if (n < 1) throw std::invalid_argument("dihedral group needs n >= 1");
    // r^a s^b has index a + n b
    const int N = 2 * n;
    std::vector<std::vector<int>> t(N, std::vector<int>(N));
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            int a = x % n, b = x / n, c = y % n, d = y / n;
            int e = ((a + (b ? -c : c)) % n + n) % n;
            t[x][y] = e + n * ((b + d) % 2);
        }
    return FiniteGroup("D" + std::to_string(n), std::move(t));
}

FiniteGroup FiniteGroup::symmetric(int n)
{
    if (n < 1 || n > 5) throw std::invalid_argument("symmetric groups are generated for 1 <= n <= 5");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    const int N = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(N, std::vector<int>(N));
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            std::vector<int> c(n);
            for (int i = 0; i < n; ++i) c[i] = perms[x][perms[y][i]];
            t[x][y] = index[c];
        }
    return FiniteGroup("S" + std::to_string(n), std::move(t));
}

FiniteGroup FiniteGroup::named(const std::string& spec)
{
    if (spec == "trivial") return trivial();
    std::smatch m;
    static const std::regex long_form("(cyclic|dihedral|symmetric):([0-9]+)"), short_form("([ZDS])([0-9]+)");
    std::string family;
    int n = 0;
    if (std::regex_match(spec, m, long_form)) {
        family = m[1];
        n = std::stoi(m[2]);
    } else if (std::regex_match(spec, m, short_form)) {
        family = m[1] == "Z" ? "cyclic" : m[1] == "D" ? "dihedral" : "symmetric";
        n = std::stoi(m[2]);
    } else {
        throw std::invalid_argument("unknown group \"" + spec + "\"");
    }
    if (family == "cyclic") return cyclic(n);
    if (family == "dihedral") return dihedral(n);
    return symmetric(n);
}

ClassData classes_and_centralizers(const FiniteGroup& G)
{
    const int n = G.order();
    ClassData cd;
    cd.class_of.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        if (cd.class_of[x] >= 0) continue;
        std::set<int> cls;
        for (int y = 0; y < n; ++y) cls.insert(G.conj(y, x));
        for (int c : cls) cd.class_of[c] = static_cast<int>(cd.classes.size());
        cd.classes.emplace_back(cls.begin(), cls.end());
    }
    cd.centralizer.resize(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (G.mul(x, y) == G.mul(y, x)) cd.centralizer[x].push_back(y);
    return cd;
}

Rational TubeElement::coeff(TubeBasis b) const
{
    auto it = terms_.find(b);
    return it == terms_.end() ? Rational(0) : it->second;
}

void TubeElement::add(TubeBasis b, const Rational& c)
{
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(b, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

TubeElement& TubeElement::operator+=(const TubeElement& o)
{
    for (auto& [b, c] : o.terms_) add(b, c);
    return *this;
}

TubeElement tube_mul(const FiniteGroup& G, const TubeElement& a, const TubeElement& b)
{
    TubeElement r;
    for (auto& [ba, ca] : a.terms())
        for (auto& [bb, cb] : b.terms()) {
            if (ba.x != tube_target(G, bb)) continue;
            r.add({bb.x, G.mul(ba.y, bb.y)}, ca * cb);
        }
    return r;
}

TubeElement tube_star(const FiniteGroup& G, const TubeElement& a)
{
    TubeElement r;
    for (auto& [b, c] : a.terms()) r.add({tube_target(G, b), G.inv(b.y)}, c);
    return r;
}

Rational omega_gvec(const TubeElement& a)
{
    Rational s = 0;
    for (auto& [b, c] : a.terms())
        if (b.y == 0) s += c;
    return s;
}

ModelReport model_check(const FiniteGroup& G, int class_index, const ClassData& cd)
{
    const auto& cls = cd.classes.at(class_index);
    const int x0 = cls.front(), n = G.order();
    ModelReport rep;
    rep.representative = x0;
    rep.class_size = static_cast<int>(cls.size());
    rep.centralizer_order = static_cast<int>(cd.centralizer[x0].size());
    rep.expected_dim = static_cast<long long>(rep.centralizer_order) * rep.class_size * rep.class_size;

    std::map<int, int> pos;  // class element -> matrix index
    for (size_t i = 0; i < cls.size(); ++i) pos[cls[i]] = static_cast<int>(i);
    std::vector<int> conjugator(cls.size(), -1);  // least c with c x0 c^{-1} = x_i
    for (int c = 0; c < n; ++c) {
        int i = pos.at(G.conj(c, x0));
        if (conjugator[i] < 0) conjugator[i] = c;
    }
    // model element: (h in Z(x0), row i = target, column j = source)
    using Model = std::tuple<int, int, int>;
    auto phi = [&](TubeBasis b) {
        int i = pos.at(tube_target(G, b)), j = pos.at(b.x);
        int h = G.mul(G.mul(G.inv(conjugator[i]), b.y), conjugator[j]);
        return Model{h, i, j};
    };
    std::vector<TubeBasis> basis;
    for (int x : cls)
        for (int y = 0; y < n; ++y) basis.push_back({x, y});
    rep.dim = static_cast<long long>(basis.size());

    std::set<int> cent(cd.centralizer[x0].begin(), cd.centralizer[x0].end());
    std::set<Model> images;
    bool in_model = true;
    for (auto& b : basis) {
        auto im = phi(b);
        in_model = in_model && cent.count(std::get<0>(im));
        images.insert(im);
    }
    rep.bijective = in_model && static_cast<long long>(images.size()) == rep.expected_dim && rep.dim == rep.expected_dim;

    rep.star_compatible = true;
    for (auto& b : basis) {
        auto s = tube_star(G, TubeElement(b));
        auto [h, i, j] = phi(b);
        if (s.terms().size() != 1 || phi(s.terms().begin()->first) != Model{G.inv(h), j, i} || s.terms().begin()->second != 1)
            rep.star_compatible = false;
    }

    for (auto& a : basis)
        for (auto& b : basis) {
            ++rep.products_checked;
            TubeElement prod = tube_mul(G, TubeElement(a), TubeElement(b));
            auto [ha, ia, ja] = phi(a);
            auto [hb, ib, jb] = phi(b);
            bool agree;
            if (ja != ib) {
                agree = prod.is_zero();
            } else {
                agree = prod.terms().size() == 1 && prod.terms().begin()->second == 1 &&
                        phi(prod.terms().begin()->first) == Model{G.mul(ha, hb), ia, jb};
            }
            if (!agree && rep.counterexamples.size() < 10) rep.counterexamples.emplace_back(a, b);
        }
    return rep;
}

nlohmann::json to_json(const ModelReport& r)
{
    nlohmann::json ce = nlohmann::json::array();
    for (auto& [a, b] : r.counterexamples) ce.push_back({{"a", {a.x, a.y}}, {"b", {b.x, b.y}}});
    return {{"representative", r.representative},
            {"class_size", r.class_size},
            {"centralizer_order", r.centralizer_order},
            {"dim", r.dim},
            {"expected_dim", r.expected_dim},
            {"products_checked", r.products_checked},
            {"bijective", r.bijective},
            {"star_compatible", r.star_compatible},
            {"counterexamples", ce},
            {"ok", r.ok()}};
}

}  // namespace tubealg
