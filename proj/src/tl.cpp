#include "tubealg/tl.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include "tubealg/linalg.hpp"

namespace tubealg {

int TLDiagram::through_count() const
{
    int c = 0;
    for (int p = 0; p < bottom; ++p)
        if (pairing[p] >= bottom) ++c;
    return c;
}

TLDiagram TLDiagram::identity(int k)
{
    TLDiagram d{k, k, std::vector<int>(2 * k)};
    for (int i = 0; i < k; ++i) {
        d.pairing[i] = k + i;
        d.pairing[k + i] = i;
    }
    return d;
}

TLDiagram TLDiagram::cup() { return TLDiagram{0, 2, {1, 0}}; }
TLDiagram TLDiagram::cap() { return TLDiagram{2, 0, {1, 0}}; }

TLDiagram TLDiagram::e(int k, int i)
{
    if (i < 1 || i >= k) throw std::invalid_argument("e_i index out of range");
    TLDiagram d = identity(k);
    int a = i - 1, b = i;
    d.pairing[a] = b;
    d.pairing[b] = a;
    d.pairing[k + a] = k + b;
    d.pairing[k + b] = k + a;
    return d;
}

TLDiagram cap_at(int k, int i)
{
    if (i < 1 || i >= k) throw std::invalid_argument("cap position out of range");
    TLDiagram d{k, k - 2, std::vector<int>(2 * k - 2)};
    int a = i - 1;
    d.pairing[a] = a + 1;
    d.pairing[a + 1] = a;
    int t = 0;
    for (int p = 0; p < k; ++p) {
        if (p == a || p == a + 1) continue;
        d.pairing[p] = k + t;
        d.pairing[k + t] = p;
        ++t;
    }
    return d;
}

TLDiagram cup_at(int k, int i) { return star_diagram(cap_at(k, i)); }

TLDiagram single_cap_diagram(int k, int p)
{
    TLDiagram d{k, k, std::vector<int>(2 * k)};
    int a = p - 1;
    d.pairing[a] = a + 1;
    d.pairing[a + 1] = a;
    d.pairing[k + k - 2] = k + k - 1;
    d.pairing[k + k - 1] = k + k - 2;
    int t = 0;
    for (int b = 0; b < k; ++b) {
        if (b == a || b == a + 1) continue;
        d.pairing[b] = k + t;
        d.pairing[k + t] = b;
        ++t;
    }
    return d;
}

namespace {

int cyclic_pos(const TLDiagram& d, int p) { return p < d.bottom ? p : d.bottom + (d.top - 1 - (p - d.bottom)); }

// all non-crossing perfect matchings of positions [lo, hi)
std::vector<std::vector<std::pair<int, int>>> nc_matchings(int lo, int hi)
{
    std::vector<std::vector<std::pair<int, int>>> res;
    if (lo >= hi) {
        res.emplace_back();
        return res;
    }
    for (int j = lo + 1; j < hi; j += 2) {
        auto inner = nc_matchings(lo + 1, j);
        auto outer = nc_matchings(j + 1, hi);
        for (auto& a : inner)
            for (auto& b : outer) {
                std::vector<std::pair<int, int>> m;
                m.reserve(a.size() + b.size() + 1);
                m.emplace_back(lo, j);
                m.insert(m.end(), a.begin(), a.end());
                m.insert(m.end(), b.begin(), b.end());
                res.push_back(std::move(m));
            }
    }
    return res;
}

}  // namespace

bool is_planar(const TLDiagram& d)
{
    int n = d.size();
    if (static_cast<int>(d.pairing.size()) != n) return false;
    for (int p = 0; p < n; ++p) {
        int q = d.pairing[p];
        if (q < 0 || q >= n || q == p || d.pairing[q] != p) return false;
    }
    for (int p = 0; p < n; ++p) {
        int a = cyclic_pos(d, p), b = cyclic_pos(d, d.pairing[p]);
        if (a > b) continue;
        for (int r = 0; r < n; ++r) {
            int c = cyclic_pos(d, r), e = cyclic_pos(d, d.pairing[r]);
            if (c > e) continue;
            if ((a < c && c < b && b < e) || (c < a && a < e && e < b)) return false;
        }
    }
    return true;
}

std::vector<TLDiagram> enumerate_diagrams(int bottom, int top)
{
    std::vector<TLDiagram> out;
    int n = bottom + top;
    if (bottom < 0 || top < 0 || n % 2) return out;
    std::vector<int> point(n);
    for (int p = 0; p < n; ++p) point[p] = p < bottom ? p : bottom + (top - 1 - (p - bottom));
    for (auto& m : nc_matchings(0, n)) {
        TLDiagram d{bottom, top, std::vector<int>(n)};
        for (auto [a, b] : m) {
            d.pairing[point[a]] = point[b];
            d.pairing[point[b]] = point[a];
        }
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end());
    return out;
}

TLElement::TLElement(const TLDiagram& d, const Scalar& c) : bottom_(d.bottom), top_(d.top) { add(d, c); }

Scalar TLElement::coeff(const TLDiagram& d) const
{
    auto it = terms_.find(d);
    return it == terms_.end() ? Scalar() : it->second;
}

void TLElement::add(const TLDiagram& d, const Scalar& c)
{
    if (d.bottom != bottom_ || d.top != top_) throw std::invalid_argument("diagram shape mismatch");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(d, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TLElement& TLElement::operator+=(const TLElement& o)
{
    if (o.bottom_ != bottom_ || o.top_ != top_) throw std::invalid_argument("element shape mismatch");
    for (auto& [d, c] : o.terms_) add(d, c);
    return *this;
}

TLElement& TLElement::operator-=(const TLElement& o)
{
    if (o.bottom_ != bottom_ || o.top_ != top_) throw std::invalid_argument("element shape mismatch");
    for (auto& [d, c] : o.terms_) add(d, -c);
    return *this;
}

TLElement& TLElement::operator*=(const Scalar& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [d, v] : terms_) v *= c;
    return *this;
}

std::pair<TLDiagram, int> compose_diagrams(const TLDiagram& x, const TLDiagram& y)
{
    if (x.top != y.bottom) throw std::invalid_argument("compose: middle counts differ");
    const int b = x.bottom, m = x.top, t = y.top;
    TLDiagram r{b, t, std::vector<int>(b + t, -1)};
    std::vector<char> seen(m, 0);
    // walk from an outer endpoint until another outer endpoint is reached
    auto walk = [&](bool in_x, int p) {
        while (true) {
            if (in_x) {
                int q = x.pairing[p];
                if (q < b) return q;
                seen[q - b] = 1;
                in_x = false;
                p = q - b;
            } else {
                int q = y.pairing[p];
                if (q >= m) return b + (q - m);
                seen[q] = 1;
                in_x = true;
                p = b + q;
            }
        }
    };
    for (int p = 0; p < b; ++p)
        if (r.pairing[p] < 0) {
            int q = walk(true, p);
            r.pairing[p] = q;
            r.pairing[q] = p;
        }
    for (int j = 0; j < t; ++j)
        if (r.pairing[b + j] < 0) {
            int q = walk(false, m + j);
            r.pairing[b + j] = q;
            r.pairing[q] = b + j;
        }
    int loops = 0;
    for (int j = 0; j < m; ++j) {
        if (seen[j]) continue;
        ++loops;
        int p = j;
        do {
            seen[p] = 1;
            int q = y.pairing[p];  // stays in the middle
            seen[q] = 1;
            p = x.pairing[b + q] - b;
        } while (!seen[p]);
    }
    return {std::move(r), loops};
}

TLElement compose(const TLElement& x, const TLElement& y, const QParam& P)
{
    if (x.top() != y.bottom()) throw std::invalid_argument("compose: middle counts differ");
    TLElement r(x.bottom(), y.top());
    Scalar delta(P.delta);
    for (auto& [dx, cx] : x.terms())
        for (auto& [dy, cy] : y.terms()) {
            auto [d, loops] = compose_diagrams(dx, dy);
            Scalar c = cx * cy;
            if (loops) c *= qpow(P.delta, loops);
            r.add(d, c);
        }
    return r;
}

TLDiagram tensor_diagrams(const TLDiagram& x, const TLDiagram& y)
{
    int b = x.bottom + y.bottom, t = x.top + y.top;
    TLDiagram r{b, t, std::vector<int>(b + t)};
    auto mx = [&](int p) { return p < x.bottom ? p : b + (p - x.bottom); };
    auto my = [&](int p) { return p < y.bottom ? x.bottom + p : b + x.top + (p - y.bottom); };
    for (int p = 0; p < x.size(); ++p) r.pairing[mx(p)] = mx(x.pairing[p]);
    for (int p = 0; p < y.size(); ++p) r.pairing[my(p)] = my(y.pairing[p]);
    return r;
}

TLElement tensor(const TLElement& x, const TLElement& y)
{
    TLElement r(x.bottom() + y.bottom(), x.top() + y.top());
    for (auto& [dx, cx] : x.terms())
        for (auto& [dy, cy] : y.terms()) r.add(tensor_diagrams(dx, dy), cx * cy);
    return r;
}

TLDiagram star_diagram(const TLDiagram& d)
{
    TLDiagram r{d.top, d.bottom, std::vector<int>(d.size())};
    // old top j becomes new bottom j, old bottom i becomes new top i
    auto m = [&](int p) { return p < d.bottom ? d.top + p : p - d.bottom; };
    for (int p = 0; p < d.size(); ++p) r.pairing[m(p)] = m(d.pairing[p]);
    return r;
}

TLElement star(const TLElement& x)
{
    TLElement r(x.top(), x.bottom());
    for (auto& [d, c] : x.terms()) r.add(star_diagram(d), involute(c));
    return r;
}

namespace {

struct JWMemo {
    std::shared_mutex mu;
    std::map<std::pair<std::string, int>, std::shared_ptr<const TLElement>> table;
};

JWMemo& jw_memo()
{
    static JWMemo memo;
    return memo;
}

}  // namespace

std::shared_ptr<const TLElement> jones_wenzl(int k, const QParam& P)
{
    if (k < 0) throw std::invalid_argument("negative weight");
    auto& memo = jw_memo();
    auto key = std::make_pair(P.str(), k);
    {
        std::shared_lock lock(memo.mu);
        auto it = memo.table.find(key);
        if (it != memo.table.end()) return it->second;
    }
    std::shared_ptr<const TLElement> res;
    if (k <= 1) {
        res = std::make_shared<const TLElement>(TLElement::identity(k));
    } else {
        auto prev = jones_wenzl(k - 1, P);
        TLElement F = tensor(*prev, TLElement::identity(1));
        TLElement mid = compose(compose(F, TLElement(TLDiagram::e(k, k - 1)), P), F, P);
        Rational ratio = qnum(k - 1, P) / qnum(k, P);
        res = std::make_shared<const TLElement>(F - Scalar(ratio) * mid);
    }
    std::unique_lock lock(memo.mu);
    auto [it, fresh] = memo.table.try_emplace(key, res);
    return it->second;
}

int markov_loops(const TLDiagram& d)
{
    if (d.bottom != d.top) throw std::invalid_argument("trace of a non-square diagram");
    int k = d.bottom, loops = 0;
    std::vector<char> seen(2 * k, 0);
    for (int s = 0; s < 2 * k; ++s) {
        if (seen[s]) continue;
        ++loops;
        int p = s;
        while (!seen[p]) {
            seen[p] = 1;
            int q = d.pairing[p];
            seen[q] = 1;
            p = q < k ? q + k : q - k;  // closure strand on the right
        }
    }
    return loops;
}

Scalar markov_trace(const TLElement& x, const QParam& P)
{
    if (x.bottom() != x.top()) throw std::invalid_argument("trace of a non-square element");
    Scalar s;
    for (auto& [d, c] : x.terms()) s += c * qpow(P.delta, markov_loops(d));
    return s;
}

long long catalan(int n)
{
    long long c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

long long hom_dim(int n, int j)
{
    if (j < 0 || j > n || (n - j) % 2) return 0;
    auto binom = [](int a, int b) -> long long {
        if (b < 0 || b > a) return 0;
        long long r = 1;
        for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    int s = (n - j) / 2;
    return binom(n, s) - binom(n, s - 1);
}

std::shared_ptr<const HomBasis> hom_basis(int n, int j, const QParam& P)
{
    if (j < 0 || j > n || (n - j) % 2) throw std::invalid_argument("inadmissible isotypic weight");
    static std::shared_mutex mu;
    static std::map<std::tuple<std::string, int, int>, std::shared_ptr<const HomBasis>> table;
    auto key = std::make_tuple(P.str(), n, j);
    {
        std::shared_lock lock(mu);
        auto it = table.find(key);
        if (it != table.end()) return it->second;
    }
    auto hb = std::make_shared<HomBasis>();
    auto fj = jones_wenzl(j, P);
    for (auto& d : enumerate_diagrams(j, n))
        if (d.through_count() == j) hb->v.push_back(compose(*fj, TLElement(d), P));
    const size_t r = hb->v.size();
    for (auto& v : hb->v) hb->vstar.push_back(star(v));
    TLDiagram id = TLDiagram::identity(j);
    RMatrix gram(r, std::vector<Rational>(r));
    for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < r; ++b) gram[a][b] = compose(hb->v[b], hb->vstar[a], P).coeff(id).constant();
    auto inv = invert(gram);
    if (!inv) throw std::runtime_error("singular Gram matrix for isotypic projector");
    hb->gram_inv = std::move(*inv);
    std::unique_lock lock(mu);
    auto [it, fresh] = table.try_emplace(key, std::move(hb));
    return it->second;
}

TLElement isotypic_projector(int n, int j, const QParam& P)
{
    auto hb = hom_basis(n, j, P);
    const size_t r = hb->v.size();
    TLElement out(n, n);
    for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < r; ++b) {
            if (hb->gram_inv[a][b] == 0) continue;
            out += Scalar(hb->gram_inv[a][b]) * compose(hb->vstar[b], hb->v[a], P);
        }
    return out;
}

nlohmann::json to_json(const TLElement& x)
{
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [d, c] : x.terms()) terms.push_back({{"pairing", d.pairing}, {"coeff", to_json(c)}});
    return {{"bottom", x.bottom()}, {"top", x.top()}, {"terms", terms}};
}

TLElement tl_from_json(const nlohmann::json& j)
{
    TLElement x(j.at("bottom").get<int>(), j.at("top").get<int>());
    for (auto& t : j.at("terms")) {
        TLDiagram d{x.bottom(), x.top(), t.at("pairing").get<std::vector<int>>()};
        if (!is_planar(d)) throw std::invalid_argument("non-planar diagram in input");
        x.add(d, scalar_from_json(t.at("coeff")));
    }
    return x;
}

}  // namespace tubealg
