#include "tubealg/lowweight.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "tubealg/linalg.hpp"

namespace tubealg {

namespace {

void check_weights(int m, int n)
{
    if (m < 0 || n < m || (n - m) % 2) throw std::invalid_argument("weights must satisfy 0 <= m <= n, n = m mod 2");
}

AnnularDiagram base_diagram(int m) { return m == 0 ? AnnularDiagram::circles(0) : AnnularDiagram::identity(m); }

// all perfect matchings of pts, as lists of pairs
void matchings(std::vector<int>& pts, std::vector<std::pair<int, int>>& cur,
               std::vector<std::vector<std::pair<int, int>>>& out)
{
    if (pts.empty()) {
        out.push_back(cur);
        return;
    }
    int a = pts[0];
    for (size_t i = 1; i < pts.size(); ++i) {
        int b = pts[i];
        std::vector<int> rest;
        for (size_t j = 1; j < pts.size(); ++j)
            if (j != i) rest.push_back(pts[j]);
        cur.emplace_back(a, b);
        matchings(rest, cur, out);
        cur.pop_back();
    }
}

}  // namespace

ModuleVector ModuleVector::generator(int m)
{
    ModuleVector v(m, m);
    v.terms_.emplace(base_diagram(m), Scalar(Rational(1), kind_for(m)));
    return v;
}

Scalar ModuleVector::coeff(const AnnularDiagram& d) const
{
    auto it = terms_.find(d);
    return it == terms_.end() ? Scalar(Rational(0), kind()) : it->second;
}

void ModuleVector::add(const AnnularDiagram& d, const Scalar& c, const QParam& P, int contractible)
{
    if (d.inner != m_ || d.outer != n_) throw std::invalid_argument("module vector shape mismatch");
    if (c.is_zero()) return;
    Scalar coef = c.with_kind(kind());
    if (contractible) coef *= qpow(P.delta, contractible);
    AnnularDiagram r;
    if (m_ > 0) {
        if (d.rank() < m_) return;
        coef *= Scalar::u(kind(), rotation_index(d));
        r = normalize_rotation(d);
    } else {
        coef *= Scalar::u(kind(), d.loops);
        r = d;
        r.loops = 0;
    }
    if (coef.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(r, coef);
    if (!fresh) {
        it->second += coef;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& o)
{
    if (o.m_ != m_ || o.n_ != n_) throw std::invalid_argument("module vector shape mismatch");
    for (auto& [d, c] : o.terms_) {
        auto [it, fresh] = terms_.try_emplace(d, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

ModuleVector& ModuleVector::operator*=(const Scalar& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [d, v] : terms_) v = (v * c).with_kind(kind());
    return *this;
}

std::vector<AnnularDiagram> module_basis(int m, int n)
{
    if (m < 0 || n < m || (n - m) % 2) return {};
    std::vector<AnnularDiagram> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != m) continue;
        std::vector<int> defects, rest;
        for (int j = 0; j < n; ++j) ((mask >> j) & 1 ? defects : rest).push_back(j);
        std::vector<std::vector<std::pair<int, int>>> all;
        std::vector<std::pair<int, int>> cur;
        matchings(rest, cur, all);
        for (auto& arcs : all)
            for (unsigned side = 0; side < (1u << arcs.size()); ++side) {
                AnnularDiagram d{m, n, std::vector<int>(m + n), std::vector<int>(m + n, 0), 0};
                for (int i = 0; i < m; ++i) {
                    d.partner[i] = m + defects[i];
                    d.partner[m + defects[i]] = i;
                }
                for (size_t a = 0; a < arcs.size(); ++a) {
                    int p = m + arcs[a].first, q = m + arcs[a].second;
                    d.partner[p] = q;
                    d.partner[q] = p;
                    int c = (side >> a) & 1 ? -1 : 0;
                    d.cross[p] = c;
                    d.cross[q] = -c;
                }
                if (is_valid(d)) out.push_back(std::move(d));
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

long long module_dim(int m, int n)
{
    if (m < 0 || n < m || (n - m) % 2) return 0;
    long long s = 0;
    for (int l = m; l <= n; l += 2) s += hom_dim(n, l);
    return s;
}

ModuleVector act(const AnnularElement& x, const ModuleVector& v, const QParam& P)
{
    if (x.inner() != v.n()) throw std::invalid_argument("act: level mismatch");
    ModuleVector r(v.m(), x.outer());
    for (auto& [dx, cx] : x.terms())
        for (auto& [dv, cv] : v.terms()) {
            auto [d, loops] = ann_compose_diagrams(dx, dv);
            r.add(d, cx.with_kind(v.kind()) * cv, P, loops);
        }
    return r;
}

ModuleVector act(const TLElement& x, const ModuleVector& v, const QParam& P)
{
    return act(AnnularElement::from_tl(x), v, P);
}

Scalar inner_product(const ModuleVector& v, const ModuleVector& w, const QParam& P)
{
    if (v.m() != w.m() || v.n() != w.n()) throw std::invalid_argument("inner product: shape mismatch");
    ModuleVector acc(v.m(), v.m());
    for (auto& [dv, cv] : v.terms())
        for (auto& [dw, cw] : w.terms()) {
            auto [d, loops] = ann_compose_diagrams(ann_star_diagram(dw), dv);
            acc.add(d, cv * involute(cw), P, loops);
        }
    return acc.coeff(base_diagram(v.m()));
}

ModuleVector g_vector(int m, int k, const QParam& P)
{
    check_weights(m, k);
    static std::shared_mutex mu;
    static std::map<std::tuple<std::string, int, int>, ModuleVector> memo;
    auto key = std::make_tuple(P.str(), m, k);
    {
        std::shared_lock lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    ModuleVector d(m, k);
    d.add(inclusion_diagram(k, m), Scalar(1), P);
    ModuleVector g = act(*jones_wenzl(k, P), d, P);
    std::unique_lock lock(mu);
    memo.emplace(key, g);
    return g;
}

Scalar b_step(int s, int m, const QParam& P)
{
    const ParamKind kind = kind_for(m);
    const Rational denom = qnum(s, P) * qnum(s - 1, P);
    if (m == 0) {
        Rational a = qnum(s, P), b = qnum(s / 2, P);
        Scalar r = Scalar(a * a, kind) - Scalar::monomial(2, b * b, kind);
        return r * Rational(1 / denom);
    }
    Rational pre = qnum((s - m) / 2, P) * qnum((s + m) / 2, P) / denom;
    Rational sign = s % 2 ? -1 : 1;
    Scalar r = Scalar(qpow(P.q, s) + qpow(P.q, -s), kind) - sign * (Scalar::u(kind, 2) + Scalar::u(kind, -2));
    return r * pre;
}

Scalar b_recursive(int k, int m, int l, const QParam& P)
{
    check_weights(m, l);
    check_weights(l, k);
    Scalar r(Rational(1), kind_for(m));
    for (int s = l + 2; s <= k; s += 2) r *= b_step(s, m, P);
    return r;
}

Scalar b_oracle(int k, int m, int l, const QParam& P)
{
    check_weights(m, l);
    check_weights(l, k);
    ModuleVector g = g_vector(m, k, P);
    AnnularElement reducer(ann_star_diagram(inclusion_diagram(k, l)));
    ModuleVector r = act(*jones_wenzl(l, P), act(reducer, g, P), P);
    ModuleVector target = g_vector(m, l, P);
    Scalar lambda = r.coeff(inclusion_diagram(l, m));
    if (!(lambda * target == r)) throw std::logic_error("reduced g-vector is not proportional to g");
    return lambda;
}

Scalar char_oracle(int k, int m, const CornerElement& x, const QParam& P)
{
    check_weights(m, k);
    if (x.k() != k) throw std::invalid_argument("character: corner weight mismatch");
    ModuleVector g = g_vector(m, k, P);
    AnnularElement mid(k, k);
    for (auto& [l, c] : x.terms()) mid.add(corner_diagram(k, l), c);
    ModuleVector r = act(*jones_wenzl(k, P), act(mid, g, P), P);
    Scalar lambda = r.coeff(inclusion_diagram(k, m));
    if (!(lambda * g == r)) throw std::logic_error("corner element does not act by a scalar on g");
    return lambda;
}

Scalar char_closed(int k, int m, CharFamily family, int index, const QParam& P)
{
    const ParamKind kind = kind_for(m);
    switch (family) {
    case CharFamily::loops:
        if (m != 0 || k % 2 || index < 0) throw std::invalid_argument("loop family needs m = 0, k even");
        return Scalar::u(kind, index) * b_recursive(k, 0, 0, P);
    case CharFamily::rank_power0:
        if (m != 0 || k % 2 || index <= 0 || index % 2 || index > k)
            throw std::invalid_argument("x^k_{n,0} family needs m = 0 and even 0 < n <= k");
        return b_recursive(k, 0, index, P);
    case CharFamily::rank_power1: {
        const int n = index;
        if (n < std::max(m, 1) || n > k || (n - m) % 2 || (k - n) % 2)
            throw std::invalid_argument("x^k_{n,1} family needs m <= n <= k, matching parity");
        if (m == 0) {
            Rational c = ((n / 2) % 2 ? -1 : 1) * qnum(n / 2, P) / qnum(n, P);
            return Scalar::monomial(1, c, kind) * b_recursive(k, 0, n, P);
        }
        Rational sign = (((n - m) / 2) % 2) ? -1 : 1;
        Rational lo = ((n % 2) ? -1 : 1) * qnum((n - m) / 2, P), hi = qnum((n + m) / 2, P);
        Scalar rho = (Scalar::monomial(-1, lo, kind) + Scalar::monomial(1, hi, kind)) * Rational(sign / qnum(n, P));
        return rho * b_recursive(k, m, n, P);
    }
    }
    throw std::invalid_argument("unknown family");
}

std::vector<std::vector<Scalar>> gram_matrix(int m, int n, const QParam& P)
{
    auto basis = module_basis(m, n);
    const size_t N = basis.size();
    std::vector<std::vector<Scalar>> G(N, std::vector<Scalar>(N));
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) {
            ModuleVector vi(m, n), vj(m, n);
            vi.add(basis[i], Scalar(1), P);
            vj.add(basis[j], Scalar(1), P);
            G[i][j] = inner_product(vj, vi, P);
        }
    return G;
}

std::optional<Rational> rational_point(std::complex<double> point)
{
    if (point.imag() != 0) return std::nullopt;
    double x = point.real();
    for (long d = 1; d <= 1000; ++d) {
        double n = std::round(x * d);
        if (std::abs(n / d - x) < 1e-12) return rat(static_cast<long>(n), d);
    }
    return std::nullopt;
}

RankReport quotient_rank(int m, int n, std::complex<double> point, const QParam& P, double rel_tol)
{
    check_weights(m, n);
    RankReport rep;
    const double delta = P.delta.get_d();
    if (m > 0)
        rep.admissible = std::abs(std::abs(point) - 1) < 1e-9;
    else
        rep.admissible = std::abs(point.imag()) < 1e-12 && std::abs(point.real()) <= delta + 1e-12;
    auto G = gram_matrix(m, n, P);
    const int N = static_cast<int>(G.size());
    rep.basis_size = N;
    Eigen::MatrixXcd M(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) M(i, j) = eval_complex(G[i][j], point);
    rep.numeric_rank = N ? numeric_rank(M, rel_tol) : 0;
    rep.min_eigenvalue = N ? min_hermitian_eigenvalue(M) : 0;
    if (auto r = rational_point(point)) {
        RMatrix R(N, std::vector<Rational>(N));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) R[i][j] = eval_rational(G[i][j], *r);
        rep.exact_rank = exact_rank(R);
    }
    auto survives = [&](int l) {
        double b = std::abs(eval_complex(b_recursive(l, m, m, P), point));
        return b > 1e-9;
    };
    rep.g_line_rank = survives(n) ? 1 : 0;
    for (int l = m; l <= n; l += 2)
        if (survives(l)) rep.predicted_rank += static_cast<int>(hom_dim(n, l));
    return rep;
}

std::string btable_csv(int max_k, const QParam& P)
{
    std::ostringstream os;
    os << "k,m,l,coefficient\n";
    for (int k = 0; k <= max_k; ++k)
        for (int m = k % 2; m <= k; m += 2)
            for (int l = m; l <= k; l += 2) os << k << "," << m << "," << l << ",\"" << b_recursive(k, m, l, P).str() << "\"\n";
    return os.str();
}

}  // namespace tubealg
