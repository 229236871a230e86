#include "tubealg/annular.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace tubealg {

namespace {

long long floor_div(long long a, long long b)
{
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// lifted coordinates on the universal cover, period D
struct Lift {
    long long D, in_step, out_step;
    explicit Lift(const AnnularDiagram& d)
    {
        long long m = std::max(1, d.inner), o = std::max(1, d.outer);
        D = 2 * m * o;
        in_step = o;
        out_step = m;
    }
    long long pos(const AnnularDiagram& d, int p) const
    {
        return p < d.inner ? (2LL * p + 1) * in_step : (2LL * (p - d.inner) + 1) * out_step;
    }
};

}  // namespace

int AnnularDiagram::rank() const
{
    int r = 0;
    for (int p = 0; p < inner; ++p)
        if (partner[p] >= inner) ++r;
    return r;
}

AnnularDiagram AnnularDiagram::identity(int k) { return rotation(k, 0); }

AnnularDiagram AnnularDiagram::rotation(int k, int n)
{
    AnnularDiagram d{k, k, std::vector<int>(2 * k), std::vector<int>(2 * k), 0};
    if (k == 0) {
        if (n != 0) throw std::invalid_argument("rotation of the empty boundary");
        return d;
    }
    for (int i = 0; i < k; ++i) {
        long long t = i + n;
        int j = static_cast<int>(((t % k) + k) % k);
        int c = static_cast<int>(floor_div(t, k));
        d.partner[i] = k + j;
        d.partner[k + j] = i;
        d.cross[i] = c;
        d.cross[k + j] = -c;
    }
    return d;
}

AnnularDiagram AnnularDiagram::from_tl(const TLDiagram& t)
{
    return AnnularDiagram{t.bottom, t.top, t.pairing, std::vector<int>(t.size(), 0), 0};
}

AnnularDiagram AnnularDiagram::circles(int j) { return AnnularDiagram{0, 0, {}, {}, j}; }

bool is_valid(const AnnularDiagram& d)
{
    const int n = d.size();
    if (d.inner < 0 || d.outer < 0 || d.loops < 0) return false;
    if (static_cast<int>(d.partner.size()) != n || static_cast<int>(d.cross.size()) != n) return false;
    for (int p = 0; p < n; ++p) {
        int q = d.partner[p];
        if (q < 0 || q >= n || q == p || d.partner[q] != p || d.cross[q] != -d.cross[p]) return false;
    }
    if (d.rank() > 0 && d.loops > 0) return false;
    Lift L(d);
    struct Arc {
        long long lo, hi;
    };
    std::vector<Arc> tops, bottoms;
    std::vector<std::pair<long long, long long>> through;  // (bottom, top) lifts
    for (int p = 0; p < n; ++p) {
        int q = d.partner[p];
        if (q < p) continue;
        long long a = L.pos(d, p), b = L.pos(d, q) + d.cross[p] * L.D;
        if (p < d.inner && q >= d.inner) {
            through.emplace_back(a, b);
            continue;
        }
        Arc arc{std::min(a, b), std::max(a, b)};
        if (arc.hi - arc.lo >= L.D) return false;
        (q < d.inner ? bottoms : tops).push_back(arc);
    }
    auto interleave = [&](const Arc& x, const Arc& y) {
        for (long long s = floor_div(x.lo - y.hi, L.D) - 1; s <= floor_div(x.hi - y.lo, L.D) + 1; ++s) {
            long long a = y.lo + s * L.D, b = y.hi + s * L.D;
            if ((x.lo < a && a < x.hi && x.hi < b) || (a < x.lo && x.lo < b && b < x.hi)) return true;
        }
        return false;
    };
    auto covers = [&](const Arc& x, long long pt) {
        long long s = floor_div(x.lo - pt, L.D) + 1;  // smallest shift with pt + sD > lo
        return pt + s * L.D < x.hi;
    };
    for (auto* side : {&tops, &bottoms}) {
        auto& arcs = *side;
        for (size_t i = 0; i < arcs.size(); ++i)
            for (size_t j = i + 1; j < arcs.size(); ++j)
                if (interleave(arcs[i], arcs[j])) return false;
    }
    for (auto& [b, t] : through) {
        for (auto& a : tops)
            if (covers(a, t)) return false;
        for (auto& a : bottoms)
            if (covers(a, b)) return false;
    }
    for (size_t i = 0; i < through.size(); ++i)
        for (size_t j = i + 1; j < through.size(); ++j) {
            long long db = through[i].first - through[j].first, dt = through[i].second - through[j].second;
            long long lo = std::min(db, dt), hi = std::max(db, dt);
            long long s = -floor_div(-lo, L.D);  // ceil
            if (s * L.D <= hi) return false;
        }
    return true;
}

AnnularDiagram ann_star_diagram(const AnnularDiagram& d)
{
    AnnularDiagram r{d.outer, d.inner, std::vector<int>(d.size()), std::vector<int>(d.size()), d.loops};
    auto m = [&](int p) { return p < d.inner ? d.outer + p : p - d.inner; };
    for (int p = 0; p < d.size(); ++p) {
        r.partner[m(p)] = m(d.partner[p]);
        r.cross[m(p)] = d.cross[p];
    }
    return r;
}

std::pair<AnnularDiagram, int> ann_compose_diagrams(const AnnularDiagram& x, const AnnularDiagram& y)
{
    if (x.inner != y.outer) throw std::invalid_argument("annular compose: boundary counts differ");
    const int l = y.inner, m = y.outer, n = x.outer;
    AnnularDiagram r{l, n, std::vector<int>(l + n, -1), std::vector<int>(l + n, 0), x.loops + y.loops};
    std::vector<char> seen(m, 0);
    auto walk = [&](bool in_y, int p, int& c) {
        while (true) {
            if (in_y) {
                int q = y.partner[p];
                c += y.cross[p];
                if (q < l) return q;
                seen[q - l] = 1;
                in_y = false;
                p = q - l;
            } else {
                int q = x.partner[p];
                c += x.cross[p];
                if (q >= m) return l + (q - m);
                seen[q] = 1;
                in_y = true;
                p = l + q;
            }
        }
    };
    for (int p = 0; p < l + n; ++p) {
        if (r.partner[p] >= 0) continue;
        int c = 0;
        int q = p < l ? walk(true, p, c) : walk(false, m + (p - l), c);
        r.partner[p] = q;
        r.partner[q] = p;
        r.cross[p] = c;
        r.cross[q] = -c;
    }
    int contractible = 0;
    for (int j = 0; j < m; ++j) {
        if (seen[j]) continue;
        int c = 0, p = j;
        do {
            seen[p] = 1;
            int q = x.partner[p];
            c += x.cross[p];
            seen[q] = 1;
            int w = y.partner[l + q];
            c += y.cross[l + q];
            p = w - l;
        } while (!seen[p]);
        if (c == 0)
            ++contractible;
        else if (c == 1 || c == -1)
            ++r.loops;
        else
            throw std::logic_error("closed curve winding more than once");
    }
    if (r.loops > 0 && r.rank() > 0) throw std::logic_error("loop crossing a through strand");
    return {std::move(r), contractible};
}

AnnularElement::AnnularElement(const AnnularDiagram& d, const Scalar& c) : inner_(d.inner), outer_(d.outer)
{
    add(d, c);
}

AnnularElement AnnularElement::from_tl(const TLElement& x)
{
    AnnularElement r(x.bottom(), x.top());
    for (auto& [d, c] : x.terms()) r.add(AnnularDiagram::from_tl(d), c);
    return r;
}

Scalar AnnularElement::coeff(const AnnularDiagram& d) const
{
    auto it = terms_.find(d);
    return it == terms_.end() ? Scalar() : it->second;
}

void AnnularElement::add(const AnnularDiagram& d, const Scalar& c)
{
    if (d.inner != inner_ || d.outer != outer_) throw std::invalid_argument("annular shape mismatch");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(d, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AnnularElement& AnnularElement::operator+=(const AnnularElement& o)
{
    for (auto& [d, c] : o.terms_) add(d, c);
    return *this;
}

AnnularElement& AnnularElement::operator-=(const AnnularElement& o)
{
    for (auto& [d, c] : o.terms_) add(d, -c);
    return *this;
}

AnnularElement& AnnularElement::operator*=(const Scalar& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [d, v] : terms_) v *= c;
    return *this;
}

AnnularElement ann_compose(const AnnularElement& x, const AnnularElement& y, const QParam& P)
{
    if (x.inner() != y.outer()) throw std::invalid_argument("annular compose: boundary counts differ");
    AnnularElement r(y.inner(), x.outer());
    for (auto& [dx, cx] : x.terms())
        for (auto& [dy, cy] : y.terms()) {
            auto [d, loops] = ann_compose_diagrams(dx, dy);
            Scalar c = cx * cy;
            if (loops) c *= qpow(P.delta, loops);
            r.add(d, c);
        }
    return r;
}

AnnularElement ann_star(const AnnularElement& x)
{
    AnnularElement r(x.outer(), x.inner());
    for (auto& [d, c] : x.terms()) r.add(ann_star_diagram(d), involute(c));
    return r;
}

int rotation_index(const AnnularDiagram& d)
{
    const int m = d.inner;
    if (m == 0) return 0;
    std::vector<int> defects;
    for (int j = 0; j < d.outer; ++j)
        if (d.partner[m + j] < m) defects.push_back(j);
    if (static_cast<int>(defects.size()) != m) throw std::invalid_argument("inner boundary not all through");
    int j = d.partner[0] - m;
    int a = static_cast<int>(std::find(defects.begin(), defects.end(), j) - defects.begin());
    return a + m * d.cross[0];
}

AnnularDiagram normalize_rotation(const AnnularDiagram& d)
{
    const int m = d.inner;
    AnnularDiagram r = d;
    int i = 0;
    for (int j = 0; j < d.outer; ++j)
        if (d.partner[m + j] < m) {
            r.partner[i] = m + j;
            r.partner[m + j] = i;
            r.cross[i] = 0;
            r.cross[m + j] = 0;
            ++i;
        }
    if (i != m) throw std::invalid_argument("inner boundary not all through");
    return r;
}

CutOpen cut_open(const AnnularDiagram& d)
{
    Lift L(d);
    struct Crossing {
        int band;
        Rational key;
        int id;
    };
    struct Pass {
        int arc_start;
        std::vector<std::pair<int, bool>> hits;  // crossing id, rightward
    };
    std::vector<Crossing> crossings;
    std::vector<Pass> passes;
    for (int p = 0; p < d.size(); ++p) {
        int q = d.partner[p];
        if (q < p) continue;
        long long a = L.pos(d, p), b = L.pos(d, q) + d.cross[p] * L.D;
        Pass pass{p, {}};
        bool right = b > a;
        long long lo = std::min(a, b), hi = std::max(a, b);
        std::vector<long long> lines;
        for (long long N = floor_div(lo, L.D) + 1; N * L.D < hi; ++N) lines.push_back(N);
        if (!right) std::reverse(lines.begin(), lines.end());
        for (long long N : lines) {
            Crossing c{0, 0, static_cast<int>(crossings.size())};
            if (p >= d.inner) {
                c.band = 0;
                c.key = Rational(static_cast<long>(hi - lo));
            } else if (q < d.inner) {
                c.band = 2;
                c.key = Rational(static_cast<long>(lo - hi));
            } else {
                c.band = 1;
                Rational s = rat(static_cast<long>(N * L.D - a), static_cast<long>(b - a));
                c.key = -s;
            }
            crossings.push_back(c);
            pass.hits.emplace_back(c.id, right);
        }
        passes.push_back(std::move(pass));
    }
    std::vector<int> loop_ids;
    for (int i = 0; i < d.loops; ++i) {
        loop_ids.push_back(static_cast<int>(crossings.size()));
        crossings.push_back(Crossing{1, Rational(i), static_cast<int>(crossings.size())});
    }
    std::vector<int> order(crossings.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return std::tie(crossings[x].band, crossings[x].key) < std::tie(crossings[y].band, crossings[y].key);
    });
    std::vector<int> height(crossings.size());
    for (size_t h = 0; h < order.size(); ++h) height[order[h]] = static_cast<int>(h);

    const int c = static_cast<int>(crossings.size()), m = d.inner, o = d.outer, B = c + m;
    CutOpen out;
    out.sides = c;
    out.diagram = TLDiagram{B, o + c, std::vector<int>(B + o + c, -1)};
    auto tl_point = [&](int p) { return p < m ? c + p : B + (p - m); };
    auto left = [&](int h) { return h; };
    auto right = [&](int h) { return B + o + h; };
    auto pair = [&](int s, int t) {
        out.diagram.pairing[s] = t;
        out.diagram.pairing[t] = s;
    };
    for (auto& pass : passes) {
        int cur = tl_point(pass.arc_start);
        for (auto [id, rightward] : pass.hits) {
            int h = height[id];
            if (rightward) {
                pair(cur, right(h));
                cur = left(h);
            } else {
                pair(cur, left(h));
                cur = right(h);
            }
        }
        pair(cur, tl_point(d.partner[pass.arc_start]));
    }
    for (int id : loop_ids) pair(left(height[id]), right(height[id]));
    return out;
}

AnnularElement close_up(const TLElement& x, int sides, const QParam& P)
{
    const int c = sides, m = x.bottom() - c, o = x.top() - c, B = c + m;
    if (m < 0 || o < 0) throw std::invalid_argument("close_up: too many side strands");
    AnnularElement r(m, o);
    for (auto& [t, coef] : x.terms()) {
        AnnularDiagram d{m, o, std::vector<int>(m + o, -1), std::vector<int>(m + o, 0), 0};
        std::vector<char> seen(c, 0);
        auto kind = [&](int s) {  // 0 left, 1 inner, 2 outer, 3 right
            if (s < c) return 0;
            if (s < B) return 1;
            if (s < B + o) return 2;
            return 3;
        };
        auto ann_point = [&](int s) { return kind(s) == 1 ? s - c : m + (s - B); };
        // from TL point s follow the strand, hopping across the cut at the sides
        auto follow = [&](int s, int& w) {
            int t2 = t.pairing[s];
            while (true) {
                int kd = kind(t2);
                if (kd == 0) {
                    seen[t2] = 1;
                    w -= 1;
                    t2 = t.pairing[B + o + t2];
                } else if (kd == 3) {
                    seen[t2 - B - o] = 1;
                    w += 1;
                    t2 = t.pairing[t2 - B - o];
                } else {
                    return t2;
                }
            }
        };
        for (int s = c; s < B + o; ++s) {
            int p = ann_point(s);
            if (d.partner[p] >= 0) continue;
            int w = 0;
            int e = follow(s, w);
            int q = ann_point(e);
            d.partner[p] = q;
            d.partner[q] = p;
            d.cross[p] = w;
            d.cross[q] = -w;
        }
        int contractible = 0;
        for (int h = 0; h < c; ++h) {
            if (seen[h]) continue;
            // a closed curve made only of side strands, followed from left point h
            int w = 0, cur = h;
            do {
                int t2 = t.pairing[cur];
                if (kind(t2) == 0) {
                    w -= 1;
                    seen[t2] = 1;
                    cur = B + o + t2;
                } else if (kind(t2) == 3) {
                    w += 1;
                    seen[t2 - B - o] = 1;
                    cur = t2 - B - o;
                } else {
                    throw std::logic_error("close_up: malformed side loop");
                }
            } while (cur != h);
            if (w == 0)
                ++contractible;
            else if (w == 1 || w == -1)
                ++d.loops;
            else
                throw std::logic_error("close_up: curve winding more than once");
        }
        Scalar cc = coef;
        if (contractible) cc *= qpow(P.delta, contractible);
        r.add(d, cc);
    }
    return r;
}

// ---- corner ----

Scalar CornerElement::coeff(const CornerLabel& l) const
{
    auto it = terms_.find(l);
    return it == terms_.end() ? Scalar() : it->second;
}

bool valid_label(int k, const CornerLabel& l)
{
    if (l.m < 0 || l.m > k || (k - l.m) % 2) return false;
    return l.m > 0 || l.n >= 0;
}

CornerElement CornerElement::basis(int k, int m, int n, const Scalar& c)
{
    CornerElement e(k);
    e.add({m, n}, c);
    return e;
}

void CornerElement::add(const CornerLabel& l, const Scalar& c)
{
    if (!valid_label(k_, l)) throw std::invalid_argument("invalid corner label");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(l, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CornerElement& CornerElement::operator+=(const CornerElement& o)
{
    if (o.k_ != k_) throw std::invalid_argument("corner weight mismatch");
    for (auto& [l, c] : o.terms_) add(l, c);
    return *this;
}

CornerElement& CornerElement::operator-=(const CornerElement& o)
{
    if (o.k_ != k_) throw std::invalid_argument("corner weight mismatch");
    for (auto& [l, c] : o.terms_) add(l, -c);
    return *this;
}

CornerElement& CornerElement::operator*=(const Scalar& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [l, v] : terms_) v *= c;
    return *this;
}

std::string CornerElement::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [l, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*x^" << k_ << "_{" << l.m << "," << l.n << "}";
    }
    return os.str();
}

AnnularDiagram inclusion_diagram(int k, int m)
{
    if (m < 0 || m > k || (k - m) % 2) throw std::invalid_argument("inclusion: bad weights");
    const int h = (k - m) / 2;
    AnnularDiagram d{m, k, std::vector<int>(m + k), std::vector<int>(m + k, 0), 0};
    for (int i = 0; i < m; ++i) {
        d.partner[i] = m + h + i;
        d.partner[m + h + i] = i;
    }
    for (int s = 0; s < h; ++s) {
        int a = m + h - 1 - s, b = m + h + m + s;
        d.partner[a] = b;
        d.partner[b] = a;
        d.cross[a] = -1;
        d.cross[b] = 1;
    }
    return d;
}

AnnularDiagram corner_diagram(int k, const CornerLabel& l)
{
    if (!valid_label(k, l)) throw std::invalid_argument("invalid corner label");
    AnnularDiagram D = inclusion_diagram(k, l.m), Ds = ann_star_diagram(D);
    if (l.m == 0) {
        auto [r, loops] = ann_compose_diagrams(D, Ds);
        if (loops) throw std::logic_error("unexpected contractible loop");
        r.loops += l.n;
        return r;
    }
    auto [mid, l1] = ann_compose_diagrams(AnnularDiagram::rotation(l.m, l.n), Ds);
    auto [r, l2] = ann_compose_diagrams(D, mid);
    if (l1 || l2) throw std::logic_error("unexpected contractible loop");
    return r;
}

bool has_front_cap(const AnnularDiagram& d)
{
    for (int i = 0; i + 1 < d.inner; ++i)
        if (d.partner[i] == i + 1 && d.cross[i] == 0) return true;
    for (int j = 0; j + 1 < d.outer; ++j) {
        int p = d.inner + j;
        if (d.partner[p] == p + 1 && d.cross[p] == 0) return true;
    }
    return false;
}

std::optional<CornerLabel> capfree_label(const AnnularDiagram& d, int k)
{
    if (d.inner != k || d.outer != k || has_front_cap(d)) return std::nullopt;
    const int m = d.rank();
    if ((k - m) % 2) return std::nullopt;
    CornerLabel l{m, 0};
    if (m == 0) {
        l.n = d.loops;
    } else {
        const int h = (k - m) / 2;
        int j = d.partner[h] - k;
        if (j < h || j >= h + m) return std::nullopt;
        l.n = (j - h) + m * d.cross[h];
    }
    if (corner_diagram(k, l) != d) return std::nullopt;
    return l;
}

std::vector<CornerLabel> corner_basis_labels(int k, int max_rank_defect, int max_winding)
{
    std::vector<CornerLabel> out;
    for (int m = k; m >= 0 && k - m <= 2 * max_rank_defect; m -= 2) {
        if (m > 0)
            for (int n = -max_winding; n <= max_winding; ++n) out.push_back({m, n});
        else
            for (int n = 0; n <= max_winding; ++n) out.push_back({0, n});
    }
    return out;
}

std::vector<CornerElement> corner_basis(int k, int max_rank_defect, int max_winding)
{
    std::vector<CornerElement> out;
    for (auto& l : corner_basis_labels(k, max_rank_defect, max_winding)) out.push_back(CornerElement::basis(k, l.m, l.n));
    return out;
}

AnnularElement corner_expand(const CornerElement& a, const QParam& P)
{
    const int k = a.k();
    auto f = AnnularElement::from_tl(*jones_wenzl(k, P));
    AnnularElement mid(k, k);
    for (auto& [l, c] : a.terms()) mid.add(corner_diagram(k, l), c);
    return ann_compose(f, ann_compose(mid, f, P), P);
}

CornerElement corner_extract(const AnnularElement& z, int k)
{
    CornerElement r(k);
    for (auto& [d, c] : z.terms()) {
        if (has_front_cap(d)) continue;
        auto l = capfree_label(d, k);
        if (!l) throw std::logic_error("cap-free diagram outside the corner basis");
        r.add(*l, c);
    }
    return r;
}

namespace {

CornerElement basis_product(int k, const CornerLabel& a, const CornerLabel& b, const QParam& P)
{
    static std::shared_mutex mu;
    static std::map<std::tuple<std::string, int, CornerLabel, CornerLabel>, CornerElement> memo;
    auto key = std::make_tuple(P.str(), k, a, b);
    {
        std::shared_lock lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    // outermost and innermost f_k only add capped diagrams, so B_a f_k B_b suffices
    AnnularDiagram da = corner_diagram(k, a), db = corner_diagram(k, b);
    CornerElement r(k);
    for (auto& [t, c] : jones_wenzl(k, P)->terms()) {
        auto [d1, l1] = ann_compose_diagrams(AnnularDiagram::from_tl(t), db);
        auto [d2, l2] = ann_compose_diagrams(da, d1);
        if (has_front_cap(d2)) continue;
        auto l = capfree_label(d2, k);
        if (!l) throw std::logic_error("cap-free diagram outside the corner basis");
        Scalar cc = c;
        if (l1 + l2) cc *= qpow(P.delta, l1 + l2);
        r.add(*l, cc);
    }
    std::unique_lock lock(mu);
    memo.emplace(key, r);
    return r;
}

}  // namespace

CornerElement corner_mul(const CornerElement& a, const CornerElement& b, const QParam& P)
{
    if (a.k() != b.k()) throw std::invalid_argument("corner weight mismatch");
    CornerElement r(a.k());
    for (auto& [la, ca] : a.terms())
        for (auto& [lb, cb] : b.terms()) {
            Scalar c = ca * cb;
            CornerElement prod = basis_product(a.k(), la, lb, P);
            for (auto& [l, v] : prod.terms()) r.add(l, c * v);
        }
    return r;
}

CornerElement corner_mul_expanded(const CornerElement& a, const CornerElement& b, const QParam& P)
{
    if (a.k() != b.k()) throw std::invalid_argument("corner weight mismatch");
    return corner_extract(ann_compose(corner_expand(a, P), corner_expand(b, P), P), a.k());
}

CornerElement corner_star(const CornerElement& a)
{
    CornerElement r(a.k());
    for (auto& [l, c] : a.terms()) {
        auto flipped = capfree_label(ann_star_diagram(corner_diagram(a.k(), l)), a.k());
        if (!flipped) throw std::logic_error("flipped basis diagram is not a basis diagram");
        r.add(*flipped, involute(c));
    }
    return r;
}

namespace {

std::map<int, TLElement> grades_of(const AnnularElement& z, const QParam& P, int only)
{
    const int m = z.inner(), o = z.outer();
    std::map<int, TLElement> out;
    for (auto& [d, coef] : z.terms()) {
        CutOpen cut = cut_open(d);
        const int c = cut.sides;
        TLElement X(cut.diagram, coef);
        for (int j = c % 2; j <= c; j += 2) {
            if (only >= 0 && j != only) continue;
            auto hb = hom_basis(c, j, P);
            const size_t r = hb->v.size();
            TLElement comp(j + m, o + j);
            for (size_t a = 0; a < r; ++a) {
                TLElement left = compose(tensor(hb->v[a], TLElement::identity(m)), X, P);
                for (size_t b = 0; b < r; ++b) {
                    if (hb->gram_inv[a][b] == 0) continue;
                    comp += Scalar(hb->gram_inv[a][b]) *
                            compose(left, tensor(TLElement::identity(o), hb->vstar[b]), P);
                }
            }
            if (comp.is_zero()) continue;
            auto [it, fresh] = out.try_emplace(j, comp);
            if (!fresh) it->second += comp;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

std::map<int, TLElement> grade_decompose(const AnnularElement& z, const QParam& P) { return grades_of(z, P, -1); }

std::map<int, TLElement> grade_decompose(const CornerElement& a, const QParam& P)
{
    const int k = a.k();
    AnnularElement mid(k, k);
    for (auto& [l, c] : a.terms()) mid.add(corner_diagram(k, l), c);
    auto f = jones_wenzl(k, P);
    std::map<int, TLElement> out;
    for (auto& [j, z] : grade_decompose(mid, P)) {
        TLElement s = compose(compose(tensor(TLElement::identity(j), *f), z, P), tensor(*f, TLElement::identity(j)), P);
        if (!s.is_zero()) out.emplace(j, std::move(s));
    }
    return out;
}

AnnularElement grade_reassemble(const std::map<int, TLElement>& grades, const QParam& P)
{
    AnnularElement r;
    bool first = true;
    for (auto& [j, z] : grades) {
        AnnularElement piece = close_up(z, j, P);
        if (first) {
            r = piece;
            first = false;
        } else {
            r += piece;
        }
    }
    return r;
}

Scalar Omega(const CornerElement& a, const QParam& P)
{
    static std::shared_mutex mu;
    static std::map<std::tuple<std::string, int, CornerLabel>, Scalar> memo;
    const int k = a.k();
    auto f = jones_wenzl(k, P);
    Scalar total;
    for (auto& [l, c] : a.terms()) {
        auto key = std::make_tuple(P.str(), k, l);
        std::optional<Scalar> val;
        {
            std::shared_lock lock(mu);
            auto it = memo.find(key);
            if (it != memo.end()) val = it->second;
        }
        if (!val) {
            auto g = grades_of(AnnularElement(corner_diagram(k, l)), P, 0);
            auto it = g.find(0);
            val = it == g.end() ? Scalar() : markov_trace(compose(*f, it->second, P), P);
            std::unique_lock lock(mu);
            memo.emplace(key, *val);
        }
        total += c * *val;
    }
    return total;
}

Scalar omega(const CornerElement& a, const QParam& P) { return Omega(a, P) * (1 / qnum(a.k() + 1, P)); }

nlohmann::json to_json(const CornerElement& a)
{
    nlohmann::json terms = nlohmann::json::object();
    for (auto& [l, c] : a.terms()) terms[std::to_string(l.m) + "," + std::to_string(l.n)] = to_json(c);
    return {{"k", a.k()}, {"terms", terms}};
}

CornerElement corner_from_json(const nlohmann::json& j)
{
    CornerElement a(j.at("k").get<int>());
    for (auto& [key, v] : j.at("terms").items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("corner label must be \"m,n\"");
        a.add({std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))}, scalar_from_json(v));
    }
    return a;
}

}  // namespace tubealg
