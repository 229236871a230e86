#include "tubealg/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace tubealg {

namespace {

const double kPi = std::acos(-1.0);

double clean(double x) { return std::abs(x) < 1e-13 ? 0.0 : x; }

nlohmann::json point_json(const CharacterPoint& p)
{
    return {{"weight", p.m}, {"re", clean(p.param.real())}, {"im", clean(p.param.imag())}};
}

void add_unique(std::vector<cplx>& pts, cplx z)
{
    for (auto& p : pts)
        if (std::abs(p - z) < 1e-9) return;
    pts.push_back(z);
}

std::vector<cplx> char_vector(int k, const CharacterPoint& p, const std::vector<CornerLabel>& labels, const QParam& P)
{
    std::vector<cplx> v;
    v.reserve(labels.size());
    for (auto& l : labels) v.push_back(eval_complex(char_poly(k, p.m, l, P), p.param));
    return v;
}

}  // namespace

bool admissible(int k, const CharacterPoint& p, const QParam& P)
{
    if (p.m < 0 || p.m > k || (k - p.m) % 2) return false;
    if (p.m == 0) return std::abs(p.param.imag()) < 1e-12 && std::abs(p.param.real()) <= P.delta.get_d() + 1e-12;
    return std::abs(std::abs(p.param) - 1) < 1e-9;
}

bool same_point(const CharacterPoint& a, const CharacterPoint& b, double tol)
{
    return a.m == b.m && std::abs(a.param - b.param) < tol;
}

std::string point_str(const CharacterPoint& p)
{
    std::ostringstream os;
    os << std::setprecision(10);
    if (p.m == 0)
        os << "(weight 0, t=" << clean(p.param.real()) << ")";
    else
        os << "(weight " << p.m << ", omega=" << clean(p.param.real()) << (p.param.imag() < 0 ? "-" : "+")
           << std::abs(clean(p.param.imag())) << "i)";
    return os.str();
}

Scalar char_poly(int k, int m, const CornerLabel& l, const QParam& P)
{
    static std::shared_mutex mu;
    static std::map<std::tuple<std::string, int, int, CornerLabel>, Scalar> memo;
    auto key = std::make_tuple(P.str(), k, m, l);
    {
        std::shared_lock lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    // characters of weight m kill every basis element of smaller rank
    Scalar v = l.m < m ? Scalar(Rational(0), kind_for(m)) : char_oracle(k, m, CornerElement::basis(k, l.m, l.n), P);
    std::unique_lock lock(mu);
    memo.emplace(key, v);
    return v;
}

cplx char_numeric(int k, const CharacterPoint& p, const CornerElement& x, const QParam& P)
{
    if (!admissible(k, p, P)) throw std::invalid_argument("character point " + point_str(p) + " is not admissible");
    if (x.k() != k) throw std::invalid_argument("character: corner weight mismatch");
    cplx r = 0;
    for (auto& [l, c] : x.terms()) r += eval_complex(c, p.param) * eval_complex(char_poly(k, p.m, l, P), p.param);
    return r;
}

std::vector<CornerLabel> spectrum_labels(int k, int max_winding) { return corner_basis_labels(k, k, max_winding); }

std::vector<Separation> separation_check(int k, const std::vector<std::pair<CharacterPoint, CharacterPoint>>& pairs,
                                         const std::vector<CornerLabel>& labels, const QParam& P, double tol)
{
    std::vector<Separation> out;
    for (auto& [a, b] : pairs) {
        Separation s{a, b, same_point(a, b), std::nullopt, 0};
        if (!s.identical) {
            // the expected witnesses first: x^k_{m,0} for the lower weight, then x^k_{m,1}
            std::vector<CornerLabel> order;
            int lo = std::min(a.m, b.m);
            order.push_back({lo, 0});
            order.push_back({lo, 1});
            for (auto& l : labels)
                if (std::find(order.begin(), order.end(), l) == order.end()) order.push_back(l);
            for (auto& l : order) {
                if (!valid_label(k, l)) continue;
                double gap = std::abs(eval_complex(char_poly(k, a.m, l, P), a.param) -
                                      eval_complex(char_poly(k, b.m, l, P), b.param));
                if (gap > tol) {
                    s.witness = l;
                    s.gap = gap;
                    break;
                }
            }
        }
        out.push_back(s);
    }
    return out;
}

std::vector<double> gluing_limit_check(int k, const std::vector<CharacterPoint>& approach, const CharacterPoint& target,
                                       const std::vector<CornerLabel>& labels, const QParam& P)
{
    auto tv = char_vector(k, target, labels, P);
    std::vector<double> dev;
    for (auto& p : approach) {
        auto v = char_vector(k, p, labels, P);
        double d = 0;
        for (size_t i = 0; i < v.size(); ++i) d = std::max(d, std::abs(v[i] - tv[i]));
        dev.push_back(d);
    }
    return dev;
}

std::vector<CharacterPoint> approach_sequence(const CharacterPoint& p, const QParam& P, int steps)
{
    std::vector<CharacterPoint> out;
    for (int n = 1; n <= steps; ++n) {
        double eps = std::ldexp(1.0, -n);
        if (p.m == 0) {
            double t0 = p.param.real();
            double t = t0 != 0 ? t0 * (1 - eps) : eps * P.delta.get_d();
            out.push_back({0, cplx(t, 0)});
        } else {
            double theta = std::arg(p.param) + eps * kPi / 4;
            out.push_back({p.m, std::polar(1.0, theta)});
        }
    }
    return out;
}

std::vector<cplx> removed_points(int k, int m, const QParam& P)
{
    std::vector<cplx> pts;
    const double delta = P.delta.get_d();
    for (int s = m + 2; s <= k; s += 2) {
        if (m == 0) {
            // [s]^2 - t^2 [s/2]^2
            double t = Rational(qnum(s, P) / qnum(s / 2, P)).get_d();
            for (double r : {-t, t})
                if (std::abs(r) <= delta + 1e-12) add_unique(pts, cplx(r, 0));
        } else {
            // q^s + q^{-s} = (-1)^s (w^2 + w^{-2})
            double c = (s % 2 ? -1.0 : 1.0) * Rational(qpow(P.q, s) + qpow(P.q, -s)).get_d();
            cplx disc = std::sqrt(cplx(c * c - 4, 0));
            for (cplx z : {(c + disc) / 2.0, (c - disc) / 2.0}) {
                cplx w = std::sqrt(z);
                for (cplx r : {w, -w})
                    if (std::abs(std::abs(r) - 1) < 1e-9) add_unique(pts, r / std::abs(r));
            }
        }
    }
    for (auto& z : pts) z = cplx(clean(z.real()), clean(z.imag()));
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        return std::make_pair(a.real(), a.imag()) < std::make_pair(b.real(), b.imag());
    });
    return pts;
}

std::optional<CharacterPoint> identify_character(int k, const CharacterPoint& p, const QParam& P, double tol)
{
    for (int r = k % 2; r <= k; r += 2) {
        cplx v0 = eval_complex(char_poly(k, p.m, {r, 0}, P), p.param);
        cplx v1 = eval_complex(char_poly(k, p.m, {r, 1}, P), p.param);
        if (std::abs(v0) <= tol && std::abs(v1) <= tol) continue;
        if (std::abs(v0) <= tol) return std::nullopt;
        cplx z = v1 / v0;
        return CharacterPoint{r, cplx(clean(z.real()), clean(z.imag()))};
    }
    return std::nullopt;
}

std::vector<CharacterPoint> sample_points(const SpectrumReport& r, int resolution)
{
    std::vector<CharacterPoint> out;
    for (auto& c : r.components)
        for (int i = 0; i < resolution; ++i) {
            CharacterPoint p{c.weight, 0};
            if (c.circle)
                p.param = std::polar(1.0, 2 * kPi * (i + 0.37) / resolution);
            else
                p.param = cplx(-r.delta + 2 * r.delta * (i + 0.5) / resolution, 0);
            bool near = false;
            for (auto& z : c.removed) near = near || std::abs(z - p.param) < 1e-6;
            if (!near) out.push_back(p);
        }
    return out;
}

SpectrumReport spectrum_report(int k, const QParam& P, int resolution)
{
    if (k < 0) throw std::invalid_argument("k must be non-negative");
    SpectrumReport rep;
    rep.k = k;
    rep.q = P.str();
    rep.delta = P.delta.get_d();
    for (int m = k % 2; m <= k; m += 2) rep.components.push_back({m, m > 0, removed_points(k, m, P)});
    auto labels = spectrum_labels(k);
    for (auto& c : rep.components)
        for (auto& z : c.removed) {
            CharacterPoint src{c.weight, z};
            auto target = identify_character(k, src, P);
            bool retained = target && admissible(k, *target, P) && target->m != src.m;
            if (retained)
                for (auto& other : rep.components)
                    if (other.weight == target->m)
                        for (auto& w : other.removed) retained = retained && std::abs(w - target->param) > 1e-9;
            if (!retained) {
                rep.unresolved.push_back(src);
                continue;
            }
            Gluing g{src, *target, gluing_limit_check(k, approach_sequence(src, P), *target, labels, P), false};
            g.confirmed = !g.deviations.empty() && g.deviations.back() < 1e-6;
            if (!g.confirmed) rep.unresolved.push_back(src);
            rep.gluings.push_back(std::move(g));
        }
    auto pts = sample_points(rep, resolution);
    std::vector<std::pair<CharacterPoint, CharacterPoint>> pairs;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) pairs.emplace_back(pts[i], pts[j]);
    rep.separation_pairs = static_cast<int>(pairs.size());
    for (auto& s : separation_check(k, pairs, labels, P))
        if (s.counterexample()) rep.separation_failures.push_back(s);
    return rep;
}

nlohmann::json to_json(const SpectrumReport& r)
{
    nlohmann::json comps = nlohmann::json::array();
    for (auto& c : r.components) {
        nlohmann::json removed = nlohmann::json::array();
        for (auto& z : c.removed) removed.push_back({{"re", clean(z.real())}, {"im", clean(z.imag())}});
        comps.push_back({{"weight", c.weight}, {"space", c.circle ? "circle" : "interval"}, {"removed", removed}});
    }
    nlohmann::json glue = nlohmann::json::array();
    for (auto& g : r.gluings) {
        int first_below = -1;
        for (size_t i = 0; i < g.deviations.size(); ++i)
            if (g.deviations[i] < 1e-6) {
                first_below = static_cast<int>(i) + 1;
                break;
            }
        glue.push_back({{"source", point_json(g.source)},
                        {"target", point_json(g.target)},
                        {"final_deviation", g.deviations.empty() ? 0.0 : g.deviations.back()},
                        {"first_step_below_1e-6", first_below},
                        {"confirmed", g.confirmed}});
    }
    nlohmann::json unresolved = nlohmann::json::array();
    for (auto& p : r.unresolved) unresolved.push_back(point_json(p));
    nlohmann::json failures = nlohmann::json::array();
    for (auto& s : r.separation_failures) failures.push_back({{"a", point_json(s.a)}, {"b", point_json(s.b)}});
    return {{"k", r.k},
            {"q", r.q},
            {"delta", r.delta},
            {"components", comps},
            {"gluings", glue},
            {"unresolved", unresolved},
            {"separation", {{"pairs", r.separation_pairs}, {"failures", failures}}}};
}

std::string spectrum_csv(const SpectrumReport& r, int resolution, const QParam& P)
{
    std::ostringstream os;
    os << std::setprecision(12) << "weight,parameter,basis_label,re,im\n";
    auto labels = spectrum_labels(r.k);
    for (auto& p : sample_points(r, resolution)) {
        std::ostringstream param;
        param << std::setprecision(12);
        if (p.m == 0)
            param << clean(p.param.real());
        else
            param << clean(p.param.real()) << (p.param.imag() < 0 ? "" : "+") << clean(p.param.imag()) << "i";
        auto v = char_vector(r.k, p, labels, P);
        for (size_t i = 0; i < labels.size(); ++i)
            os << p.m << "," << param.str() << ",\"x^" << r.k << "_{" << labels[i].m << "," << labels[i].n << "}\","
               << clean(v[i].real()) << "," << clean(v[i].imag()) << "\n";
    }
    return os.str();
}

}  // namespace tubealg
