#include "tubealg/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

namespace tubealg {

std::string provenance_str(Provenance p)
{
    switch (p) {
    case Provenance::trivial: return "trivial";
    case Provenance::character: return "character";
    case Provenance::box_product: return "box-product";
    case Provenance::explicit_values: return "explicit";
    }
    return "?";
}

Weight0State Weight0State::trivial(const QParam& P) { return Weight0State(P); }

Weight0State Weight0State::from_t(const Rational& t, const QParam& P)
{
    Weight0State s(P);
    s.prov_ = Provenance::character;
    s.t_ = t;
    return s;
}

Weight0State Weight0State::explicit_values(std::vector<Rational> values, const QParam& P)
{
    if (values.empty() || values[0] != 1) throw std::invalid_argument("state: phi(f_0) must be 1");
    Weight0State s(P);
    s.prov_ = Provenance::explicit_values;
    s.explicit_ = std::move(values);
    return s;
}

Weight0State Weight0State::box(const Weight0State& a, const Weight0State& b)
{
    if (a.P_.q != b.P_.q) throw std::invalid_argument("box product: states at different q");
    Weight0State s(a.P_);
    s.prov_ = Provenance::box_product;
    s.a_ = std::make_shared<Weight0State>(a);
    s.b_ = std::make_shared<Weight0State>(b);
    return s;
}

Rational Weight0State::value(int j) const
{
    if (j < 0) return 0;
    switch (prov_) {
    case Provenance::trivial: return qnum(j + 1, P_);
    case Provenance::character: {
        Rational prev = 1, cur = t_;
        if (j == 0) return prev;
        for (int i = 1; i < j; ++i) {
            Rational next = t_ * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    case Provenance::explicit_values: return j < (int)explicit_.size() ? explicit_[j] : Rational(0);
    case Provenance::box_product: return Rational(a_->value(j) * b_->value(j) / qnum(j + 1, P_));
    }
    return 0;
}

Rational Weight0State::normalized(int j) const { return Rational(value(j) / qnum(j + 1, P_)); }

std::vector<Rational> Weight0State::values(int horizon) const
{
    std::vector<Rational> v;
    for (int j = 0; j <= horizon; ++j) v.push_back(value(j));
    return v;
}

std::optional<Rational> Weight0State::parameter() const
{
    if (prov_ == Provenance::character) return t_;
    if (prov_ == Provenance::trivial) return P_.delta;
    return std::nullopt;
}

bool Weight0State::admissible_flag() const
{
    if (prov_ == Provenance::trivial) return true;
    if (prov_ != Provenance::character) return false;
    return abs(t_) <= P_.delta;
}

std::string Weight0State::str() const
{
    switch (prov_) {
    case Provenance::character: return "character(t=" + rational_str(t_) + ")";
    case Provenance::box_product: return "(" + a_->str() + " box " + b_->str() + ")";
    default: return provenance_str(prov_);
    }
}

Weight0State trivial_state(const QParam& P) { return Weight0State::trivial(P); }
Weight0State state_from_t(const Rational& t, const QParam& P) { return Weight0State::from_t(t, P); }
Weight0State box_product(const Weight0State& a, const Weight0State& b) { return Weight0State::box(a, b); }

RMatrix moment_matrix(const Weight0State& phi, int depth)
{
    std::vector<Rational> v = phi.values(2 * depth);
    RMatrix m(depth + 1, std::vector<Rational>(depth + 1));
    for (int i = 0; i <= depth; ++i)
        for (int j = 0; j <= depth; ++j)
            for (int k = std::abs(i - j); k <= i + j; k += 2) m[i][j] += v[k];
    return m;
}

bool is_annular_state(const Weight0State& phi, int depth, double tol)
{
    if (phi.provenance() == Provenance::trivial || phi.provenance() == Provenance::character)
        return phi.admissible_flag();
    RMatrix m = moment_matrix(phi, depth);
    Eigen::MatrixXd md(m.size(), m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) md(i, j) = m[i][j].get_d();
    if (min_symmetric_eigenvalue(md) < -tol) return false;
    for (int a = 1; a <= std::min(depth, 3); ++a)
        if (cp_positivity_check(phi, a) < -tol) return false;
    return true;
}

CornerFunctional character_functional(int k, const CharacterPoint& p, const QParam& P)
{
    return {k, [k, p, P](const CornerElement& x) { return char_numeric(k, p, x, P); }};
}

std::map<int, CornerElement> grade_parts(const CornerElement& x, const QParam& P)
{
    std::map<int, CornerElement> out;
    for (auto& [j, z] : grade_decompose(x, P)) {
        if (z.is_zero()) continue;
        CornerElement c = corner_extract(close_up(z, j, P), x.k());
        if (!c.is_zero()) out.emplace(j, c);
    }
    return out;
}

CornerFunctional box_corner(const CornerFunctional& phi, const Weight0State& psi)
{
    QParam P = psi.q();
    return {phi.k, [phi, psi, P](const CornerElement& x) {
                cplx r = 0;
                for (auto& [j, part] : grade_parts(x, P)) r += psi.normalized(j).get_d() * phi(part);
                return r;
            }};
}

std::vector<Rational> decay_profile(const Weight0State& phi, int horizon)
{
    std::vector<Rational> p;
    for (int j = 0; j <= horizon; ++j) p.push_back(abs(phi.normalized(j)));
    return p;
}

std::vector<CharacterPoint> character_sample(int k, const QParam& P, int resolution)
{
    std::vector<CharacterPoint> out;
    const double d = P.delta.get_d();
    for (int m = k % 2; m <= k; m += 2)
        for (int i = 0; i < resolution; ++i) {
            CharacterPoint p;
            p.m = m;
            if (m == 0)
                p.param = -d + 2 * d * (i + 0.5) / resolution;
            else
                p.param = std::polar(1.0, 2 * M_PI * (i + 0.37) / resolution);
            if (admissible(k, p, P)) out.push_back(p);
        }
    return out;
}

double corner_profile(const CornerFunctional& phi, int m, const std::vector<CornerElement>& basis,
                      const std::vector<CharacterPoint>& sample, const QParam& P)
{
    double best = 0;
    for (auto& b : basis) {
        auto parts = grade_parts(b, P);
        auto it = parts.find(m);
        if (it == parts.end()) continue;
        double norm = 0;
        for (auto& s : sample) norm = std::max(norm, std::abs(char_numeric(phi.k, s, it->second, P)));
        if (norm < 1e-12) continue;
        best = std::max(best, std::abs(phi(it->second)) / norm);
    }
    return best;
}

namespace {

// x on alpha+beta strands viewed sideways: bottom = top-left group right to left then bottom-left group,
// top = top-right group then bottom-right group right to left
struct Sideways {
    std::vector<int> from_x, to_x;
    int alpha, beta;
    Sideways(int a, int b) : alpha(a), beta(b)
    {
        const int n = a + b;
        to_x.resize(2 * n);
        for (int i = 0; i < 2 * a; ++i) to_x[i] = i < a ? n + a - 1 - i : i - a;
        for (int j = 0; j < 2 * b; ++j) to_x[2 * a + j] = j < b ? n + a + j : n - 1 - (j - b);
        from_x.resize(2 * n);
        for (int i = 0; i < 2 * n; ++i) from_x[to_x[i]] = i;
    }
    TLDiagram turn(const TLDiagram& d) const
    {
        TLDiagram y{2 * alpha, 2 * beta, std::vector<int>(d.size())};
        for (int p = 0; p < d.size(); ++p) y.pairing[from_x[p]] = from_x[d.pairing[p]];
        return y;
    }
    TLDiagram unturn(const TLDiagram& y) const
    {
        TLDiagram d{alpha + beta, alpha + beta, std::vector<int>(y.size())};
        for (int p = 0; p < y.size(); ++p) d.pairing[to_x[p]] = to_x[y.pairing[p]];
        return d;
    }
};

}  // namespace

TLElement cp_channel(int alpha, int beta, const TLElement& x, int k, const QParam& P)
{
    const int n = alpha + beta;
    if (x.bottom() != n || x.top() != n) throw std::invalid_argument("cp_apply: x must be square on alpha+beta strands");
    TLElement out(n, n);
    if (k < 0 || k > 2 * std::min(alpha, beta) || k % 2) return out;
    if (alpha == 0) return k == 0 ? x : out;
    Sideways s(alpha, beta);
    TLElement y(2 * alpha, 2 * beta);
    for (auto& [d, c] : x.terms()) y.add(s.turn(d), c);
    TLElement proj = compose(isotypic_projector(2 * alpha, k, P), y, P);
    for (auto& [d, c] : proj.terms()) out.add(s.unturn(d), c);
    return out;
}

TLElement cp_apply(const Weight0State& phi, int alpha, int beta, const TLElement& x)
{
    const int n = alpha + beta;
    TLElement out(n, n);
    for (int k = 0; k <= 2 * std::min(alpha, beta); k += 2) {
        Rational w = phi.normalized(k);
        if (w == 0) continue;
        TLElement part = cp_channel(alpha, beta, x, k, phi.q());
        part *= Scalar(w);
        out += part;
    }
    return out;
}

TLElement rbar_rbar_star(int alpha)
{
    const int n = 2 * alpha;
    TLDiagram d{n, n, std::vector<int>(2 * n)};
    for (int i = 0; i < n; ++i) {
        d.pairing[i] = n - 1 - i;
        d.pairing[n + i] = n + n - 1 - i;
    }
    return TLElement(d);
}

double cp_positivity_check(const Weight0State& phi, int alpha)
{
    const QParam& P = phi.q();
    const int n = 2 * alpha;
    TLElement z = cp_apply(phi, alpha, alpha, rbar_rbar_star(alpha));
    std::vector<TLDiagram> basis = enumerate_diagrams(n, n);
    const int r = (int)basis.size();
    std::map<TLDiagram, int> index;
    for (int i = 0; i < r; ++i) index[basis[i]] = i;
    const double delta = P.delta.get_d();
    // G = Markov Gram form, L = left multiplication by z; the form of z is G L
    Eigen::MatrixXd G(r, r), L = Eigen::MatrixXd::Zero(r, r);
    for (int i = 0; i < r; ++i) {
        TLDiagram si = star_diagram(basis[i]);
        for (int j = 0; j < r; ++j) {
            auto [d, loops] = compose_diagrams(basis[j], si);
            G(i, j) = std::pow(delta, loops + markov_loops(d));
        }
    }
    for (int j = 0; j < r; ++j) {
        TLElement w = compose(TLElement(basis[j]), z, P);
        for (auto& [d, c] : w.terms()) L(index.at(d), j) += c.constant().get_d();
    }
    Eigen::MatrixXd M = G * L;
    M = 0.5 * (M + M.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(M, G, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

std::string decay_str(DecayClass c)
{
    switch (c) {
    case DecayClass::c_c: return "c_c-like";
    case DecayClass::c_0: return "c_0-like";
    case DecayClass::bounded: return "bounded";
    }
    return "?";
}

DecayClass decay_classify(const Weight0State& phi, int horizon, double eps)
{
    std::vector<Rational> p = decay_profile(phi, horizon);
    int zeros = 0;
    for (int j = horizon; j >= 0 && p[j] == 0; --j) ++zeros;
    if (zeros > 0 && zeros <= horizon && zeros >= std::min(2, horizon)) return DecayClass::c_c;
    if (horizon == 0) return DecayClass::bounded;
    const int mid = (horizon + 1) / 2;
    double head = 0, tail = 0;
    for (int j = 0; j < mid; ++j) head = std::max(head, p[j].get_d());
    for (int j = mid; j <= horizon; ++j) tail = std::max(tail, p[j].get_d());
    if (p[horizon].get_d() < eps || tail < head - eps) return DecayClass::c_0;
    return DecayClass::bounded;
}

bool WitnessReport::passed() const
{
    if (!monotone) return false;
    return std::all_of(sequence.begin(), sequence.end(), [](const WitnessStep& s) { return s.passed(); });
}

WitnessReport haagerup_witness(const QParam& P, int steps, int horizon, int jobs)
{
    WitnessReport r;
    r.q = P.str();
    r.steps = steps;
    r.horizon = horizon;
    r.sequence.resize(std::max(steps, 0));
    auto run = [&](int n) {
        WitnessStep& s = r.sequence[n - 1];
        s.n = n;
        Rational two_n = 1;
        for (int i = 0; i < n; ++i) two_n *= 2;
        s.t = P.delta * (1 - 1 / two_n);
        Weight0State phi = state_from_t(s.t, P);
        s.annular = is_annular_state(phi);
        s.decay = decay_classify(phi, horizon);
        for (int j = 0; j <= horizon; ++j) s.deviation = std::max(s.deviation, std::abs(phi.normalized(j).get_d() - 1));
    };
    jobs = std::max(1, std::min(jobs, steps));
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            for (int n = 1 + w; n <= steps; n += jobs) run(n);
        });
    for (auto& t : pool) t.join();
    for (size_t i = 1; i < r.sequence.size(); ++i)
        if (!(r.sequence[i].deviation < r.sequence[i - 1].deviation)) r.monotone = false;
    return r;
}

nlohmann::json to_json(const WitnessReport& r)
{
    nlohmann::json seq = nlohmann::json::array();
    for (auto& s : r.sequence)
        seq.push_back({{"n", s.n},
                       {"t", rational_str(s.t)},
                       {"annular_state", s.annular},
                       {"decay", decay_str(s.decay)},
                       {"max_deviation", s.deviation},
                       {"passed", s.passed()}});
    return {{"q", r.q},       {"steps", r.steps},         {"horizon", r.horizon},
            {"sequence", seq}, {"monotone", r.monotone}, {"passed", r.passed()}};
}

double grade_bound_margin(int k, const CharacterPoint& chi, const CornerElement& x, const CornerElement& y, int t,
                        const QParam& P)
{
    CornerElement xs = corner_star(x), ys = corner_star(y);
    CornerElement lhs = corner_mul(corner_mul(corner_mul(xs, ys, P), y, P), x, P);
    Scalar w = omega(corner_mul(y, ys, P), P);
    if (!w.is_constant()) throw std::logic_error("omega: non-constant value");
    double d = qnum(t + 1, P).get_d();
    double rhs = d * d * w.constant().get_d() * char_numeric(k, chi, corner_mul(xs, x, P), P).real();
    return rhs - char_numeric(k, chi, lhs, P).real();
}

}  // namespace tubealg
