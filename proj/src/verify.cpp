#include "tubealg/verify.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>

namespace tubealg {

namespace {

constexpr size_t kept_failures = 20;

using cd = std::complex<double>;

nlohmann::json point_json(const CharacterPoint& p)
{
    return {{"weight", p.m}, {"re", p.param.real()}, {"im", p.param.imag()}};
}

// exact value of a Laurent polynomial at u = i, as (re, im)
std::pair<Rational, Rational> eval_at_i(const Scalar& s)
{
    Rational re = 0, im = 0;
    for (auto& [e, c] : s.terms()) switch (((e % 4) + 4) % 4) {
        case 0: re += c; break;
        case 1: im += c; break;
        case 2: re -= c; break;
        case 3: im -= c; break;
        }
    return {re, im};
}

long long catalan_oracle(int n)
{
    // C(2n, n) / (n + 1) through exact rationals
    Rational c = 1;
    for (int i = 1; i <= n; ++i) c = c * (n + i) / i;
    c /= n + 1;
    return c.get_num().get_si();
}

bool near(cd a, cd b, double tol = 1e-9) { return std::abs(a - b) < tol; }

}  // namespace

void Check::expect(bool ok, const nlohmann::json& where)
{
    ++cases;
    if (ok) return;
    ++failed;
    if (failures.size() < kept_failures) failures.push_back(where);
}

nlohmann::json to_json(const Check& c)
{
    return {{"name", c.name},     {"inputs", c.inputs},     {"cases", c.cases},      {"failed", c.failed},
            {"failures", c.failures}, {"measured", c.measured}, {"passed", c.passed()}};
}

Check check_catalan(int max_points)
{
    Check c{"catalan dimensions"};
    c.inputs = {{"max_points", max_points}};
    for (int total = 0; total <= max_points; total += 2)
        for (int b = 0; b <= total; ++b) {
            long long got = (long long)enumerate_diagrams(b, total - b).size();
            c.expect(got == catalan_oracle(total / 2), {{"bottom", b}, {"top", total - b}, {"count", got}});
        }
    return c;
}

Check check_jones_wenzl(const QParam& P, int kmax)
{
    Check c{"jones-wenzl projectors"};
    c.inputs = {{"q", P.str()}, {"kmax", kmax}};
    for (int k = 0; k <= kmax; ++k) {
        auto f = *jones_wenzl(k, P);
        nlohmann::json at = {{"k", k}};
        c.expect(f.coeff(TLDiagram::identity(k)) == Scalar(1), at);
        c.expect(compose(f, f, P) == f, at);
        for (int i = 1; i < k; ++i) {
            c.expect(compose(f, TLElement(cap_at(k, i)), P).is_zero(), {{"k", k}, {"cap", i}});
            c.expect(compose(TLElement(cup_at(k, i)), f, P).is_zero(), {{"k", k}, {"cup", i}});
        }
        for (int p = 1; p < k; ++p) {
            Rational expect = qnum(p, P) / qnum(k, P) * ((k - p) % 2 ? -1 : 1);
            c.expect(f.coeff(single_cap_diagram(k, p)) == Scalar(expect), {{"k", k}, {"cap_position", p}});
        }
        c.expect(markov_trace(f, P) == Scalar(qnum(k + 1, P)), at);
    }
    return c;
}

Check check_quantum_identity(int kmax)
{
    Check c{"quantum integer identity"};
    c.inputs = {{"kmax", kmax}};
    for (int k = 0; k <= kmax; ++k)
        for (int m = k % 2; m <= k; m += 2) {
            int a = (k - m) / 2, b = (k + m) / 2;
            for (int i = 0; i < k + 2; ++i) {
                QParam P(rat(i + 2, 3));
                Rational lhs = qnum(k, P) * qnum(k, P) - qnum(a, P) * qnum(a, P) - qnum(b, P) * qnum(b, P);
                Rational rhs = (qpow(P.q, k) + qpow(P.q, -k)) * qnum(a, P) * qnum(b, P);
                c.expect(lhs == rhs, {{"k", k}, {"m", m}, {"q", P.str()}});
            }
        }
    return c;
}

Check check_b_recursion(const QParam& P, int kmax)
{
    Check c{"B recursion against the inner product"};
    c.inputs = {{"q", P.str()}, {"kmax", kmax}};
    for (int k = 0; k <= kmax; ++k)
        for (int m = k % 2; m <= k; m += 2) {
            Scalar rec = b_recursive(k, m, m, P), orc = b_oracle(k, m, m, P);
            c.expect(rec == orc, {{"k", k}, {"m", m}, {"recursive", rec.str()}, {"oracle", orc.str()}});
        }
    return c;
}

Check check_commutativity(const QParam& P, int kmax, int max_winding)
{
    Check c{"corner commutativity"};
    c.inputs = {{"q", P.str()}, {"kmax", kmax}, {"max_winding", max_winding}};
    for (int k = 0; k <= kmax; ++k) {
        auto labels = corner_basis_labels(k, k, max_winding);
        for (size_t i = 0; i < labels.size(); ++i)
            for (size_t j = i; j < labels.size(); ++j) {
                auto a = CornerElement::basis(k, labels[i].m, labels[i].n);
                auto b = CornerElement::basis(k, labels[j].m, labels[j].n);
                c.expect(corner_mul(a, b, P) == corner_mul(b, a, P), {{"k", k}, {"a", a.str()}, {"b", b.str()}});
            }
    }
    return c;
}

Check check_characters(const QParam& P, int kmax, int samples)
{
    Check c{"character closed forms and multiplicativity"};
    c.inputs = {{"q", P.str()}, {"kmax", kmax}, {"samples", samples}};
    for (int k = 0; k <= kmax; ++k)
        for (int m = k % 2; m <= k; m += 2) {
            if (m == 0 && k % 2 == 0)
                for (int j = 0; j <= 3; ++j)
                    c.expect(char_oracle(k, 0, CornerElement::basis(k, 0, j), P) == char_closed(k, 0, CharFamily::loops, j, P),
                             {{"k", k}, {"family", "loops"}, {"index", j}});
            for (int n = m > 0 ? m : 2; n <= k; n += 2) {
                if (m == 0)
                    c.expect(char_oracle(k, 0, CornerElement::basis(k, n, 0), P) ==
                                 char_closed(k, 0, CharFamily::rank_power0, n, P),
                             {{"k", k}, {"family", "rank_power0"}, {"index", n}});
                c.expect(char_oracle(k, m, CornerElement::basis(k, n, 1), P) == char_closed(k, m, CharFamily::rank_power1, n, P),
                         {{"k", k}, {"m", m}, {"family", "rank_power1"}, {"index", n}});
            }
        }
    std::mt19937 rng(2024);
    const int kmul = std::min(kmax, 4);
    for (int s = 0; s < samples; ++s) {
        int k = (int)(rng() % (kmul + 1));
        int m = k % 2 + 2 * (int)(rng() % (k / 2 + 1));
        auto labels = corner_basis_labels(k, k, 2);
        auto& la = labels[rng() % labels.size()];
        auto& lb = labels[rng() % labels.size()];
        auto x = CornerElement::basis(k, la.m, la.n), y = CornerElement::basis(k, lb.m, lb.n);
        c.expect(char_oracle(k, m, corner_mul(x, y, P), P) == char_oracle(k, m, x, P) * char_oracle(k, m, y, P),
                 {{"k", k}, {"m", m}, {"x", x.str()}, {"y", y.str()}});
    }
    return c;
}

Check check_degeneracy(const QParam& P, int kmax)
{
    Check c{"degeneracy loci"};
    c.inputs = {{"q", P.str()}, {"kmax", kmax}};
    if (P.is_one()) {
        for (int k = 2; k <= kmax; k += 2) {
            Scalar b = b_recursive(k, 0, 0, P);
            for (long t : {-2L, 2L}) c.expect(eval_rational(b, Rational(t)) == 0, {{"k", k}, {"m", 0}, {"t", t}});
        }
        for (int m = 1; m <= kmax; ++m)
            for (int k = m + 2; k <= kmax; k += 2) {
                Scalar b = b_recursive(k, m, m, P);
                if (m % 2 == 0) {
                    for (long w : {-1L, 1L}) c.expect(eval_rational(b, Rational(w)) == 0, {{"k", k}, {"m", m}, {"omega", w}});
                } else {
                    auto [re, im] = eval_at_i(b);
                    c.expect(re == 0 && im == 0, {{"k", k}, {"m", m}, {"omega", "i"}});
                    // the conjugate point -i
                    auto [re2, im2] = eval_at_i(involute(b));
                    c.expect(re2 == 0 && im2 == 0, {{"k", k}, {"m", m}, {"omega", "-i"}});
                }
            }
        return c;
    }
    const double d = P.delta.get_d();
    for (int k = 1; k <= kmax; ++k)
        for (int m = k % 2; m < k; m += 2) {
            Scalar b = b_recursive(k, m, m, P);
            for (int i = 0; i < 64; ++i) {
                cd z = m == 0 ? cd(-d + 2 * d * (i + 0.5) / 64, 0) : std::polar(1.0, 2 * M_PI * (i + 0.5) / 64);
                double v = std::abs(eval_complex(b, z));
                c.expect(v > 1e-9, {{"k", k}, {"m", m}, {"re", z.real()}, {"im", z.imag()}, {"value", v}});
            }
        }
    return c;
}

Check check_gluing(const QParam& P, int kmax, int at_step, double tol)
{
    Check c{"gluing limits"};
    c.inputs = {{"q", P.str()}, {"kmax", kmax}, {"at_step", at_step}, {"tolerance", tol}};
    c.measured = nlohmann::json::array();
    auto run = [&](int k, const CharacterPoint& src, const CharacterPoint& target) {
        auto dev = gluing_limit_check(k, approach_sequence(src, P, std::max(30, at_step)), target, spectrum_labels(k), P);
        double v = at_step > 0 ? dev[at_step - 1] : dev.back();
        int first = -1;
        for (size_t i = 0; i < dev.size(); ++i)
            if (dev[i] < tol) {
                first = (int)i + 1;
                break;
            }
        nlohmann::json rec = {{"k", k}, {"source", point_json(src)}, {"target", point_json(target)}, {"deviation", v},
                              {"final_deviation", dev.back()}, {"first_step_below_tolerance", first}};
        if (dev.size() >= 25) rec["deviation_at_25"] = dev[24];
        c.measured.push_back(rec);
        c.expect(v < tol, rec);
    };
    const double d = P.delta.get_d();
    if (!P.is_one()) {
        for (int k : {2, 4}) {
            if (k > kmax) continue;
            for (double sgn : {1.0, -1.0}) {
                CharacterPoint src{0, sgn * d};
                auto target = identify_character(k, src, P);
                bool ok = target && target->m == 2 && near(target->param, -sgn);
                c.expect(ok, {{"k", k}, {"source", point_json(src)}, {"expected_target", -sgn}});
                if (target) run(k, src, *target);
            }
        }
        return c;
    }
    for (int k : {2, 3, 4}) {
        if (k > kmax) continue;
        for (int m = k % 2; m < k; m += 2)
            for (cd z : removed_points(k, m, P)) {
                CharacterPoint src{m, z};
                auto target = identify_character(k, src, P);
                bool on_top = target && target->m == k && std::abs(std::abs(target->param) - 1) < 1e-9;
                nlohmann::json where = {{"k", k}, {"source", point_json(src)}};
                if (k % 2 == 0) {
                    // omega_n -> +-1 lands on +-(-1)^{(k-m)/2}; interval points through t/2
                    cd base = m == 0 ? cd(z.real() / 2, 0) : z;
                    cd predicted = (((k - m) / 2) % 2 ? -1.0 : 1.0) * base;
                    where["predicted"] = point_json({k, predicted});
                    c.expect(on_top && near(target->param, predicted), where);
                } else {
                    c.expect(on_top, where);
                }
                if (target) run(k, src, *target);
            }
    }
    return c;
}

Check check_spectrum(const QParam& P, int kmax, int resolution)
{
    Check c{"spectrum structure"};
    c.inputs = {{"q", P.str()}, {"kmax", kmax}, {"resolution", resolution}};
    const double d = P.delta.get_d();
    for (int k = 0; k <= kmax; ++k) {
        auto r = spectrum_report(k, P, resolution);
        nlohmann::json at = {{"k", k}};
        std::vector<int> weights;
        for (int m = k % 2; m <= k; m += 2) weights.push_back(m);
        c.expect(r.components.size() == weights.size(), at);
        size_t removed_total = 0;
        for (size_t i = 0; i < std::min(weights.size(), r.components.size()); ++i) {
            auto& comp = r.components[i];
            int m = weights[i];
            std::vector<cd> expect;
            if (k > 0 && m < k) {
                if (m == 0) expect = {cd(-d, 0), cd(d, 0)};
                else if (P.is_one() && m % 2 == 0) expect = {cd(-1, 0), cd(1, 0)};
                else if (P.is_one()) expect = {cd(0, -1), cd(0, 1)};
            }
            bool same = comp.weight == m && comp.circle == (m > 0) && comp.removed.size() == expect.size();
            for (auto& z : expect)
                same = same && std::any_of(comp.removed.begin(), comp.removed.end(), [&](cd w) { return near(w, z); });
            c.expect(same, {{"k", k}, {"weight", m}});
            removed_total += comp.removed.size();
        }
        c.expect(r.gluings.size() == removed_total, {{"k", k}, {"gluings", r.gluings.size()}});
        for (auto& g : r.gluings) c.expect(g.confirmed, {{"k", k}, {"source", point_json(g.source)}});
        c.expect(r.unresolved.empty(), {{"k", k}, {"unresolved", r.unresolved.size()}});
        c.expect(r.separation_pairs > 0 && r.separation_failures.empty(),
                 {{"k", k}, {"pairs", r.separation_pairs}, {"failures", r.separation_failures.size()}});
    }
    return c;
}

Check check_gvec(const std::vector<std::string>& groups)
{
    Check c{"group tube algebras"};
    c.inputs = {{"groups", groups}};
    for (auto& name : groups) {
        FiniteGroup G = FiniteGroup::named(name);
        ClassData cd = classes_and_centralizers(G);
        for (size_t i = 0; i < cd.classes.size(); ++i) {
            ModelReport r = model_check(G, (int)i, cd);
            long long z = (long long)cd.centralizer[cd.classes[i][0]].size(), n = (long long)cd.classes[i].size();
            c.expect(r.ok() && r.dim == z * n * n, {{"group", name}, {"class", i}, {"dim", r.dim}});
        }
    }
    return c;
}

Check check_states(const QParam& P, double tol)
{
    Check c{"annular states"};
    c.inputs = {{"q", P.str()}, {"tolerance", tol}};
    const Rational& d = P.delta;

    Rational lo = -d - 1, step = (2 * d + 2) / 40;
    for (int i = 0; i <= 40; ++i) {
        Rational t = lo + i * step;
        c.expect(is_annular_state(state_from_t(t, P)) == (abs(t) <= d), {{"check", "interval"}, {"t", rational_str(t)}});
    }

    for (int a = 1; a <= 2; ++a) {
        for (int i = 0; i <= 8; ++i) {
            Rational t = -d + 2 * d * rat(i, 8);
            double v = cp_positivity_check(state_from_t(t, P), a);
            c.expect(v >= -tol, {{"check", "cp inside"}, {"alpha", a}, {"t", rational_str(t)}, {"min_eigenvalue", v}});
        }
        for (Rational t : {Rational(d + rat(1, 2)), Rational(-d - rat(1, 2))}) {
            double v = cp_positivity_check(state_from_t(t, P), a);
            c.expect(v < -tol, {{"check", "cp outside"}, {"alpha", a}, {"t", rational_str(t)}, {"min_eigenvalue", v}});
        }
    }

    auto one = trivial_state(P);
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 4; ++b)
            for (auto& dg : enumerate_diagrams(a + b, a + b))
                c.expect(cp_apply(one, a, b, TLElement(dg)) == TLElement(dg), {{"check", "trivial multiplier"}, {"alpha", a}, {"beta", b}});

    std::mt19937 rng(99);
    auto random_t = [&] {
        long num = (long)(rng() % 201) - 100;
        return Rational(d * rat(num, 100));
    };
    for (int s = 0; s < 20; ++s) {
        Rational t1 = random_t(), t2 = random_t();
        auto a = state_from_t(t1, P), b = state_from_t(t2, P);
        auto pa = decay_profile(a, 12), pab = decay_profile(box_product(a, b), 12);
        bool exact = true;
        for (int j = 0; j <= 12; ++j) exact = exact && pab[j] == abs(b.normalized(j)) * pa[j];
        int k = 1 + (int)(rng() % 2);
        int m = k % 2 + 2 * (int)(rng() % (k / 2 + 1));
        CharacterPoint p{m, m == 0 ? cd(random_t().get_d(), 0) : std::polar(1.0, 2 * M_PI * (rng() % 1000) / 1000.0)};
        auto chi = character_functional(k, p, P);
        auto boxed = box_corner(chi, b);
        auto basis = corner_basis(k, k, 1);
        auto sample = character_sample(k, P, 4);
        for (int g = 0; g <= k + 2; ++g) {
            double base = corner_profile(chi, g, basis, sample, P);
            double scaled = corner_profile(boxed, g, basis, sample, P);
            exact = exact && std::abs(scaled - std::abs(b.normalized(g).get_d()) * base) <= 1e-12 * std::max(1.0, base);
        }
        c.expect(exact, {{"check", "box scaling"}, {"t1", rational_str(t1)}, {"t2", rational_str(t2)}, {"k", k},
                         {"point", point_json(p)}});
    }

    auto w = haagerup_witness(P, 10, 12);
    c.expect(w.passed(), {{"check", "haagerup witness"}, {"transcript", to_json(w)}});

    double worst = 1e300;
    for (int s = 0; s < 50; ++s) {
        int k = (int)(rng() % 3);
        int m = k % 2 + 2 * (int)(rng() % (k / 2 + 1));
        CharacterPoint p{m, m == 0 ? cd(random_t().get_d(), 0) : std::polar(1.0, 2 * M_PI * (rng() % 1000) / 1000.0)};
        auto labels = corner_basis_labels(k, k, 1);
        auto pick = [&] {
            auto& l = labels[rng() % labels.size()];
            return CornerElement::basis(k, l.m, l.n);
        };
        CornerElement x = pick() + Scalar(rat((long)(rng() % 7) - 3, 2)) * pick();
        if (x.is_zero()) x = CornerElement::unit(k);
        auto parts = grade_parts(pick(), P);
        auto it = parts.begin();
        std::advance(it, rng() % parts.size());
        double margin = grade_bound_margin(k, p, x, it->second, it->first, P);
        worst = std::min(worst, margin);
        c.expect(margin >= -1e-9, {{"check", "grade bound"}, {"k", k}, {"x", x.str()}, {"grade", it->first}, {"margin", margin}});
    }
    c.measured = {{"worst_bound_margin", worst}, {"haagerup_final_deviation", w.sequence.back().deviation}};
    return c;
}

bool VerifyReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

VerifyReport verify_all(const std::string& profile, const QParam& P, int jobs)
{
    if (profile != "quick" && profile != "full") throw std::invalid_argument("unknown profile '" + profile + "'");
    VerifyReport r;
    r.profile = profile;
    r.q = P.str();
    r.kmax = profile == "quick" ? 4 : 6;
    const int kmax = r.kmax;
    std::vector<std::function<Check()>> tasks = {
        [] { return check_catalan(16); },
        [&] { return check_jones_wenzl(P, kmax); },
        [] { return check_quantum_identity(8); },
        [&] { return check_b_recursion(P, kmax); },
        [&] { return check_commutativity(P, 3, 2); },
        [&] { return check_characters(P, std::min(kmax, 5)); },
        [&] { return check_degeneracy(P, kmax); },
        [&] { return check_gluing(P, 4); },
        [&] { return check_spectrum(P, 4); },
        [] { return check_gvec({"trivial", "Z2", "Z6", "S3", "D4", "S4"}); },
        [&] { return check_states(P); },
    };
    r.checks.resize(tasks.size());
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < std::max(1, jobs); ++w)
        pool.emplace_back([&] {
            for (size_t i; (i = next++) < tasks.size();) r.checks[i] = tasks[i]();
        });
    for (auto& t : pool) t.join();
    return r;
}

nlohmann::json to_json(const VerifyReport& r)
{
    nlohmann::json checks = nlohmann::json::array();
    for (auto& c : r.checks) checks.push_back(to_json(c));
    return {{"schema_version", schema_version}, {"profile", r.profile}, {"q", r.q},
            {"kmax", r.kmax},                   {"checks", checks},     {"passed", r.passed()}};
}

}  // namespace tubealg
