#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tubealg/verify.hpp"

using namespace tubealg;
using nlohmann::json;

namespace {

struct Config {
    std::string q = "2";
    int k = 2;
    int m = -1;
    int max_winding = 3;
    double tolerance = 1e-6;
    std::string out;
    std::string format = "json";
    int jobs = 1;
    bool large_k = false;
    // command parameters
    std::string point = "0";
    int resolution = 8;
    std::string group = "S3";
    std::string group_file;
    std::string suite = "all";
    int steps = 10;
    int horizon = 12;
    int alpha = 2;
    std::string profile = "quick";
};

struct Output {
    std::string text;
    bool ok = true;
};

cplx parse_point(const std::string& s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos) return parse_rational(s).get_d();
    return {parse_rational(s.substr(0, comma)).get_d(), parse_rational(s.substr(comma + 1)).get_d()};
}

std::string label_str(const CornerLabel& l) { return std::to_string(l.m) + "," + std::to_string(l.n); }

std::string csv_header() { return "# schema_version " + std::to_string(schema_version) + "\n"; }

json report(const std::string& command, const Config& c, json body)
{
    json j = {{"schema_version", schema_version}, {"command", command}, {"q", QParam::parse(c.q).str()}};
    for (auto& [key, value] : body.items()) j[key] = value;
    return j;
}

Output run_jw(const Config& c, const QParam& P)
{
    auto f = jones_wenzl(c.k, P);
    if (c.format == "csv") {
        std::ostringstream os;
        os << csv_header() << "pairing,coefficient\n";
        for (auto& [d, coeff] : f->terms()) {
            for (size_t i = 0; i < d.pairing.size(); ++i) os << (i ? " " : "") << d.pairing[i];
            os << "," << coeff.str() << "\n";
        }
        return {os.str()};
    }
    return {report("jw", c, {{"k", c.k}, {"terms", f->terms().size()}, {"element", to_json(*f)}}).dump(2) + "\n"};
}

Output run_tube_mul(const Config& c, const QParam& P)
{
    auto labels = corner_basis_labels(c.k, c.k, c.max_winding);
    std::ostringstream os;
    json table = json::array();
    if (c.format == "csv") os << csv_header() << "a,b,product\n";
    for (auto& a : labels)
        for (auto& b : labels) {
            auto p = corner_mul(CornerElement::basis(c.k, a.m, a.n), CornerElement::basis(c.k, b.m, b.n), P);
            if (c.format == "csv")
                os << "\"" << label_str(a) << "\",\"" << label_str(b) << "\",\"" << p.str() << "\"\n";
            else
                table.push_back({{"a", label_str(a)}, {"b", label_str(b)}, {"product", to_json(p)}});
        }
    if (c.format == "csv") return {os.str()};
    return {report("tube-mul", c, {{"k", c.k}, {"max_winding", c.max_winding}, {"table", table}}).dump(2) + "\n"};
}

Output run_bcoeff(const Config& c, const QParam& P)
{
    if (c.format == "csv") return {csv_header() + btable_csv(c.k, P)};
    json rows = json::array();
    for (int k = 0; k <= c.k; ++k)
        for (int m = k % 2; m <= k; m += 2)
            for (int l = m; l <= k; l += 2) {
                Scalar b = b_recursive(k, m, l, P);
                rows.push_back({{"k", k}, {"m", m}, {"l", l}, {"coefficient", b.str()}, {"terms", to_json(b)}});
            }
    return {report("bcoeff", c, {{"max_k", c.k}, {"table", rows}}).dump(2) + "\n"};
}

Output run_char(const Config& c, const QParam& P)
{
    int m = c.m >= 0 ? c.m : c.k;
    CharacterPoint p{m, parse_point(c.point)};
    if (!admissible(c.k, p, P)) throw std::invalid_argument("point " + point_str(p) + " is not admissible at k=" + std::to_string(c.k));
    std::ostringstream os;
    json values = json::array();
    if (c.format == "csv") os << csv_header() << "label,polynomial,re,im\n";
    for (auto& l : spectrum_labels(c.k, c.max_winding)) {
        Scalar poly = char_poly(c.k, m, l, P);
        cplx v = char_numeric(c.k, p, CornerElement::basis(c.k, l.m, l.n), P);
        if (c.format == "csv")
            os << "\"" << label_str(l) << "\",\"" << poly.str() << "\"," << v.real() << "," << v.imag() << "\n";
        else
            values.push_back({{"label", label_str(l)}, {"polynomial", poly.str()}, {"re", v.real()}, {"im", v.imag()}});
    }
    if (c.format == "csv") return {os.str()};
    return {report("char", c, {{"k", c.k}, {"weight", m}, {"point", point_str(p)}, {"values", values}}).dump(2) + "\n"};
}

Output run_spectrum(const Config& c, const QParam& P)
{
    auto r = spectrum_report(c.k, P, c.resolution);
    bool ok = r.unresolved.empty() && r.separation_failures.empty();
    for (auto& g : r.gluings) ok = ok && g.confirmed;
    if (c.format == "csv") return {csv_header() + spectrum_csv(r, c.resolution, P), ok};
    return {report("spectrum", c, {{"resolution", c.resolution}, {"report", to_json(r)}, {"passed", ok}}).dump(2) + "\n", ok};
}

Output run_gvec(const Config& c)
{
    FiniteGroup G = [&] {
        if (c.group_file.empty()) return FiniteGroup::named(c.group);
        std::ifstream in(c.group_file);
        if (!in) throw std::invalid_argument("cannot read group file " + c.group_file);
        return FiniteGroup::from_json(json::parse(in));
    }();
    ClassData cd = classes_and_centralizers(G);
    bool ok = true;
    json classes = json::array();
    std::ostringstream os;
    if (c.format == "csv") os << csv_header() << "class,representative,size,centralizer_order,dim,expected_dim,passed\n";
    for (size_t i = 0; i < cd.classes.size(); ++i) {
        auto r = model_check(G, (int)i, cd);
        ok = ok && r.ok();
        if (c.format == "csv")
            os << i << "," << r.representative << "," << r.class_size << "," << r.centralizer_order << "," << r.dim << ","
               << r.expected_dim << "," << (r.ok() ? "true" : "false") << "\n";
        else
            classes.push_back({{"elements", cd.classes[i]}, {"model_check", to_json(r)}});
    }
    if (c.format == "csv") return {os.str(), ok};
    json g = G.to_json();
    return {report("gvec", c, {{"group", g}, {"classes", classes}, {"passed", ok}}).dump(2) + "\n", ok};
}

Output run_states(const Config& c, const QParam& P)
{
    bool ok = true;
    json checks = json::array();
    std::ostringstream csv;
    csv << csv_header() << "check,inputs,margin,verdict\n";
    auto add = [&](const std::string& name, const json& inputs, double margin, bool pass) {
        ok = ok && pass;
        checks.push_back({{"check", name}, {"inputs", inputs}, {"margin", margin}, {"verdict", pass ? "pass" : "fail"}});
        std::string quoted;
        for (char ch : inputs.dump()) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        csv << name << ",\"" << quoted << "\"," << margin << "," << (pass ? "pass" : "fail") << "\n";
    };
    json witness;
    if (c.suite == "witness" || c.suite == "all") {
        auto w = haagerup_witness(P, c.steps, c.horizon, c.jobs);
        witness = to_json(w);
        for (auto& s : w.sequence)
            add("haagerup step", {{"n", s.n}, {"t", rational_str(s.t)}, {"horizon", c.horizon}, {"decay", decay_str(s.decay)}},
                s.deviation, s.passed());
        add("haagerup monotone", {{"steps", c.steps}, {"horizon", c.horizon}}, 0, w.monotone);
    }
    if (c.suite == "positivity" || c.suite == "all") {
        const Rational& d = P.delta;
        for (int a = 1; a <= c.alpha; ++a) {
            double base = cp_positivity_check(trivial_state(P), a);
            add("cp trivial", {{"alpha", a}}, base, base >= -c.tolerance);
            for (int i = 0; i <= 8; ++i) {
                Rational t = -d + 2 * d * rat(i, 8);
                double v = cp_positivity_check(state_from_t(t, P), a);
                add("cp inside", {{"alpha", a}, {"t", rational_str(t)}}, v, v >= -c.tolerance);
            }
            Rational t = d + rat(1, 2);
            double v = cp_positivity_check(state_from_t(t, P), a);
            add("cp outside", {{"alpha", a}, {"t", rational_str(t)}}, v, v < -c.tolerance);
        }
    }
    if (c.suite != "witness" && c.suite != "positivity" && c.suite != "all")
        throw std::invalid_argument("unknown states suite '" + c.suite + "'");
    if (c.format == "csv") return {csv.str(), ok};
    json body = {{"suite", c.suite}, {"checks", checks}, {"passed", ok}};
    if (!witness.is_null()) body["witness"] = witness;
    return {report("states", c, body).dump(2) + "\n", ok};
}

Output run_verify(const Config& c, const QParam& P)
{
    auto r = verify_all(c.profile, P, c.jobs);
    if (c.format == "csv") {
        std::ostringstream os;
        os << csv_header() << "check,cases,failed,passed\n";
        for (auto& ch : r.checks) os << "\"" << ch.name << "\"," << ch.cases << "," << ch.failed << "," << (ch.passed() ? "true" : "false") << "\n";
        return {os.str(), r.passed()};
    }
    json j = to_json(r);
    j["command"] = "verify-all";
    return {j.dump(2) + "\n", r.passed()};
}

}  // namespace

int main(int argc, char** argv)
{
    Config c;
    CLI::App app{"Tube algebra computations for Temperley-Lieb-Jones and G-Vec categories"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--q", c.q, "q > 0 as a rational p/r (delta = q + 1/q)");
    app.add_option("--k", c.k, "weight bound");
    app.add_option("--max-winding", c.max_winding, "winding truncation of the corner basis");
    app.add_option("--tolerance", c.tolerance, "numeric tolerance");
    app.add_option("--out", c.out, "output file (stdout when empty)");
    app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--allow-large-k", c.large_k, "lift the k <= 6 limit");

    auto jw = app.add_subcommand("jw", "Jones-Wenzl expansion of f_k");
    auto mul = app.add_subcommand("tube-mul", "multiplication table of the weight k corner");
    auto bco = app.add_subcommand("bcoeff", "B coefficients up to k");
    auto chr = app.add_subcommand("char", "character values on the corner basis");
    chr->add_option("--m", c.m, "lowest weight (defaults to k)");
    chr->add_option("--point", c.point, "t for weight 0, or re,im on the circle");
    auto spec = app.add_subcommand("spectrum", "spectrum report of the weight k corner");
    spec->add_option("--resolution", c.resolution, "sample points per component");
    auto gv = app.add_subcommand("gvec", "tube algebra of a finite group");
    gv->add_option("--group", c.group, "trivial, Zn, Dn, Sn or cyclic:n, dihedral:n, symmetric:n");
    gv->add_option("--group-file", c.group_file, "JSON file with a Cayley table");
    auto st = app.add_subcommand("states", "annular state suites");
    st->add_option("--suite", c.suite, "witness, positivity or all");
    st->add_option("--steps", c.steps, "witness sequence length");
    st->add_option("--horizon", c.horizon, "weight horizon of the decay checks");
    st->add_option("--alpha", c.alpha, "largest strand count for positivity");
    auto va = app.add_subcommand("verify-all", "run the verification suite");
    va->add_option("--profile", c.profile, "quick (k <= 4) or full (k <= 6)")->check(CLI::IsMember({"quick", "full"}));

    CLI11_PARSE(app, argc, argv);

    try {
        QParam P = QParam::parse(c.q);
        // q and 1/q give the same category
        if (P.q < 1) P = QParam(Rational(1 / P.q));
        c.q = P.str();
        if (c.k < 0) throw std::invalid_argument("k must be nonnegative");
        if (c.k > 6 && !c.large_k) throw std::invalid_argument("k > 6 needs --allow-large-k");
        if (c.max_winding < 0) throw std::invalid_argument("max-winding must be nonnegative");
        Output o;
        if (*jw) o = run_jw(c, P);
        else if (*mul) o = run_tube_mul(c, P);
        else if (*bco) o = run_bcoeff(c, P);
        else if (*chr) o = run_char(c, P);
        else if (*spec) o = run_spectrum(c, P);
        else if (*gv) o = run_gvec(c);
        else if (*st) o = run_states(c, P);
        else if (*va) o = run_verify(c, P);
        if (c.out.empty()) {
            std::cout << o.text;
        } else {
            std::ofstream f(c.out);
            if (!f) throw std::invalid_argument("cannot write " + c.out);
            f << o.text;
        }
        if (!o.ok) std::cerr << "some checks failed\n";
        return o.ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
