#include "tubealg/scalar.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tubealg {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto trim = [](std::string& x) {
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
        size_t i = 0;
        while (i < x.size() && std::isspace(static_cast<unsigned char>(x[i]))) ++i;
        x.erase(0, i);
    };
    trim(s);
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        // decimal literal, exact
        bool neg = s[0] == '-';
        std::string digits = s.substr(neg ? 1 : 0);
        dot = digits.find('.');
        std::string whole = digits.substr(0, dot), frac = digits.substr(dot + 1);
        if (whole.empty()) whole = "0";
        for (char c : whole + frac)
            if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad rational: " + s);
        mpz_class num(whole + frac, 10), den(1);
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
        Rational r(num, den);
        r.canonicalize();
        return neg ? Rational(-r) : r;
    }
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

std::string rational_str(const Rational& r) { return r.get_str(); }

QParam::QParam(Rational qv) : q(std::move(qv))
{
    if (q <= 0) throw std::invalid_argument("q must be positive");
    delta = q + 1 / q;
}

QParam QParam::parse(std::string_view text) { return QParam(parse_rational(text)); }

Rational qpow(const Rational& q, int e)
{
    Rational base = e >= 0 ? q : Rational(1 / q);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(std::abs(e)));
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(std::abs(e)));
    Rational r(n, d);
    r.canonicalize();
    return r;
}

Rational qnum(int n, const QParam& P)
{
    if (n < 0) throw std::invalid_argument("qint of negative integer");
    // [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}
    Rational s = 0;
    for (int j = 0; j < n; ++j) s += qpow(P.q, n - 1 - 2 * j);
    return s;
}

Scalar qint(int n, const QParam& P) { return Scalar(qnum(n, P)); }

Scalar::Scalar(const Rational& c, ParamKind kind) : kind_(kind)
{
    if (c != 0) terms_.emplace_back(0, c);
}

Scalar Scalar::monomial(int exp, const Rational& c, ParamKind kind)
{
    Scalar s;
    s.kind_ = kind;
    if (c != 0) s.terms_.emplace_back(exp, c);
    return s;
}

Scalar Scalar::with_kind(ParamKind k) const
{
    Scalar s = *this;
    s.kind_ = k;
    return s;
}

bool Scalar::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }

Rational Scalar::constant() const { return coeff(0); }

Rational Scalar::coeff(int exp) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                               [](const Term& t, int e) { return t.first < e; });
    if (it != terms_.end() && it->first == exp) return it->second;
    return 0;
}

int Scalar::min_exp() const { return terms_.empty() ? 0 : terms_.front().first; }
int Scalar::max_exp() const { return terms_.empty() ? 0 : terms_.back().first; }

void Scalar::adopt_kind(const Scalar& o)
{
    if (o.is_constant()) return;
    if (is_constant()) {
        kind_ = o.kind_;
        return;
    }
    if (kind_ != o.kind_) throw std::invalid_argument("mixing circle and real parameters");
}

void Scalar::normalize()
{
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second == 0; }), out.end());
    terms_ = std::move(out);
}

Scalar Scalar::operator-() const
{
    Scalar s = *this;
    for (auto& t : s.terms_) t.second = -t.second;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    adopt_kind(o);
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            out.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].second + o.terms_[j].second;
            if (c != 0) out.emplace_back(terms_[i].first, std::move(c));
            ++i, ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Scalar& a, const Scalar& b)
{
    Scalar r;
    r.kind_ = a.kind_;
    r.adopt_kind(b);
    if (a.is_zero() || b.is_zero()) return r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (auto& x : a.terms_)
        for (auto& y : b.terms_) r.terms_.emplace_back(x.first + y.first, x.second * y.second);
    r.normalize();
    return r;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar& Scalar::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.terms_ != b.terms_) return false;
    return a.is_constant() || a.kind_ == b.kind_;
}

Scalar Scalar::pow(int n) const
{
    if (n < 0) {
        if (terms_.size() != 1) throw std::invalid_argument("negative power of a non-monomial");
        auto& t = terms_[0];
        return monomial(t.first * n, qpow(t.second, n), kind_);
    }
    Scalar r = Scalar(Rational(1), kind_), b = *this;
    while (n) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b *= b;
    }
    return r;
}

std::string Scalar::str() const
{
    if (terms_.empty()) return "0";
    const char* var = kind_ == ParamKind::circle ? "w" : "t";
    std::string s;
    for (auto& [e, c] : terms_) {
        std::string cs = c.get_str();
        if (!s.empty()) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        Rational a = abs(c);
        if (e == 0) {
            s += a.get_str();
            continue;
        }
        if (a != 1) s += a.get_str() + "*";
        s += var;
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

cplx eval_complex(const Scalar& s, cplx point)
{
    cplx r = 0;
    for (auto& [e, c] : s.terms()) r += c.get_d() * std::pow(point, e);
    return r;
}

Rational eval_rational(const Scalar& s, const Rational& point)
{
    Rational r = 0;
    for (auto& [e, c] : s.terms()) r += c * qpow(point, e);
    return r;
}

Scalar involute(const Scalar& s)
{
    if (s.kind() == ParamKind::real) return s;
    Scalar r = Scalar(Rational(0), ParamKind::circle);
    for (auto& [e, c] : s.terms()) r += Scalar::monomial(-e, c, ParamKind::circle);
    return r;
}

nlohmann::json to_json(const Scalar& s)
{
    nlohmann::json j = nlohmann::json::object();
    for (auto& [e, c] : s.terms()) j[std::to_string(e)] = c.get_str();
    return j;
}

Scalar scalar_from_json(const nlohmann::json& j, ParamKind kind)
{
    Scalar s = Scalar(Rational(0), kind);
    for (auto& [k, v] : j.items()) s += Scalar::monomial(std::stoi(k), parse_rational(v.get<std::string>()), kind);
    return s;
}

}  // namespace tubealg
