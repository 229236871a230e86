#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace tubealg {

using Rational = mpq_class;
using cplx = std::complex<double>;

Rational parse_rational(std::string_view text);
inline Rational rat(long n, long d = 1)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}
std::string rational_str(const Rational& r);

struct QParam {
    Rational q;
    Rational delta;

    explicit QParam(Rational qv);
    static QParam parse(std::string_view text);
    bool is_one() const { return q == 1; }
    std::string str() const { return rational_str(q); }
};

// u stands for omega on the circle and for t on the real line
enum class ParamKind { circle, real };

class Scalar {
  public:
    using Term = std::pair<int, Rational>;

    Scalar() = default;
    Scalar(const Rational& c, ParamKind kind = ParamKind::circle);
    Scalar(long c) : Scalar(Rational(c)) {}
    Scalar(int c) : Scalar(Rational(c)) {}

    static Scalar monomial(int exp, const Rational& c, ParamKind kind);
    static Scalar u(ParamKind kind, int exp = 1) { return monomial(exp, 1, kind); }

    ParamKind kind() const { return kind_; }
    Scalar with_kind(ParamKind k) const;
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant() const;  // coefficient of u^0
    Rational coeff(int exp) const;
    int min_exp() const;
    int max_exp() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator*=(const Rational& c);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator*(Scalar a, const Rational& c) { return a *= c; }
    friend Scalar operator*(const Rational& c, Scalar a) { return a *= c; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar pow(int n) const;
    std::string str() const;

  private:
    void normalize();
    void adopt_kind(const Scalar& o);

    std::vector<Term> terms_;
    ParamKind kind_ = ParamKind::circle;
};

Scalar qint(int n, const QParam& P);
Rational qnum(int n, const QParam& P);
Rational qpow(const Rational& q, int e);

cplx eval_complex(const Scalar& s, cplx point);
Rational eval_rational(const Scalar& s, const Rational& point);
Scalar involute(const Scalar& s);

nlohmann::json to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j, ParamKind kind = ParamKind::circle);

}  // namespace tubealg
