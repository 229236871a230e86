#include <doctest.h>

#include "tubealg/tl.hpp"

using namespace tubealg;

namespace {

long long binom(int n, int k)
{
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

TLElement el(const TLDiagram& d) { return TLElement(d); }

}  // namespace

TEST_CASE("diagram counts are Catalan")
{
    CHECK(enumerate_diagrams(0, 0).size() == 1);
    CHECK(enumerate_diagrams(2, 2).size() == 2);
    CHECK(enumerate_diagrams(3, 3).size() == 5);
    CHECK(enumerate_diagrams(3, 2).empty());
    for (int n = 0; n <= 8; ++n)
        for (int b = 0; b <= 2 * n; ++b) {
            auto ds = enumerate_diagrams(b, 2 * n - b);
            CHECK(static_cast<long long>(ds.size()) == binom(2 * n, n) / (n + 1));
            for (auto& d : ds) CHECK(is_planar(d));
            CHECK(std::adjacent_find(ds.begin(), ds.end()) == ds.end());
        }
}

TEST_CASE("composition")
{
    QParam P(2);
    auto e1 = el(TLDiagram::e(2, 1));
    CHECK(compose(e1, e1, P) == Scalar(P.delta) * e1);
    auto x = Scalar(Rational(3)) * el(TLDiagram::e(3, 1)) + el(TLDiagram::e(3, 2));
    CHECK(compose(TLElement::identity(3), x, P) == x);
    CHECK(compose(x, TLElement::identity(3), P) == x);
    auto loop = compose(el(TLDiagram::cup()), el(TLDiagram::cap()), P);
    CHECK(loop == Scalar(P.delta) * TLElement::identity(0));
    CHECK_THROWS(compose(e1, TLElement::identity(3), P));
}

TEST_CASE("tensor and star")
{
    auto s = TLElement::identity(1);
    CHECK(tensor(s, s) == TLElement::identity(2));
    auto x = el(TLDiagram::e(3, 2));
    CHECK(tensor(x, TLElement::identity(0)) == x);
    CHECK(tensor(el(TLDiagram::e(2, 1)), s) == el(TLDiagram::e(3, 1)));
    CHECK(star(el(TLDiagram::cup())) == el(TLDiagram::cap()));
    auto y = el(TLDiagram::e(4, 1)) + Scalar(rat(2, 3)) * el(TLDiagram::e(4, 3));
    CHECK(star(star(y)) == y);
    for (auto q : {1, 2})
        for (int k = 0; k <= 5; ++k) {
            QParam P(q);
            CHECK(star(*jones_wenzl(k, P)) == *jones_wenzl(k, P));
        }
}

TEST_CASE("Jones-Wenzl basics")
{
    QParam P(2);
    CHECK(*jones_wenzl(1, P) == TLElement::identity(1));
    auto f2 = TLElement::identity(2) - Scalar(1 / qnum(2, P)) * el(TLDiagram::e(2, 1));
    CHECK(*jones_wenzl(2, P) == f2);
    CHECK(jones_wenzl(2, P)->coeff(single_cap_diagram(2, 1)) == Scalar(-qnum(1, P) / qnum(2, P)));
}

TEST_CASE("Jones-Wenzl properties")
{
    for (int q : {1, 2}) {
        QParam P(q);
        for (int k = 0; k <= 6; ++k) {
            auto f = *jones_wenzl(k, P);
            CHECK(f.coeff(TLDiagram::identity(k)) == Scalar(1));
            CHECK(compose(f, f, P) == f);
            for (int i = 1; i < k; ++i) {
                CHECK(compose(f, el(cap_at(k, i)), P).is_zero());
                CHECK(compose(el(cup_at(k, i)), f, P).is_zero());
            }
            for (int p = 1; p < k; ++p) {
                Rational expect = qnum(p, P) / qnum(k, P) * ((k - p) % 2 ? -1 : 1);
                CHECK(f.coeff(single_cap_diagram(k, p)) == Scalar(expect));
            }
            CHECK(markov_trace(f, P) == Scalar(qnum(k + 1, P)));
            if (k > 0)
                CHECK(markov_trace(f, P).constant() * qnum(k, P) ==
                      markov_trace(*jones_wenzl(k - 1, P), P).constant() * qnum(k + 1, P));
        }
    }
}

TEST_CASE("Markov trace")
{
    QParam P(rat(3, 2));
    for (int k = 0; k <= 5; ++k) CHECK(markov_trace(TLElement::identity(k), P) == Scalar(qpow(P.delta, k)));
    CHECK(markov_trace(el(TLDiagram::e(2, 1)), P) == Scalar(P.delta));
    CHECK_THROWS(markov_trace(el(TLDiagram::cup()), P));
}

TEST_CASE("isotypic projectors")
{
    QParam P(2);
    CHECK(isotypic_projector(3, 3, P) == *jones_wenzl(3, P));
    CHECK(isotypic_projector(2, 0, P) == Scalar(1 / P.delta) * el(TLDiagram::e(2, 1)));
    for (int q : {1, 2}) {
        QParam Q(q);
        for (int n = 0; n <= 6; ++n) {
            std::vector<TLElement> ps;
            TLElement sum(n, n);
            for (int j = n % 2; j <= n; j += 2) {
                ps.push_back(isotypic_projector(n, j, Q));
                sum += ps.back();
            }
            CHECK(sum == TLElement::identity(n));
            for (size_t a = 0; a < ps.size(); ++a)
                for (size_t b = 0; b < ps.size(); ++b) {
                    auto prod = compose(ps[a], ps[b], Q);
                    if (a == b)
                        CHECK(prod == ps[a]);
                    else
                        CHECK(prod.is_zero());
                }
        }
    }
}

TEST_CASE("TL json round trip")
{
    QParam P(2);
    auto f = *jones_wenzl(3, P);
    auto j = to_json(f);
    CHECK(j["bottom"] == 3);
    CHECK(tl_from_json(j) == f);
}
