#include <doctest.h>

#include <cmath>

#include "tubealg/spectrum.hpp"

using namespace tubealg;

namespace {

using cd = std::complex<double>;

CharacterPoint pt(int m, cd z) { return CharacterPoint{m, z}; }

bool close(cd a, cd b, double tol = 1e-9) { return std::abs(a - b) < tol; }

}  // namespace

TEST_CASE("numeric characters")
{
    QParam P(2);
    CHECK(close(char_numeric(0, pt(0, 0), CornerElement::basis(0, 0, 1), P), 0));
    CHECK(close(char_numeric(0, pt(0, 1.5), CornerElement::basis(0, 0, 1), P), 1.5));
    for (int k = 1; k <= 4; ++k) CHECK(close(char_numeric(k, pt(k, 1), CornerElement::rho(k), P), 1));
    CHECK(close(char_numeric(2, pt(0, 2.5), CornerElement::basis(2, 0, 0), P), 0));
    CHECK_THROWS(char_numeric(2, pt(0, 3), CornerElement::basis(2, 0, 0), P));
    CHECK_THROWS(char_numeric(2, pt(1, 1), CornerElement::basis(2, 0, 0), P));
    CHECK_THROWS(char_numeric(2, pt(2, cd(0.5, 0)), CornerElement::basis(2, 0, 0), P));
    // linear in the corner element
    auto x = CornerElement::basis(2, 2, 1, Scalar(3)) + CornerElement::basis(2, 0, 2, Scalar(rat(1, 2)));
    cd w = std::polar(1.0, 0.4);
    CHECK(close(char_numeric(2, pt(2, w), x, P), 3.0 * w));
}

TEST_CASE("separation examples")
{
    QParam P(2);
    auto labels = spectrum_labels(0);
    auto s = separation_check(0, {{pt(0, 1), pt(0, -1)}}, labels, P);
    REQUIRE(s.size() == 1);
    REQUIRE(s[0].witness.has_value());
    CHECK(*s[0].witness == CornerLabel{0, 1});
    auto labels4 = spectrum_labels(4);
    auto s2 = separation_check(4, {{pt(0, 0.3), pt(2, std::polar(1.0, 1.0))}, {pt(2, 1), pt(4, 1)}}, labels4, P);
    REQUIRE(s2[0].witness.has_value());
    CHECK(*s2[0].witness == CornerLabel{0, 0});
    REQUIRE(s2[1].witness.has_value());
    CHECK(*s2[1].witness == CornerLabel{2, 0});
    auto same = separation_check(4, {{pt(2, 1), pt(2, 1)}}, labels4, P);
    CHECK(same[0].identical);
    CHECK_FALSE(same[0].witness.has_value());
    CHECK_FALSE(same[0].counterexample());
}

TEST_CASE("removed points")
{
    QParam one(1), two(2);
    for (int k = 0; k <= 6; ++k)
        for (int m = k % 2; m <= k; m += 2) {
            auto r2 = removed_points(k, m, two);
            if (m > 0) CHECK(r2.empty());
            if (m == 0) CHECK(r2.size() == (k > 0 ? 2u : 0u));
            auto r1 = removed_points(k, m, one);
            if (m == k) {
                CHECK(r1.empty());
            } else if (m == 0) {
                REQUIRE(r1.size() == 2);
                CHECK(close(r1[0], -2));
                CHECK(close(r1[1], 2));
            } else if (m % 2 == 0) {
                REQUIRE(r1.size() == 2);
                CHECK(close(r1[0], -1));
                CHECK(close(r1[1], 1));
            } else {
                REQUIRE(r1.size() == 2);
                CHECK(close(r1[0], cd(0, -1)));
                CHECK(close(r1[1], cd(0, 1)));
            }
            for (auto z : r1) CHECK(std::abs(eval_complex(b_recursive(k, m, m, one), z)) < 1e-12);
        }
}

TEST_CASE("gluing limits at q = 2")
{
    QParam P(2);
    const double d = P.delta.get_d();
    for (int k : {2, 4}) {
        auto labels = spectrum_labels(k);
        for (double sgn : {1.0, -1.0}) {
            CharacterPoint src = pt(0, sgn * d);
            auto target = identify_character(k, src, P);
            REQUIRE(target.has_value());
            CHECK(target->m == 2);
            CHECK(close(target->param, -sgn, 1e-9));
            auto dev = gluing_limit_check(k, approach_sequence(src, P), *target, labels, P);
            REQUIRE(dev.size() == 30);
            for (size_t i = 5; i < dev.size(); ++i) CHECK(dev[i] < dev[i - 1]);
            CHECK(dev.back() < 1e-6);
        }
    }
}

TEST_CASE("gluing limits at q = 1")
{
    QParam P(1);
    for (int k = 2; k <= 6; ++k)
        for (int m = k % 2; m < k; m += 2)
            for (cd z : removed_points(k, m, P)) {
                auto target = identify_character(k, pt(m, z), P);
                REQUIRE(target.has_value());
                CHECK(target->m == k);
                // the limit on the top circle is (-1)^{(k-m)/2} times the removed point; t = 2 sits over omega = 1
                cd expected = m == 0 ? cd(((k / 2) % 2 ? -1.0 : 1.0) * z.real() / 2, 0) : (((k - m) / 2) % 2 ? -1.0 : 1.0) * z;
                CHECK(close(target->param, expected));
                auto dev = gluing_limit_check(k, approach_sequence(pt(m, z), P), *target, spectrum_labels(k), P);
                CHECK(dev.back() < 1e-6);
            }
}

TEST_CASE("spectrum reports")
{
    for (Rational q : {Rational(1), Rational(2)}) {
        QParam P(q);
        auto r0 = spectrum_report(0, P, 8);
        REQUIRE(r0.components.size() == 1);
        CHECK_FALSE(r0.components[0].circle);
        CHECK(r0.gluings.empty());
    }
    auto r3 = spectrum_report(3, QParam(2), 8);
    REQUIRE(r3.components.size() == 2);
    CHECK(r3.components[0].weight == 1);
    CHECK(r3.components[1].weight == 3);
    CHECK(r3.gluings.empty());
    auto r2 = spectrum_report(2, QParam(1), 8);
    REQUIRE(r2.gluings.size() == 2);
    CHECK(close(r2.gluings[0].source.param, -2));
    CHECK(close(r2.gluings[0].target.param, 1));
    CHECK(close(r2.gluings[1].source.param, 2));
    CHECK(close(r2.gluings[1].target.param, -1));
    for (Rational q : {Rational(1), Rational(2)}) {
        QParam P(q);
        for (int k = 0; k <= 5; ++k) {
            auto r = spectrum_report(k, P, 12);
            CHECK(r.unresolved.empty());
            CHECK(r.separation_failures.empty());
            CHECK(r.separation_pairs > 0);
            size_t removed = 0;
            for (auto& c : r.components) removed += c.removed.size();
            CHECK(r.gluings.size() == removed);
            for (auto& g : r.gluings) CHECK(g.confirmed);
            auto j = to_json(r);
            CHECK(j["components"].size() == r.components.size());
            auto csv = spectrum_csv(r, 4, P);
            CHECK(csv.rfind("weight,parameter,basis_label,re,im\n", 0) == 0);
        }
    }
}
