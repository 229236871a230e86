#include <doctest.h>

#include <algorithm>

#include "tubealg/gvec.hpp"

using namespace tubealg;

namespace {

std::vector<FiniteGroup> test_groups()
{
    return {FiniteGroup::trivial(),   FiniteGroup::cyclic(2), FiniteGroup::cyclic(6),
            FiniteGroup::symmetric(3), FiniteGroup::dihedral(4), FiniteGroup::symmetric(4)};
}

std::vector<size_t> class_sizes(const ClassData& cd)
{
    std::vector<size_t> s;
    for (auto& c : cd.classes) s.push_back(c.size());
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

TEST_CASE("group tables")
{
    CHECK(FiniteGroup::symmetric(4).order() == 24);
    CHECK(FiniteGroup::dihedral(4).order() == 8);
    CHECK(FiniteGroup::named("S3").order() == 6);
    CHECK(FiniteGroup::named("cyclic:5").order() == 5);
    CHECK_THROWS(FiniteGroup::named("Q8"));
    CHECK_THROWS(FiniteGroup("bad", {{0, 1}, {1, 1}}));
    CHECK_THROWS(FiniteGroup("bad", {{1, 0}, {0, 1}}));
    auto G = FiniteGroup::symmetric(3);
    auto H = FiniteGroup::from_json(G.to_json());
    CHECK(H.order() == 6);
    for (int a = 0; a < 6; ++a) CHECK(G.mul(a, G.inv(a)) == 0);
}

TEST_CASE("classes and centralizers")
{
    auto t = classes_and_centralizers(FiniteGroup::trivial());
    CHECK(t.classes.size() == 1);
    CHECK(t.centralizer[0].size() == 1);
    CHECK(class_sizes(classes_and_centralizers(FiniteGroup::symmetric(3))) == std::vector<size_t>{1, 2, 3});
    CHECK(class_sizes(classes_and_centralizers(FiniteGroup::cyclic(6))) == std::vector<size_t>(6, 1));
    CHECK(class_sizes(classes_and_centralizers(FiniteGroup::dihedral(4))) == std::vector<size_t>{1, 1, 2, 2, 2});
    CHECK(class_sizes(classes_and_centralizers(FiniteGroup::symmetric(4))) == std::vector<size_t>{1, 3, 6, 6, 8});
    auto S3 = FiniteGroup::symmetric(3);
    auto cd = classes_and_centralizers(S3);
    for (auto& c : cd.classes)
        if (c.size() == 3)
            for (int x : c) CHECK(cd.centralizer[x].size() == 2);
    for (auto& G : test_groups()) {
        auto d = classes_and_centralizers(G);
        size_t total = 0;
        for (auto& c : d.classes) {
            total += c.size();
            for (int x : c) {
                CHECK(c.size() * d.centralizer[x].size() == static_cast<size_t>(G.order()));
                CHECK(std::binary_search(d.centralizer[x].begin(), d.centralizer[x].end(), x));
            }
        }
        CHECK(total == static_cast<size_t>(G.order()));
    }
}

TEST_CASE("tube multiplication examples")
{
    auto G = FiniteGroup::symmetric(3);
    auto cd = classes_and_centralizers(G);
    for (int x = 0; x < G.order(); ++x) {
        for (int y = 0; y < G.order(); ++y) {
            TubeElement fy({x, y});
            CHECK(tube_mul(G, TubeElement({tube_target(G, {x, y}), 0}), fy) == fy);
            CHECK(tube_mul(G, fy, TubeElement({x, 0})) == fy);
            CHECK(tube_mul(G, tube_star(G, fy), fy) == TubeElement({x, 0}));
            CHECK(omega_gvec(tube_mul(G, tube_star(G, fy), fy)) == 1);
            CHECK(omega_gvec(fy) == (y == 0 ? 1 : 0));
        }
        for (int y : cd.centralizer[x])
            for (int z : cd.centralizer[x])
                CHECK(tube_mul(G, TubeElement({x, y}), TubeElement({x, z})) == TubeElement({x, G.mul(y, z)}));
    }
    // not composable
    int t = cd.classes[1].front();
    CHECK(tube_mul(G, TubeElement({0, 1}), TubeElement({t, 0})).is_zero());
}

TEST_CASE("tube algebra axioms on small groups")
{
    for (auto& G : test_groups()) {
        if (G.order() > 8) continue;
        const int n = G.order();
        std::vector<TubeBasis> basis;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) basis.push_back({x, y});
        for (auto& a : basis)
            for (auto& b : basis) {
                TubeElement A(a), B(b);
                auto ab = tube_mul(G, A, B);
                CHECK(tube_star(G, ab) == tube_mul(G, tube_star(G, B), tube_star(G, A)));
                CHECK(omega_gvec(ab) == omega_gvec(tube_mul(G, B, A)));
                for (auto& c : basis) {
                    TubeElement C(c);
                    CHECK(tube_mul(G, ab, C) == tube_mul(G, A, tube_mul(G, B, C)));
                }
            }
    }
}

TEST_CASE("Omega Gram form is the identity")
{
    for (auto& G : test_groups()) {
        const int n = G.order();
        for (int xa = 0; xa < n; ++xa)
            for (int ya = 0; ya < n; ++ya)
                for (int xb = 0; xb < n; ++xb)
                    for (int yb = 0; yb < n; ++yb) {
                        Rational v = omega_gvec(tube_mul(G, tube_star(G, TubeElement({xa, ya})), TubeElement({xb, yb})));
                        CHECK(v == ((xa == xb && ya == yb) ? 1 : 0));
                    }
    }
}

TEST_CASE("model isomorphism")
{
    for (auto& G : test_groups()) {
        auto cd = classes_and_centralizers(G);
        for (int c = 0; c < static_cast<int>(cd.classes.size()); ++c) {
            auto r = model_check(G, c, cd);
            CHECK(r.ok());
            CHECK(r.dim == static_cast<long long>(cd.centralizer[cd.classes[c].front()].size() * cd.classes[c].size() *
                                                  cd.classes[c].size()));
            CHECK(r.products_checked == r.dim * r.dim);
        }
    }
    auto S3 = FiniteGroup::symmetric(3);
    auto cd = classes_and_centralizers(S3);
    for (int c = 0; c < 3; ++c)
        if (cd.classes[c].size() == 3) CHECK(model_check(S3, c, cd).dim == 18);
    auto id = model_check(S3, 0, cd);
    CHECK(id.dim == 6);
    CHECK(id.class_size == 1);
    auto Z2 = FiniteGroup::cyclic(2);
    CHECK(model_check(Z2, 1, classes_and_centralizers(Z2)).dim == 2);
}

TEST_CASE("diagonal corner is the centralizer group algebra")
{
    for (auto& G : test_groups()) {
        auto cd = classes_and_centralizers(G);
        for (int x = 0; x < G.order(); ++x)
            for (int y : cd.centralizer[x]) {
                CHECK(tube_target(G, {x, y}) == x);
                for (int z : cd.centralizer[x])
                    CHECK(tube_mul(G, TubeElement({x, y}), TubeElement({x, z})) == TubeElement({x, G.mul(y, z)}));
            }
    }
}
