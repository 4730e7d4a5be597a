#include <algorithm>
#include <array>

#include "doctest.h"
#include "qsym/group.hpp"

using namespace qsym;

namespace {

// S_3 as permutations of {0,1,2}, composed left-to-right on points.
std::vector<std::vector<int>> s3_table() {
    std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    auto compose = [&](int a, int b) {
        std::array<int, 3> p;
        for (int i = 0; i < 3; ++i) p[i] = perms[a][perms[b][i]];
        for (int k = 0; k < 6; ++k)
            if (perms[k] == p) return k;
        return -1;
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) t[a][b] = compose(a, b);
    return t;
}

bool isomorphic_by_brute_force(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order != b.order) return false;
    std::vector<int> phi(a.order);
    for (int i = 0; i < a.order; ++i) phi[i] = i;
    do {
        bool ok = true;
        for (int x = 0; x < a.order && ok; ++x)
            for (int y = 0; y < a.order && ok; ++y)
                if (phi[a.mul(x, y)] != b.mul(phi[x], phi[y])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(phi.begin(), phi.end()));
    return false;
}

}  // namespace

TEST_CASE("cyclic groups") {
    auto z1 = make_cyclic(1);
    CHECK(z1->order == 1);
    CHECK(z1->mul(0, 0) == 0);

    auto z2 = make_cyclic(2);
    CHECK(z2->mul(1, 1) == 0);
    CHECK(z2->inv(1) == 1);

    auto z4 = make_cyclic(4);
    CHECK(z4->inv(1) == 3);
    CHECK(z4->inv(2) == 2);

    CHECK_THROWS_AS(make_cyclic(0), GroupValidationError);
}

TEST_CASE("direct products") {
    auto z2 = make_cyclic(2);
    auto z3 = make_cyclic(3);
    auto v4 = make_direct_product(z2, z2);
    CHECK(v4->order == 4);
    for (int g = 1; g < 4; ++g) CHECK(v4->inv(g) == g);

    auto z6 = make_direct_product(z2, z3);
    CHECK(z6->order == 6);
    CHECK(isomorphic_by_brute_force(*z6, *make_cyclic(6)));

    auto with_trivial = make_direct_product(z3, make_cyclic(1));
    CHECK(with_trivial->mul_table == z3->mul_table);
}

TEST_CASE("table validation") {
    auto s3 = make_from_table(s3_table(), "S3");
    CHECK(s3->order == 6);
    CHECK_FALSE(s3->is_abelian());

    // left-zero band: mul[a][b] = a has no identity
    std::vector<std::vector<int>> band = {{0, 0}, {1, 1}};
    CHECK_THROWS_WITH_AS(make_from_table(band), "group table: no identity", GroupValidationError);

    // AND monoid on {0,1}: associative, identity 1, but 0 has no inverse
    std::vector<std::vector<int>> band2 = {{0, 0}, {0, 1}};
    CHECK_THROWS_WITH_AS(make_from_table(band2), "group table: missing inverse",
                         GroupValidationError);

    // broken associativity
    std::vector<std::vector<int>> bad = {{0, 1, 2}, {1, 2, 0}, {2, 1, 0}};
    CHECK_THROWS_AS(make_from_table(bad), GroupValidationError);

    auto z2 = make_from_table({{0, 1}, {1, 0}});
    CHECK(z2->mul_table == make_cyclic(2)->mul_table);
}

TEST_CASE("conjugation") {
    auto z4 = make_cyclic(4);
    for (int k = 0; k < 4; ++k)
        for (int g = 0; g < 4; ++g) CHECK(z4->conjugate(k, g) == g);

    auto s3 = make_from_table(s3_table(), "S3");
    // for any rotation r and reflection s: s^-1 r s = r^-1
    int r = -1, s = -1;
    for (int g = 1; g < 6; ++g) {
        if (s3->element_order(g) == 3 && r < 0) r = g;
        if (s3->element_order(g) == 2 && s < 0) s = g;
    }
    REQUIRE(r >= 0);
    REQUIRE(s >= 0);
    CHECK(s3->conjugate(s, r) == s3->inv(r));
    CHECK(s3->conjugate(s3->identity, r) == r);
}

TEST_CASE("conjugation is a left action") {
    auto s3 = make_from_table(s3_table(), "S3");
    auto d4 = make_from_table(
        {{0, 1, 2, 3, 4, 5, 6, 7},
         {1, 2, 3, 0, 5, 6, 7, 4},
         {2, 3, 0, 1, 6, 7, 4, 5},
         {3, 0, 1, 2, 7, 4, 5, 6},
         {4, 7, 6, 5, 0, 3, 2, 1},
         {5, 4, 7, 6, 1, 0, 3, 2},
         {6, 5, 4, 7, 2, 1, 0, 3},
         {7, 6, 5, 4, 3, 2, 1, 0}},
        "D4");
    for (const auto& g : {s3, d4})
        for (int k = 0; k < g->order; ++k)
            for (int l = 0; l < g->order; ++l)
                for (int x = 0; x < g->order; ++x)
                    CHECK(g->conjugate(l, g->conjugate(k, x)) == g->conjugate(g->mul(k, l), x));
}
