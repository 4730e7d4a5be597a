#include <random>

#include "doctest.h"
#include "qsym/cochain.hpp"

using namespace qsym;

namespace {

Cochain random_exact_cochain(int degree, const ModuleSpec& mod, int denom, std::mt19937_64& rng) {
    Cochain c = Cochain::zero(degree, mod);
    std::uniform_int_distribution<int> d(0, denom - 1);
    for (auto& v : c.values) v = PhaseAngle::make_exact(Rat(d(rng), denom));
    return c;
}

// omega(a,b,c) = abc/2 on Z_2, the nontrivial class
Cochain z2_nontrivial_omega() {
    auto g = make_cyclic(2);
    ModuleSpec mod{ModuleKind::TrivialU1, g};
    Cochain w = Cochain::zero(3, mod);
    w.at({1, 1, 1}) = PhaseAngle::make_exact(Rat(1, 2));
    return w;
}

}  // namespace

TEST_CASE("coboundary of the zero cochain vanishes") {
    auto g = make_cyclic(3);
    for (ModuleKind kind : {ModuleKind::TrivialU1, ModuleKind::U1OfG, ModuleKind::U1OfG2}) {
        ModuleSpec mod{kind, g};
        for (int deg = 0; deg <= 2; ++deg) {
            Cochain d = coboundary(Cochain::zero(deg, mod));
            for (const auto& v : d.values) CHECK(v.int_distance() == 0);
        }
    }
}

TEST_CASE("degree-2 coboundary matches the four-term formula") {
    auto g = make_cyclic(2);
    ModuleSpec mod{ModuleKind::TrivialU1, g};
    std::mt19937_64 rng(3);
    Cochain xi = random_exact_cochain(2, mod, 8, rng);
    Cochain d = coboundary(xi);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                Rat expect = (xi.at({b, c}).r + xi.at({a, g->mul(b, c)}).r -
                              xi.at({g->mul(a, b), c}).r - xi.at({a, b}).r)
                                 .mod1();
                CHECK(d.at({a, b, c}).r.mod1() == expect);
            }
}

TEST_CASE("twisted degree-1 coboundary matches the conjugation formula") {
    auto g = make_cyclic(4);
    ModuleSpec mod{ModuleKind::U1OfG, g};
    std::mt19937_64 rng(5);
    Cochain c = random_exact_cochain(1, mod, 8, rng);
    Cochain d = coboundary(c);
    for (int h = 0; h < 4; ++h)
        for (int g1 = 0; g1 < 4; ++g1)
            for (int g2 = 0; g2 < 4; ++g2) {
                Rat expect = (c.at({g2}, g->conjugate(g1, h)).r + c.at({g1}, h).r -
                              c.at({g->mul(g1, g2)}, h).r)
                                 .mod1();
                CHECK(d.at({g1, g2}, h).r.mod1() == expect);
            }
}

TEST_CASE("is_cocycle on the Z_2 pentagon") {
    Cochain w = z2_nontrivial_omega();
    CHECK(is_cocycle(w));

    // breaking one value breaks closure
    Cochain bad = w;
    bad.at({1, 1, 0}) = PhaseAngle::make_exact(Rat(1, 4));
    CHECK_FALSE(is_cocycle(bad));

    // any coboundary is closed
    auto g = make_cyclic(2);
    std::mt19937_64 rng(9);
    ModuleSpec mod{ModuleKind::TrivialU1, g};
    Cochain xi = random_exact_cochain(2, mod, 12, rng);
    CHECK(is_cocycle(coboundary(xi)));
}

TEST_CASE("delta of delta vanishes exactly for all modules, |G| <= 6") {
    std::mt19937_64 rng(17);
    std::vector<GroupPtr> groups = {make_cyclic(2), make_cyclic(4),
                                    make_direct_product(make_cyclic(2), make_cyclic(3))};
    // nonabelian: S_3 built as the semidirect table via permutation composition
    groups.push_back(make_direct_product(make_cyclic(2), make_cyclic(2)));
    for (const auto& g : groups)
        for (ModuleKind kind : {ModuleKind::TrivialU1, ModuleKind::U1OfG, ModuleKind::U1OfG2}) {
            ModuleSpec mod{kind, g};
            int max_deg = g->order <= 4 ? 2 : 1;
            for (int deg = 0; deg <= max_deg; ++deg) {
                Cochain c = random_exact_cochain(deg, mod, 24, rng);
                Cochain dd = coboundary(coboundary(c));
                for (const auto& v : dd.values) CHECK(v.int_distance() == 0);
            }
        }
}

TEST_CASE("slant product of the trivial cocycle is trivial") {
    auto g = make_cyclic(3);
    ModuleSpec mod{ModuleKind::TrivialU1, g};
    Cochain tau = slant_product(Cochain::zero(3, mod));
    for (const auto& v : tau.values) CHECK(v.int_distance() == 0);
}

TEST_CASE("slant product on the Z_2 generator") {
    Cochain w = z2_nontrivial_omega();
    Cochain tau = slant_product(w);
    // tau(w)_a(a,a) = w(a,a,a)^2 / w(a,a,a) = w(a,a,a) = -1
    CHECK(tau.at({1, 1}, 1).r.mod1() == Rat(1, 2));
    // twisted 2-cocycle test
    CHECK(is_cocycle(tau));
}

TEST_CASE("slant product maps cocycles to twisted cocycles on Z_4") {
    auto g = make_cyclic(4);
    ModuleSpec mod{ModuleKind::TrivialU1, g};
    // omega(a,b,c) = a * (b + c - (b+c mod 4)) / 16 is the standard generator
    Cochain w = Cochain::zero(3, mod);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                w.at({a, b, c}) = PhaseAngle::make_exact(Rat(a * (b + c - (b + c) % 4), 16));
    REQUIRE(is_cocycle(w));
    CHECK(is_cocycle(slant_product(w)));
}

TEST_CASE("iota is a homomorphism into U(1)[G^2] cochains") {
    auto g = make_cyclic(2);
    ModuleSpec mod{ModuleKind::U1OfG, g};
    std::mt19937_64 rng(23);

    Cochain zero_theta = Cochain::zero(1, mod);
    for (const auto& v : iota(zero_theta).values) CHECK(v.int_distance() == 0);

    // cocycles map to cocycles
    for (int trial = 0; trial < 50; ++trial) {
        Cochain theta = random_exact_cochain(1, mod, 4, rng);
        if (!is_cocycle(theta)) continue;
        CHECK(is_cocycle(iota(theta)));
    }

    // iota of a twisted 1-coboundary equals the coboundary of iota(nu) entrywise
    ModuleSpec mod2{ModuleKind::U1OfG2, g};
    for (int trial = 0; trial < 20; ++trial) {
        Cochain nu = random_exact_cochain(0, mod, 8, rng);
        Cochain lhs = iota(coboundary(nu));
        // iota on 0-cochains: iota(nu)_{g,h} = nu_g nu_h / nu_gh
        Cochain inu = Cochain::zero(0, mod2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                inu.at({}, a * 2 + b) =
                    nu.at({}, a) + nu.at({}, b) - nu.at({}, g->mul(a, b));
        Cochain rhs = coboundary(inu);
        REQUIRE(lhs.values.size() == rhs.values.size());
        for (size_t i = 0; i < lhs.values.size(); ++i)
            CHECK(lhs.values[i].r.mod1() == rhs.values[i].r.mod1());
    }
}
