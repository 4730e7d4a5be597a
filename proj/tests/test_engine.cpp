#include <numbers>
#include <random>

#include "doctest.h"
#include "qsym/engine.hpp"

using namespace qsym;

namespace {

Cochain z2_nontrivial_omega() {
    auto g = make_cyclic(2);
    ModuleSpec mod{ModuleKind::TrivialU1, g};
    Cochain w = Cochain::zero(3, mod);
    w.at({1, 1, 1}) = PhaseAngle::make_exact(Rat(1, 2));
    return w;
}

// closed-form fusion operator of the cocycle symmetry at site j:
// Phi_j(g,h) = sum_{x} omega(g, h, (gh)^-1 x) |x><x|
LocalOperator closed_form_fusion(const GroupPtr& G, const Cochain& omega, const ChainSpec& chain,
                                 int site, int g, int h) {
    Mat m = Mat::Zero(G->order, G->order);
    for (int x = 0; x < G->order; ++x) {
        int arg = G->mul(G->inv(G->mul(g, h)), x);
        double ang = 2.0 * std::numbers::pi * omega.at({g, h, arg}).value();
        m(x, x) = cd(std::cos(ang), std::sin(ang));
    }
    return LocalOperator::from_matrix(chain, Interval(site, site), std::move(m));
}

}  // namespace

TEST_CASE("fusion operators of the Z_2 cocycle symmetry match the closed form") {
    auto g = make_cyclic(2);
    Cochain w = z2_nontrivial_omega();
    ChainSpec chain = ChainSpec::uniform(-6, 5, 2);
    Symmetry s = build_cocycle_symmetry(g, w, chain);
    RightRestriction r = right_restriction(s, 0);
    FusionTable f = fusion_operators(r);

    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            LocalOperator expect = closed_form_fusion(g, w, chain, 0, a, b);
            CHECK(phase_distance(f.at(a, b), expect, chain) < 1e-8);
        }
    // h = identity: proportional to the identity
    CHECK(phase_distance(f.at(1, 0), LocalOperator::identity(chain, f.at(1, 0).support), chain) <
          1e-9);
}

TEST_CASE("CZ fusion operator is proportional to the identity") {
    ChainSpec chain = ChainSpec::uniform(-6, 5, 2);
    Symmetry s = build_cz_symmetry(chain);
    RightRestriction r = right_restriction(s, 0);
    FusionTable f = fusion_operators(r);
    CHECK(phase_distance(f.at(1, 1), LocalOperator::identity(chain, f.at(1, 1).support), chain) <
          1e-9);
}

TEST_CASE("anomaly extraction identifies the input class (Z_2)") {
    auto g = make_cyclic(2);
    ModuleSpec mod{ModuleKind::TrivialU1, g};
    ChainSpec chain = ChainSpec::uniform(-6, 5, 2);
    CohomologyGroup h3 = enumerate_classes(g, 3, mod);
    auto reps = h3.all_class_representatives();
    auto fps = h3.all_class_fingerprints();
    for (size_t cls = 0; cls < reps.size(); ++cls) {
        Symmetry s = build_cocycle_symmetry(g, reps[cls], chain);
        AnomalyReport rep = extract_anomaly(s, 0);
        CHECK(rep.matched_class == static_cast<int>(cls));
        CHECK(classes_equal(rep.fingerprint, fps[cls]));
        CHECK(rep.residual < 1e-6);
        CHECK(rep.unimodularity < 1e-8);

        // site independence
        AnomalyReport rep2 = extract_anomaly(s, 2);
        CHECK(classes_equal(rep2.fingerprint, rep.fingerprint));
    }
}

TEST_CASE("anomaly of a decoupled symmetry is trivial") {
    auto g = make_cyclic(2);
    ChainSpec chain = ChainSpec::uniform(-5, 4, 2);
    Symmetry s = build_decoupled_regular(g, chain);
    AnomalyReport rep = extract_anomaly(s, 0);
    CHECK(rep.fingerprint.is_trivial());
    CHECK(rep.matched_class == 0);

    Symmetry one = build_onsite_representation(g, OnsiteKind::Regular, chain, 0);
    CHECK(extract_anomaly(one, 0).fingerprint.is_trivial());
}

TEST_CASE("CZ anomaly is trivial") {
    ChainSpec chain = ChainSpec::uniform(-8, 7, 2);
    Symmetry s = build_cz_symmetry(chain);
    AnomalyReport rep = extract_anomaly(s, 0);
    CHECK(rep.fingerprint.is_trivial());
    CHECK(rep.residual < 1e-8);
}

TEST_CASE("crossing operators: identity element and CZ covariance") {
    ChainSpec chain = ChainSpec::uniform(-7, 6, 2);
    Symmetry s = build_cz_symmetry(chain);
    RightRestriction r = right_restriction(s, 0);
    CrossingTable c = crossing_operators(s, r);
    // k = identity: proportional to the identity
    CHECK(phase_distance(c.at(1, 0), LocalOperator::identity(chain, c.at(1, 0).support), chain) <
          1e-9);
    // all CZ gates commute: the restriction is covariant, all Theta ~ identity
    for (int g = 0; g < 2; ++g)
        for (int k = 0; k < 2; ++k)
            CHECK(phase_distance(c.at(g, k), LocalOperator::identity(chain, c.at(g, k).support),
                                 chain) < 1e-9);
}

TEST_CASE("crossing operators of the Z_2 cocycle symmetry match the closed form") {
    auto g = make_cyclic(2);
    Cochain w = z2_nontrivial_omega();
    ChainSpec chain = ChainSpec::uniform(-6, 5, 2);
    Symmetry s = build_cocycle_symmetry(g, w, chain);
    RightRestriction r = right_restriction(s, 0);
    CrossingTable c = crossing_operators(s, r);

    // Theta_g(k) = W'(g,k) Phi(k, k^-1 g k) Phi(g, k)^* on sites {-1, 0}, with
    // W'(g,k)|x_{-1}, x_0> = [omega(k, k^-1 x_0, x_0^-1 x_{-1})
    //                         / omega(k, k^-1 g^-1 x_0, x_0^-1 g x_{-1})] |..>
    for (int gg = 0; gg < 2; ++gg)
        for (int k = 0; k < 2; ++k) {
            Mat wp = Mat::Zero(4, 4);
            for (int xm = 0; xm < 2; ++xm)
                for (int x0 = 0; x0 < 2; ++x0) {
                    double ang =
                        w.at({k, g->mul(g->inv(k), x0), g->mul(g->inv(x0), xm)}).value() -
                        w.at({k, g->mul(g->inv(k), g->mul(g->inv(gg), x0)),
                              g->mul(g->inv(x0), g->mul(gg, xm))})
                            .value();
                    wp(xm * 2 + x0, xm * 2 + x0) =
                        std::polar(1.0, 2.0 * std::numbers::pi * ang);
                }
            LocalOperator wop = LocalOperator::from_matrix(chain, Interval(-1, 0), wp);
            LocalOperator phi1 = closed_form_fusion(g, w, chain, 0, k, g->conjugate(k, gg));
            LocalOperator phi2 = closed_form_fusion(g, w, chain, 0, gg, k);
            LocalOperator expect = multiply(multiply(wop, phi1, chain), phi2.adjoint(), chain);
            CHECK(phase_distance(c.at(gg, k), expect, chain) < 1e-8);
        }
}

TEST_CASE("obstruction extraction") {
    auto g = make_cyclic(2);
    ChainSpec chain = ChainSpec::uniform(-7, 6, 2);

    // decoupled: trivial fingerprint
    Symmetry dec = build_decoupled_regular(g, chain);
    ObstructionReport drep = extract_obstruction(dec, 0);
    CHECK(drep.fingerprint.is_trivial());

    // CZ chain: trivial anomaly hence trivial obstruction
    Symmetry cz = build_cz_symmetry(chain);
    ObstructionReport czrep = extract_obstruction(cz, 0);
    CHECK(czrep.fingerprint.is_trivial());
    CHECK(czrep.residual < 1e-6);

    // nontrivial omega: obstruction class equals the inverse slant class
    Cochain w = z2_nontrivial_omega();
    Symmetry s = build_cocycle_symmetry(g, w, chain);
    ObstructionReport rep = extract_obstruction(s, 0);
    CHECK(rep.residual < 1e-6);
    ClassFingerprint slant_inv = fingerprint_neg(class_fingerprint(slant_product(w)));
    CHECK(classes_equal(rep.fingerprint, slant_inv));
    CHECK_FALSE(rep.fingerprint.is_trivial());
}

TEST_CASE("mu of a covariant restriction of the CZ symmetry") {
    ChainSpec chain = ChainSpec::uniform(-7, 6, 2);
    Symmetry s = build_cz_symmetry(chain);
    RightRestriction r = right_restriction(s, 0);
    FusionTable f = fusion_operators(r);
    KQuotient K = quotient_K(s.group);
    MuReport rep = compute_mu(s, f, K);
    CHECK(rep.trivial_class);
    CHECK(rep.residual < 1e-8);
    // g, h or k identity: mu = 1
    for (int k = 0; k < 2; ++k) {
        CHECK(std::abs(rep.raw_mu.at({k}, 0).value()) < 1e-8);
        CHECK(std::abs(rep.raw_mu.at({k}, 1).value()) < 1e-8);  // (g,h) = (0,1)
    }
    CHECK(std::abs(rep.raw_mu.at({0}, 3).value()) < 1e-8);  // k identity, (g,h)=(1,1)
}

TEST_CASE("gauge robustness: rephasing fusion operators moves omega by a coboundary") {
    auto g = make_cyclic(2);
    Cochain w = z2_nontrivial_omega();
    ChainSpec chain = ChainSpec::uniform(-6, 5, 2);
    Symmetry s = build_cocycle_symmetry(g, w, chain);
    RightRestriction r = right_restriction(s, 0);
    FusionTable f = fusion_operators(r);
    AnomalyReport base = anomaly_from_fusion(r, f);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        FusionTable fr = f;
        for (auto& [key, op] : fr.phi)
            op.mat *= std::polar(1.0, 2.0 * std::numbers::pi * ud(rng));
        AnomalyReport rep = anomaly_from_fusion(r, fr);
        CHECK(classes_equal(rep.fingerprint, base.fingerprint));
    }
}

TEST_CASE("restriction-choice robustness: unitary redefinition near the cut") {
    auto g = make_cyclic(2);
    Cochain w = z2_nontrivial_omega();
    ChainSpec chain = ChainSpec::uniform(-7, 6, 2);
    Symmetry s = build_cocycle_symmetry(g, w, chain);
    AnomalyReport base = extract_anomaly(s, 0);
    ObstructionReport base_l = extract_obstruction(s, 0);

    std::mt19937_64 rng(7);
    std::normal_distribution<double> n(0.0, 1.0);
    auto rand_u = [&](long long d) {
        Mat a(d, d);
        for (long long i = 0; i < d; ++i)
            for (long long j = 0; j < d; ++j) a(i, j) = cd(n(rng), n(rng));
        Eigen::HouseholderQR<Mat> qr(a);
        return Mat(qr.householderQ());
    };
    for (int trial = 0; trial < 3; ++trial) {
        RightRestriction r = right_restriction(s, 0);
        // compose every component with conjugation by a unitary in the defect window
        for (int ge = 0; ge < 2; ++ge) {
            Layer l;
            l.gates.emplace_back(Interval(-1, 0), rand_u(4));
            r.circuits[static_cast<size_t>(ge)].add_layer(std::move(l));
        }
        FusionTable f = fusion_operators(r);
        AnomalyReport rep = anomaly_from_fusion(r, f);
        CHECK(classes_equal(rep.fingerprint, base.fingerprint));

        CrossingTable c = crossing_operators(s, r);
        ObstructionReport orep = obstruction_from_crossing(s, c);
        CHECK(classes_equal(orep.fingerprint, base_l.fingerprint));
    }
}

TEST_CASE("stacking adds fingerprints") {
    auto g = make_cyclic(2);
    ModuleSpec mod{ModuleKind::TrivialU1, g};
    ChainSpec chain = ChainSpec::uniform(-5, 4, 2);
    Cochain w = z2_nontrivial_omega();
    Symmetry s1 = build_cocycle_symmetry(g, w, chain);
    Symmetry s2 = build_cocycle_symmetry(g, w, chain);
    Symmetry st = stack(s1, s2);
    AnomalyReport rep = extract_anomaly(st, 0);
    // nontrivial (x) nontrivial = trivial for Z_2
    CHECK(rep.fingerprint.is_trivial());

    Symmetry mixed = stack(s1, build_trivial_symmetry(g, chain));
    AnomalyReport rep2 = extract_anomaly(mixed, 0);
    AnomalyReport base = extract_anomaly(s1, 0);
    CHECK(classes_equal(rep2.fingerprint, base.fingerprint));
}

TEST_CASE("left restrictions yield the inverse fingerprint") {
    auto g = make_cyclic(2);
    Cochain w = z2_nontrivial_omega();
    ChainSpec chain = ChainSpec::uniform(-6, 5, 2);
    Symmetry s = build_cocycle_symmetry(g, w, chain);

    AnomalyReport right = extract_anomaly(s, 0);
    RightRestriction lr = left_restriction(s, 0);
    FusionTable lf = fusion_operators(lr);
    AnomalyReport left = anomaly_from_fusion(lr, lf);
    CHECK(classes_equal(left.fingerprint, fingerprint_neg(right.fingerprint)));
}
