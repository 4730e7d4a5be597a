#include "qsym/engine.hpp"

#include <cmath>
#include <numbers>

namespace qsym {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angle_of(cd z) {
    double a = std::arg(z) / kTwoPi;
    return a - std::floor(a);
}

Interval fusion_hint(const RightRestriction& r, int range) {
    int R = std::max(1, range);
    if (r.left) return Interval(r.site - R - 1, r.site);
    return Interval(r.site - 1, r.site + R);
}

Interval crossing_hint(const RightRestriction& r, int range) {
    int R = std::max(1, range);
    if (r.left) return Interval(r.site - R - 1, r.site + 1);
    return Interval(r.site - 1 - R, r.site + R);
}

int circuits_range(const RightRestriction& r) {
    int range = 0;
    for (const Circuit& c : r.circuits) range = std::max(range, c.declared_range);
    return range;
}

}  // namespace

FusionTable fusion_operators(const RightRestriction& r, const EngineOptions& opt) {
    const FiniteGroup& G = *r.group;
    FusionTable table;
    table.group = r.group;
    Interval hint = fusion_hint(r, circuits_range(r));
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h) {
            Circuit inv_gh = r.circuit(G.mul(g, h)).inverse();
            std::vector<const Circuit*> comp{&inv_gh, &r.circuit(h), &r.circuit(g)};
            LocalizeDiag diag;
            table.phi[{g, h}] =
                localize_circuit_unitary(comp, hint, r.chain, opt.localize_tol, &diag, opt.dense_cap);
            if (diag.window_used.size() > table.diag.window_used.size()) table.diag = diag;
        }
    return table;
}

CrossingTable crossing_operators(const Symmetry& s, const RightRestriction& r,
                                 const EngineOptions& opt) {
    const FiniteGroup& G = *s.group;
    CrossingTable table;
    table.group = s.group;
    Interval hint = crossing_hint(r, std::max(s.range, circuits_range(r)));
    for (int g = 0; g < G.order; ++g)
        for (int k = 0; k < G.order; ++k) {
            int kgk = G.conjugate(k, g);
            Circuit inv_g = r.circuit(g).inverse();
            std::vector<const Circuit*> comp{&inv_g, &s.circuit(G.inv(k)), &r.circuit(kgk),
                                             &s.circuit(k)};
            LocalizeDiag diag;
            table.theta[{g, k}] =
                localize_circuit_unitary(comp, hint, s.chain, opt.localize_tol, &diag, opt.dense_cap);
            if (diag.window_used.size() > table.diag.window_used.size()) table.diag = diag;
        }
    return table;
}

AnomalyReport anomaly_from_fusion(const RightRestriction& r, const FusionTable& f,
                                  const EngineOptions& opt) {
    const FiniteGroup& G = *r.group;
    AnomalyReport rep;
    ModuleSpec mod{ModuleKind::TrivialU1, r.group};
    rep.raw_omega = Cochain::zero(3, mod);
    rep.window = f.diag.window_used;
    for (int a = 0; a < G.order; ++a)
        for (int b = 0; b < G.order; ++b)
            for (int c = 0; c < G.order; ++c) {
                LocalOperator T = multiply(f.at(a, b), f.at(G.mul(a, b), c), r.chain);
                LocalOperator moved = r.apply(a, f.at(b, c));
                LocalOperator S = multiply(moved, f.at(a, G.mul(b, c)), r.chain);
                cd z = normalized_overlap(S, T, r.chain);
                double uni = std::abs(std::abs(z) - 1.0);
                rep.unimodularity = std::max(rep.unimodularity, uni);
                if (uni > opt.unimod_tol)
                    throw NumericalError("extract_anomaly: non-unimodular trace ratio " +
                                         std::to_string(std::abs(z)) +
                                         " (support/window mismatch)");
                rep.raw_omega.at({a, b, c}) = PhaseAngle::make_numeric(angle_of(z), opt.unimod_tol);
            }
    rep.residual = cocycle_residual(rep.raw_omega);
    if (rep.residual > opt.unimod_tol)
        throw NumericalError("extract_anomaly: raw omega fails the cocycle test, residual " +
                             std::to_string(rep.residual));
    rep.fingerprint = class_fingerprint(rep.raw_omega, opt.unimod_tol);
    CohomologyGroup H = enumerate_classes(r.group, 3, mod);
    if (auto idx = match_class(rep.fingerprint, H)) rep.matched_class = *idx;
    return rep;
}

AnomalyReport extract_anomaly(const Symmetry& s, int site, const EngineOptions& opt) {
    RightRestriction r = right_restriction(s, site);
    FusionTable f = fusion_operators(r, opt);
    return anomaly_from_fusion(r, f, opt);
}

ObstructionReport obstruction_from_crossing(const Symmetry& s, const CrossingTable& c,
                                            const EngineOptions& opt) {
    const FiniteGroup& G = *s.group;
    ObstructionReport rep;
    ModuleSpec mod{ModuleKind::U1OfG, s.group};
    rep.raw_lambda = Cochain::zero(2, mod);
    rep.window = c.diag.window_used;
    for (int g = 0; g < G.order; ++g)
        for (int k = 0; k < G.order; ++k)
            for (int l = 0; l < G.order; ++l) {
                int kgk = G.conjugate(k, g);
                LocalOperator moved = s.apply(k, c.at(kgk, l));
                LocalOperator T = multiply(moved, c.at(g, k), s.chain);
                const LocalOperator& S = c.at(g, G.mul(k, l));
                cd z = normalized_overlap(S, T, s.chain);
                double uni = std::abs(std::abs(z) - 1.0);
                rep.unimodularity = std::max(rep.unimodularity, uni);
                if (uni > opt.unimod_tol)
                    throw NumericalError("extract_obstruction: non-unimodular trace ratio " +
                                         std::to_string(std::abs(z)));
                rep.raw_lambda.at({k, l}, g) = PhaseAngle::make_numeric(angle_of(z), opt.unimod_tol);
            }
    rep.residual = cocycle_residual(rep.raw_lambda);
    if (rep.residual > opt.unimod_tol)
        throw NumericalError("extract_obstruction: raw lambda fails the twisted cocycle test, residual " +
                             std::to_string(rep.residual));
    rep.fingerprint = class_fingerprint(rep.raw_lambda, opt.unimod_tol);
    return rep;
}

ObstructionReport extract_obstruction(const Symmetry& s, int site, const EngineOptions& opt) {
    RightRestriction r = right_restriction(s, site);
    CrossingTable c = crossing_operators(s, r, opt);
    return obstruction_from_crossing(s, c, opt);
}

MuReport compute_mu(const Symmetry& s, const FusionTable& f, const KQuotient& K,
                    const EngineOptions& opt) {
    const FiniteGroup& G = *s.group;
    MuReport rep;
    ModuleSpec mod{ModuleKind::U1OfG2, s.group};
    rep.raw_mu = Cochain::zero(1, mod);
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h)
            for (int k = 0; k < G.order; ++k) {
                LocalOperator moved = s.apply(k, f.at(G.conjugate(k, g), G.conjugate(k, h)));
                cd z = normalized_overlap(f.at(g, h), moved, s.chain);
                double uni = std::abs(std::abs(z) - 1.0);
                rep.unimodularity = std::max(rep.unimodularity, uni);
                if (uni > opt.unimod_tol)
                    throw NumericalError("compute_mu: non-unimodular trace ratio " +
                                         std::to_string(std::abs(z)) +
                                         " (is the restriction covariant?)");
                rep.raw_mu.at({k}, g * G.order + h) = PhaseAngle::make_numeric(angle_of(z), opt.unimod_tol);
            }
    rep.residual = cocycle_residual(rep.raw_mu);
    if (rep.residual > opt.unimod_tol)
        throw NumericalError("compute_mu: raw mu fails the twisted 1-cocycle test, residual " +
                             std::to_string(rep.residual));
    rep.k_class = K.classify(rep.raw_mu, opt.unimod_tol);
    rep.trivial_class = K.is_trivial_class(rep.k_class);
    return rep;
}

LocalOperator cz_product_unitary(const ChainSpec& chain, const Interval& interval) {
    chain.check_window(interval);
    long long d = chain.window_dim(interval);
    int n = interval.size();
    Mat m = Mat::Zero(d, d);
    for (long long idx = 0; idx < d; ++idx) {
        int sign = 0;
        for (int b = 0; b + 1 < n; ++b) {
            long long s1 = (idx >> (n - 1 - b)) & 1;
            long long s2 = (idx >> (n - 2 - b)) & 1;
            sign ^= static_cast<int>(s1 & s2);
        }
        m(idx, idx) = sign ? -1.0 : 1.0;
    }
    LocalOperator op = LocalOperator::from_matrix(chain, interval, std::move(m));
    op.unitary_flag = true;
    return op;
}

bool cz_partial_trace_check(int a, int b, double tol, double* deviation) {
    if (!(a > b && b >= 1)) throw PreconditionError("cz_partial_trace_check: need a > b >= 1");
    ChainSpec chain = ChainSpec::uniform(-a, a, 2);
    LocalOperator U = cz_product_unitary(chain, chain.sites());
    LocalOperator traced = partial_trace(U, Interval(1 - b, b));
    // collapsed chain: right block shifts left by the traced size 2b
    ChainSpec collapsed = ChainSpec::uniform(-a, a - 2 * b, 2);
    LocalOperator expected = cz_product_unitary(collapsed, collapsed.sites());
    double scale = std::pow(2.0, b);
    double dev = (traced.mat - scale * expected.mat).cwiseAbs().maxCoeff();
    if (deviation) *deviation = dev;
    return dev <= tol;
}

int cz_nonfactorizability_witness(int a) {
    ChainSpec chain = ChainSpec::uniform(-a, a, 2);
    LocalOperator U = cz_product_unitary(chain, chain.sites());
    return operator_schmidt_rank(U, 0, 1e-9);
}

}  // namespace qsym
