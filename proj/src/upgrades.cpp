#include "qsym/upgrades.hpp"

#include <cmath>
#include <numbers>

namespace qsym {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cd unit_phase(double angle) { return cd(std::cos(kTwoPi * angle), std::sin(kTwoPi * angle)); }

Interval probe_window(const ChainSpec& chain, int site, int probe_sites) {
    Interval p(site, site + probe_sites - 1);
    return p.clip(chain.sites());
}

double op_distance(const LocalOperator& a, const LocalOperator& b, const ChainSpec& chain) {
    Interval u = a.support.unite(b.support);
    return (embed(a, u, chain).mat - embed(b, u, chain).mat).cwiseAbs().maxCoeff();
}

// Rephase a fusion/crossing table entrywise by exp(2 pi i angle).
void rephase(LocalOperator& op, double angle) { op.mat *= unit_phase(angle); }

}  // namespace

ChainSpec without_factor(const ChainSpec& chain, int site, int factor_index) {
    ChainSpec out = chain;
    auto& f = out.factors[static_cast<size_t>(site - chain.lo)];
    f.erase(f.begin() + factor_index);
    return out;
}

LocalOperator controlled_ancilla_unitary(const ChainSpec& chain, const Interval& window,
                                         int anc_site, int anc_factor,
                                         const std::vector<LocalOperator>& blocks,
                                         const std::vector<int>& pi) {
    long long d = chain.window_dim(window);
    const std::vector<int>& f = chain.site_factors(anc_site);
    long long df = f[anc_factor];
    long long pre = 1, post = 1;
    for (int k = 0; k < anc_factor; ++k) pre *= f[k];
    for (int k = anc_factor + 1; k < static_cast<int>(f.size()); ++k) post *= f[k];
    long long right = 1;  // dimension of window sites right of anc_site
    for (int s = anc_site + 1; s <= window.hi; ++s) right *= chain.dim(s);
    long long low = post * right;           // digits below the ancilla digit
    long long dx = d / df;                  // reduced index space
    // full index i = ((upper * df) + a) * low + lower; reduced x = upper * low + lower
    auto split = [&](long long i, long long& x, long long& a) {
        long long lower = i % low;
        long long rest = i / low;
        a = rest % df;
        x = (rest / df) * low + lower;
    };
    auto fuse = [&](long long x, long long a) {
        long long lower = x % low;
        long long upper = x / low;
        return (upper * df + a) * low + lower;
    };
    Mat m = Mat::Zero(d, d);
    for (long long i_in = 0; i_in < d; ++i_in) {
        long long x_in, a_in;
        split(i_in, x_in, a_in);
        const Mat& B = blocks[static_cast<size_t>(a_in)].mat;
        long long a_out = pi[static_cast<size_t>(a_in)];
        for (long long x_out = 0; x_out < dx; ++x_out) {
            cd v = B(x_out, x_in);
            if (v == cd(0.0, 0.0)) continue;
            m(fuse(x_out, a_out), i_in) = v;
        }
    }
    LocalOperator out = LocalOperator::from_matrix(chain, window, std::move(m));
    out.unitary_flag = true;
    return out;
}

double restriction_hom_residual(const RightRestriction& r, int probe_sites) {
    const FiniteGroup& G = *r.group;
    Interval probe = probe_window(r.chain, r.site, probe_sites);
    auto basis = matrix_unit_basis(r.chain, probe);
    double worst = 0;
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h) {
            int gh = G.mul(g, h);
            for (const auto& b : basis) {
                LocalOperator lhs = r.apply(g, r.apply(h, b));
                LocalOperator rhs = r.apply(gh, b);
                worst = std::max(worst, op_distance(lhs, rhs, r.chain));
            }
        }
    return worst;
}

double restriction_covariance_residual(const Symmetry& ext, const RightRestriction& r,
                                       int probe_sites) {
    const FiniteGroup& G = *ext.group;
    Interval probe = probe_window(ext.chain, r.site, probe_sites);
    auto basis = matrix_unit_basis(ext.chain, probe);
    double worst = 0;
    for (int g = 0; g < G.order; ++g)
        for (int k = 0; k < G.order; ++k) {
            int kgk = G.conjugate(k, g);
            for (const auto& b : basis) {
                LocalOperator lhs = ext.apply(k, r.apply(kgk, ext.apply(G.inv(k), b)));
                LocalOperator rhs = r.apply(g, b);
                worst = std::max(worst, op_distance(lhs, rhs, ext.chain));
            }
        }
    return worst;
}

namespace {

// Shared tail of the hom upgrades: build V(g) = sum_k Phi(g,k) (x) |k><gk|,
// return the restriction beta(g) = Ad[V(g)^*] o lifted(base restriction).
RightRestriction hom_restriction_from_fusion(const Symmetry& extended, const ChainSpec& base_chain,
                                             const RightRestriction& base,
                                             const FusionTable& corrected, int site,
                                             int anc_factor) {
    const FiniteGroup& G = *extended.group;
    // common window: union of all fusion supports plus the ancilla site
    Interval win = Interval(site, site);
    for (const auto& [key, op] : corrected.phi) win = win.unite(op.support);
    ChainSpec reduced = without_factor(extended.chain, site, anc_factor);
    RightRestriction out;
    out.group = extended.group;
    out.chain = extended.chain;
    out.site = site;
    out.defect_size = base.defect_size + std::max(1, win.size() - 1);
    for (int g = 0; g < G.order; ++g) {
        std::vector<LocalOperator> blocks;
        std::vector<int> pi(G.order);
        for (int k = 0; k < G.order; ++k) {
            // column label a = g k carries block Phi(g, k) and maps to k
            int a = G.mul(g, k);
            pi[a] = k;
        }
        blocks.resize(G.order);
        for (int a = 0; a < G.order; ++a) {
            int k = pi[a];
            blocks[a] = embed(lift_operator(corrected.at(g, k), base_chain, reduced), win, reduced);
        }
        LocalOperator V = controlled_ancilla_unitary(extended.chain, win, site, anc_factor, blocks, pi);
        Circuit c = lift_circuit(base.circuit(g), base_chain, extended.chain);
        Layer l;
        l.gates.emplace_back(win, Mat(V.mat.adjoint()));
        c.add_layer(std::move(l));
        out.circuits.push_back(std::move(c));
    }
    return out;
}

}  // namespace

UpgradeResult upgrade_to_group_hom(const Symmetry& s, int site, const EngineOptions& opt) {
    RightRestriction r = right_restriction(s, site);
    FusionTable f = fusion_operators(r, opt);
    AnomalyReport rep = anomaly_from_fusion(r, f, opt);
    if (!rep.fingerprint.is_trivial())
        throw PreconditionError("upgrade_to_group_hom: nontrivial anomaly");

    // choose phases with delta(xi) = raw omega, then divide them out
    IMat D2 = coboundary_matrix(s.group, 2, rep.raw_omega.module);
    Mod1Solve sol = solve_mod1(D2, rep.raw_omega.angles(), std::max(opt.unimod_tol, 1e-6));
    if (!sol.ok)
        throw NumericalError("upgrade_to_group_hom: phase-solve residual above tolerance");
    const FiniteGroup& G = *s.group;
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h)
            rephase(f.at(g, h), sol.xi[static_cast<size_t>(tuple_index(G, {g, h}))]);

    UpgradeResult out;
    out.phase_solve_residual = sol.residual;
    out.extended = extend_with_ancilla(s, site, G.order);
    int anc_factor = static_cast<int>(out.extended.chain.site_factors(site).size()) - 1;
    out.restriction = hom_restriction_from_fusion(out.extended, s.chain, r, f, site, anc_factor);
    out.hom_residual = restriction_hom_residual(out.restriction);
    return out;
}

UpgradeResult upgrade_to_covariant(const Symmetry& s, int site, const EngineOptions& opt) {
    RightRestriction r = right_restriction(s, site);
    CrossingTable c = crossing_operators(s, r, opt);
    ObstructionReport rep = obstruction_from_crossing(s, c, opt);
    if (!rep.fingerprint.is_trivial())
        throw PreconditionError("upgrade_to_covariant: nontrivial obstruction");

    // epsilon with delta(epsilon) = lambda^-1, then Theta <- epsilon Theta
    IMat D1 = coboundary_matrix(s.group, 1, rep.raw_lambda.module);
    std::vector<double> target = rep.raw_lambda.angles();
    for (double& t : target) t = -t;
    Mod1Solve sol = solve_mod1(D1, target, std::max(opt.unimod_tol, 1e-6));
    if (!sol.ok) throw NumericalError("upgrade_to_covariant: phase-solve residual above tolerance");
    const FiniteGroup& G = *s.group;
    for (int g = 0; g < G.order; ++g)
        for (int k = 0; k < G.order; ++k)
            rephase(c.at(g, k), sol.xi[static_cast<size_t>(tuple_index(G, {k})) * G.order + g]);

    UpgradeResult out;
    out.phase_solve_residual = sol.residual;
    std::vector<Mat> reg(G.order);
    for (int g = 0; g < G.order; ++g) reg[g] = left_translation_matrix(G, g);
    out.extended = extend_with_ancilla(s, site, G.order, reg);
    int anc_factor = static_cast<int>(out.extended.chain.site_factors(site).size()) - 1;
    ChainSpec reduced = without_factor(out.extended.chain, site, anc_factor);

    Interval win = Interval(site, site);
    for (const auto& [key, op] : c.theta) win = win.unite(op.support);
    RightRestriction beta;
    beta.group = s.group;
    beta.chain = out.extended.chain;
    beta.site = site;
    beta.defect_size = r.defect_size + std::max(1, win.size() - 1);
    std::vector<int> ident(G.order);
    for (int k = 0; k < G.order; ++k) ident[k] = k;
    for (int g = 0; g < G.order; ++g) {
        std::vector<LocalOperator> blocks(G.order);
        for (int k = 0; k < G.order; ++k)
            blocks[k] = embed(lift_operator(c.at(g, k), s.chain, reduced), win, reduced);
        LocalOperator V =
            controlled_ancilla_unitary(out.extended.chain, win, site, anc_factor, blocks, ident);
        Circuit circ = lift_circuit(r.circuit(g), s.chain, out.extended.chain);
        Layer l;
        l.gates.emplace_back(win, V.mat);
        circ.add_layer(std::move(l));
        beta.circuits.push_back(std::move(circ));
    }
    out.restriction = std::move(beta);
    out.covariance_residual = restriction_covariance_residual(out.extended, out.restriction);
    return out;
}

UpgradeResult upgrade_to_covariant_hom(const Symmetry& s, int site, const EngineOptions& opt) {
    const FiniteGroup& G = *s.group;
    {
        AnomalyReport a = extract_anomaly(s, site, opt);
        if (!a.fingerprint.is_trivial())
            throw PreconditionError("upgrade_to_covariant_hom: nontrivial anomaly");
    }
    // step 1: covariant restriction on s (x) rho_reg
    UpgradeResult cov = upgrade_to_covariant(s, site, opt);
    const Symmetry& a1 = cov.extended;

    // step 2: make the fusion operators invariant: mu = delta(nu) * iota(c)
    FusionTable f1 = fusion_operators(cov.restriction, opt);
    KQuotient K = quotient_K(s.group);
    MuReport mu = compute_mu(a1, f1, K, opt);
    if (!mu.trivial_class)
        throw PreconditionError("upgrade_to_covariant_hom: mu class nontrivial in the quotient");

    ModuleSpec mod2{ModuleKind::U1OfG2, s.group};
    ModuleSpec mod1{ModuleKind::U1OfG, s.group};
    IMat D0 = coboundary_matrix(s.group, 0, mod2);
    IMat D1g = coboundary_matrix(s.group, 1, mod1);
    int Nc = static_cast<int>(tuple_count(G, 1)) * G.order;
    IMat Liota(D0.rows, Nc);
    for (int k = 0; k < G.order; ++k)
        for (int gg = 0; gg < G.order; ++gg)
            for (int h = 0; h < G.order; ++h) {
                int row = k * G.order * G.order + gg * G.order + h;
                Liota.at(row, k * G.order + gg) += 1;
                Liota.at(row, k * G.order + h) += 1;
                Liota.at(row, k * G.order + G.mul(gg, h)) -= 1;
            }
    IMat A = D0.hcat(Liota).vcat(IMat(D1g.rows, D0.cols).hcat(D1g));
    std::vector<double> target = mu.raw_mu.angles();
    target.resize(static_cast<size_t>(A.rows), 0.0);
    Mod1Solve sol = solve_mod1(A, target, std::max(opt.unimod_tol, 1e-6));
    if (!sol.ok)
        throw NumericalError("upgrade_to_covariant_hom: mu decomposition residual above tolerance");
    // Phi <- nu^-1 Phi makes mu = iota(c)
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h)
            rephase(f1.at(g, h), -sol.xi[static_cast<size_t>(g) * G.order + h]);
    Cochain c_phase = Cochain::zero(1, mod1);
    for (int k = 0; k < G.order; ++k)
        for (int gg = 0; gg < G.order; ++gg)
            c_phase.at({k}, gg) = PhaseAngle::make_numeric(
                sol.xi[static_cast<size_t>(D0.cols) + static_cast<size_t>(k) * G.order + gg], 1e-9);

    // step 3: second regular ancilla carrying U(g) = sum_l c_g(l) |l><l|
    std::vector<Mat> reg(G.order);
    for (int g = 0; g < G.order; ++g) reg[g] = left_translation_matrix(G, g);
    Symmetry a2 = extend_with_ancilla(a1, site, G.order, reg);
    int anc2 = static_cast<int>(a2.chain.site_factors(site).size()) - 1;
    RightRestriction r2;
    r2.group = s.group;
    r2.chain = a2.chain;
    r2.site = site;
    r2.defect_size = cov.restriction.defect_size;
    for (int g = 0; g < G.order; ++g) {
        Circuit c = lift_circuit(cov.restriction.circuit(g), a1.chain, a2.chain);
        Mat ug = Mat::Zero(G.order, G.order);
        for (int l = 0; l < G.order; ++l) ug(l, l) = unit_phase(c_phase.at({l}, g).value());
        Layer lay;
        lay.gates.push_back(ancilla_factor_gate(a2.chain, site, anc2, ug));
        c.add_layer(std::move(lay));
        r2.circuits.push_back(std::move(c));
    }
    // fusion operators of r2: Phi''(g,h) = Phi(g,h) (x) U(g) U(h) U(gh)^*
    FusionTable f2;
    f2.group = s.group;
    f2.diag = f1.diag;
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h) {
            LocalOperator phi = lift_operator(f1.at(g, h), a1.chain, a2.chain);
            int gh = G.mul(g, h);
            Mat u = Mat::Zero(G.order, G.order);
            for (int l = 0; l < G.order; ++l)
                u(l, l) = unit_phase(c_phase.at({l}, g).value() + c_phase.at({l}, h).value() -
                                     c_phase.at({l}, gh).value());
            Gate ug = ancilla_factor_gate(a2.chain, site, anc2, u);
            LocalOperator uop = LocalOperator::from_matrix(a2.chain, Interval(site, site), ug.u);
            f2.phi[{g, h}] = multiply(phi, uop, a2.chain);
        }

    // step 4: divide out the residual 3-cocycle with a conjugation-invariant
    // phase choice so invariance survives
    AnomalyReport rep2 = anomaly_from_fusion(r2, f2, opt);
    if (!rep2.fingerprint.is_trivial())
        throw PreconditionError("upgrade_to_covariant_hom: residual anomaly nontrivial");
    IMat D2 = coboundary_matrix(s.group, 2, rep2.raw_omega.module);
    IMat E = orbit_expansion_matrix(s.group, 2);
    Mod1Solve hsol = solve_mod1(D2.mul(E), rep2.raw_omega.angles(), std::max(opt.unimod_tol, 1e-6));
    if (!hsol.ok)
        throw NumericalError(
            "upgrade_to_covariant_hom: no conjugation-invariant phase fix at this tolerance");
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h) {
            double xi = 0;
            int t = tuple_index(G, {g, h});
            for (int o = 0; o < E.cols; ++o)
                if (E.at(t, o) != 0) xi = hsol.xi[static_cast<size_t>(o)];
            rephase(f2.at(g, h), xi);
        }

    // step 5: adjoint ancilla and V(g) = sum_l Phi''(g, l) (x) |l><gl|
    std::vector<Mat> adj(G.order);
    for (int g = 0; g < G.order; ++g) adj[g] = adjoint_action_matrix(G, g);
    UpgradeResult out;
    out.phase_solve_residual = std::max({cov.phase_solve_residual, sol.residual, hsol.residual});
    out.extended = extend_with_ancilla(a2, site, G.order, adj);
    int anc3 = static_cast<int>(out.extended.chain.site_factors(site).size()) - 1;
    out.restriction = hom_restriction_from_fusion(out.extended, a2.chain, r2, f2, site, anc3);
    out.hom_residual = restriction_hom_residual(out.restriction);
    out.covariance_residual = restriction_covariance_residual(out.extended, out.restriction);
    return out;
}

}  // namespace qsym
