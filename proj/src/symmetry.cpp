#include "qsym/symmetry.hpp"

#include <cmath>
#include <numbers>

namespace qsym {

namespace {

cd phase_of(const PhaseAngle& a) {
    double ang = 2.0 * std::numbers::pi * a.value();
    return cd(std::cos(ang), std::sin(ang));
}

// Expand a gate given on the `which` factor slot of each site (0 = the slot
// covered by dims_sub) to the full site dimensions of `chain`.
// Used when stacking: a gate acting on chosen per-site factor blocks becomes
// a gate on the full sites, identity on the remaining factors.
Mat expand_to_factors(const Mat& g, const Interval& supp, const ChainSpec& chain,
                      const std::vector<int>& sub_dims, const std::vector<int>& sub_offset) {
    // site s in supp: full dim D_s factorizes as pre_s x sub_s x post_s
    int ns = supp.size();
    std::vector<long long> pre(ns), sub(ns), post(ns), full(ns);
    for (int i = 0; i < ns; ++i) {
        int s = supp.lo + i;
        const std::vector<int>& f = chain.site_factors(s);
        long long p = 1, q = 1, r = 1;
        for (int k = 0; k < sub_offset[i]; ++k) p *= f[k];
        q = sub_dims[i];
        long long all = 1;
        for (int v : f) all *= v;
        r = all / (p * q);
        pre[i] = p;
        sub[i] = q;
        post[i] = r;
        full[i] = all;
    }
    long long dfull = 1, dsub = 1;
    for (int i = 0; i < ns; ++i) { dfull *= full[i]; dsub *= sub[i]; }
    // decompose a full index into per-site (pre, sub, post) digits
    auto split = [&](long long idx, std::vector<long long>& ps, std::vector<long long>& ss,
                     std::vector<long long>& qs) {
        for (int i = ns - 1; i >= 0; --i) {
            long long site_idx = idx % full[i];
            idx /= full[i];
            qs[i] = site_idx % post[i];
            site_idx /= post[i];
            ss[i] = site_idx % sub[i];
            ps[i] = site_idx / sub[i];
        }
    };
    auto sub_flat = [&](const std::vector<long long>& ss) {
        long long v = 0;
        for (int i = 0; i < ns; ++i) v = v * sub[i] + ss[i];
        return v;
    };
    Mat out = Mat::Zero(dfull, dfull);
    std::vector<long long> ps(ns), ss(ns), qs(ns), ss2(ns);
    for (long long col = 0; col < dfull; ++col) {
        split(col, ps, ss, qs);
        long long sj = sub_flat(ss);
        for (long long si = 0; si < dsub; ++si) {
            cd v = g(si, sj);
            if (v == cd(0.0, 0.0)) continue;
            long long t = si;
            for (int i = ns - 1; i >= 0; --i) { ss2[i] = t % sub[i]; t /= sub[i]; }
            long long row = 0;
            for (int i = 0; i < ns; ++i)
                row = row * full[i] + (ps[i] * sub[i] + ss2[i]) * post[i] + qs[i];
            out(row, col) = v;
        }
    }
    return out;
}

}  // namespace

Mat left_translation_matrix(const FiniteGroup& g, int elem) {
    Mat m = Mat::Zero(g.order, g.order);
    for (int h = 0; h < g.order; ++h) m(g.mul(elem, h), h) = 1.0;
    return m;
}

Mat adjoint_action_matrix(const FiniteGroup& g, int elem) {
    Mat m = Mat::Zero(g.order, g.order);
    for (int h = 0; h < g.order; ++h) m(g.mul(g.mul(elem, h), g.inv(elem)), h) = 1.0;
    return m;
}

bool verify_symmetry(const Symmetry& s, int probe_sites, double tol, std::string* fail_msg) {
    const FiniteGroup& G = *s.group;
    int center = (s.chain.lo + s.chain.hi) / 2;
    Interval probe(center, center + probe_sites - 1);
    if (probe.fatten(2 * s.range).lo < s.chain.lo || probe.fatten(2 * s.range).hi > s.chain.hi)
        throw PreconditionError("verify_symmetry: chain margin around probe window too small");
    auto basis = matrix_unit_basis(s.chain, probe);
    // identity component acts as identity
    for (const auto& b : basis) {
        LocalOperator r = s.apply(G.identity, b);
        if (phase_distance(r, b, s.chain) > tol) {
            if (fail_msg) *fail_msg = "identity circuit moves a probe";
            return false;
        }
    }
    for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h) {
            int gh = G.mul(g, h);
            for (size_t k = 0; k < basis.size(); ++k) {
                LocalOperator lhs = s.apply(g, s.apply(h, basis[k]));
                LocalOperator rhs = s.apply(gh, basis[k]);
                Interval u = lhs.support.unite(rhs.support);
                double dist = (embed(lhs, u, s.chain).mat - embed(rhs, u, s.chain).mat).norm();
                if (dist > tol) {
                    if (fail_msg)
                        *fail_msg = "homomorphism violated at g=" + std::to_string(g) +
                                    " h=" + std::to_string(h) + " probe=" + std::to_string(k) +
                                    " dist=" + std::to_string(dist);
                    return false;
                }
            }
        }
    return true;
}

Symmetry build_cocycle_symmetry(const GroupPtr& g, const Cochain& omega, const ChainSpec& chain) {
    const FiniteGroup& G = *g;
    if (omega.degree != 3 || omega.module.kind != ModuleKind::TrivialU1)
        throw PreconditionError("build_cocycle_symmetry: omega must be a 3-cochain over trivial U(1)");
    if (!is_cocycle(omega))
        throw PreconditionError("build_cocycle_symmetry: omega is not a cocycle");
    for (int s = chain.lo; s <= chain.hi; ++s)
        if (chain.dim(s) != G.order)
            throw PreconditionError("build_cocycle_symmetry: chain dims must equal |G|");
    // normalization: value 1 whenever an argument is the identity
    for (int a = 0; a < G.order; ++a)
        for (int b = 0; b < G.order; ++b) {
            if (omega.at({G.identity, a, b}).int_distance() != 0 ||
                omega.at({a, G.identity, b}).int_distance() != 0 ||
                omega.at({a, b, G.identity}).int_distance() != 0)
                throw PreconditionError("build_cocycle_symmetry: omega is not normalized");
        }

    Symmetry s;
    s.group = g;
    s.chain = chain;
    s.range = 1;
    s.circuits.resize(G.order);
    for (int ge = 0; ge < G.order; ++ge) {
        auto bond_gate = [&](int j) {
            Mat v = Mat::Zero(G.order * G.order, G.order * G.order);
            for (int gj = 0; gj < G.order; ++gj)
                for (int gj1 = 0; gj1 < G.order; ++gj1) {
                    int idx = gj * G.order + gj1;  // site j major
                    v(idx, idx) = phase_of(omega.at({ge, gj1, G.mul(G.inv(gj1), gj)}));
                }
            return Gate(Interval(j, j + 1), std::move(v));
        };
        Layer even, odd, onsite;
        for (int j = chain.lo; j + 1 <= chain.hi; ++j) {
            if (((j % 2) + 2) % 2 == 0)
                even.gates.push_back(bond_gate(j));
            else
                odd.gates.push_back(bond_gate(j));
        }
        for (int j = chain.lo; j <= chain.hi; ++j)
            onsite.gates.emplace_back(Interval(j, j), left_translation_matrix(G, ge));
        Circuit c;
        c.declared_range = 1;
        c.add_layer(std::move(even));
        c.add_layer(std::move(odd));
        c.add_layer(std::move(onsite));
        s.circuits[ge] = std::move(c);
    }
    return s;
}

Symmetry build_cz_symmetry(const ChainSpec& chain) {
    for (int s = chain.lo; s <= chain.hi; ++s)
        if (chain.dim(s) != 2) throw PreconditionError("build_cz_symmetry: chain dims must all be 2");
    Mat cz = Mat::Identity(4, 4);
    cz(3, 3) = -1.0;
    Symmetry s;
    s.group = make_cyclic(2);
    s.chain = chain;
    s.range = 1;
    s.circuits.resize(2);
    s.circuits[0].declared_range = 1;
    Layer even, odd;
    for (int j = chain.lo; j + 1 <= chain.hi; ++j) {
        if (((j % 2) + 2) % 2 == 0)
            even.gates.emplace_back(Interval(j, j + 1), cz);
        else
            odd.gates.emplace_back(Interval(j, j + 1), cz);
    }
    Circuit c;
    c.declared_range = 1;
    c.add_layer(std::move(even));
    c.add_layer(std::move(odd));
    s.circuits[1] = std::move(c);
    return s;
}

Symmetry build_trivial_symmetry(const GroupPtr& g, const ChainSpec& chain) {
    Symmetry s;
    s.group = g;
    s.chain = chain;
    s.range = 0;
    s.circuits.resize(g->order);
    return s;
}

Symmetry build_onsite_representation(const GroupPtr& g, OnsiteKind kind, const ChainSpec& chain,
                                     int site, const Cochain* c) {
    const FiniteGroup& G = *g;
    if (chain.dim(site) != G.order)
        throw PreconditionError("build_onsite_representation: site dim must equal |G|");
    Symmetry s;
    s.group = g;
    s.chain = chain;
    s.range = 0;
    s.circuits.resize(G.order);
    for (int ge = 0; ge < G.order; ++ge) {
        Mat u;
        switch (kind) {
            case OnsiteKind::Regular: u = left_translation_matrix(G, ge); break;
            case OnsiteKind::Adjoint: u = adjoint_action_matrix(G, ge); break;
            case OnsiteKind::Diagonal: {
                if (!c) throw PreconditionError("build_onsite_representation: diagonal needs phases");
                u = Mat::Zero(G.order, G.order);
                for (int l = 0; l < G.order; ++l) u(l, l) = phase_of(c->at({l}, ge));
                break;
            }
        }
        if (ge == G.identity && kind != OnsiteKind::Diagonal) {
            s.circuits[ge] = Circuit{};
            continue;
        }
        Layer l;
        l.gates.emplace_back(Interval(site, site), std::move(u));
        Circuit cc;
        cc.declared_range = 0;
        cc.add_layer(std::move(l));
        s.circuits[ge] = std::move(cc);
    }
    return s;
}

Symmetry build_decoupled_regular(const GroupPtr& g, const ChainSpec& chain) {
    const FiniteGroup& G = *g;
    Symmetry s;
    s.group = g;
    s.chain = chain;
    s.range = 0;
    s.circuits.resize(G.order);
    for (int ge = 0; ge < G.order; ++ge) {
        if (ge == G.identity) continue;
        Layer l;
        for (int j = chain.lo; j <= chain.hi; ++j) {
            if (chain.dim(j) != G.order)
                throw PreconditionError("build_decoupled_regular: chain dims must equal |G|");
            l.gates.emplace_back(Interval(j, j), left_translation_matrix(G, ge));
        }
        Circuit c;
        c.declared_range = 0;
        c.add_layer(std::move(l));
        s.circuits[ge] = std::move(c);
    }
    return s;
}

Symmetry stack(const Symmetry& a, const Symmetry& b) {
    if (a.group->order != b.group->order || a.group->mul_table != b.group->mul_table)
        throw PreconditionError("stack: group mismatch");
    if (!(a.chain.sites() == b.chain.sites())) throw PreconditionError("stack: site range mismatch");
    ChainSpec chain;
    chain.lo = a.chain.lo;
    chain.hi = a.chain.hi;
    chain.dim_cap = std::max(a.chain.dim_cap, b.chain.dim_cap);
    for (int s = chain.lo; s <= chain.hi; ++s) {
        std::vector<int> f = a.chain.site_factors(s);
        const std::vector<int>& fb = b.chain.site_factors(s);
        f.insert(f.end(), fb.begin(), fb.end());
        chain.factors.push_back(std::move(f));
    }
    Symmetry out;
    out.group = a.group;
    out.chain = chain;
    out.range = std::max(a.range, b.range);
    out.circuits.resize(a.group->order);

    auto lift = [&](const Circuit& c, bool first_factor) {
        Circuit lc;
        lc.declared_range = c.declared_range;
        for (const Layer& l : c.layers) {
            Layer nl;
            for (const Gate& g : l.gates) {
                int ns = g.support.size();
                std::vector<int> sub_dims(ns), sub_off(ns);
                for (int i = 0; i < ns; ++i) {
                    int site = g.support.lo + i;
                    const Symmetry& src = first_factor ? a : b;
                    sub_dims[i] = src.chain.dim(site);
                    sub_off[i] = first_factor ? 0 : static_cast<int>(a.chain.site_factors(site).size());
                }
                nl.gates.emplace_back(g.support,
                                      expand_to_factors(g.u, g.support, chain, sub_dims, sub_off));
            }
            lc.layers.push_back(std::move(nl));
        }
        return lc;
    };

    for (int g = 0; g < a.group->order; ++g)
        out.circuits[g] = lift(a.circuit(g), true).then(lift(b.circuit(g), false));
    return out;
}

Symmetry conjugate_by_fdqc(const Symmetry& s, const Circuit& gamma) {
    Symmetry out = s;
    out.verified = false;
    int gr = 0;
    for (const Layer& l : gamma.layers)
        for (const Gate& g : l.gates) gr = std::max(gr, g.support.size() - 1);
    out.range = s.range + 2 * gr * gamma.depth();
    // gamma^-1 o alpha o gamma conjugates the operator by gamma first
    for (int g = 0; g < s.group->order; ++g)
        out.circuits[g] = gamma.then(s.circuit(g)).then(gamma.inverse());
    return out;
}

RightRestriction right_restriction(const Symmetry& s, int site) {
    RightRestriction r;
    r.group = s.group;
    r.chain = s.chain;
    r.site = site;
    int depth = 0;
    for (const Circuit& c : s.circuits) depth = std::max(depth, c.depth());
    r.defect_size = 2 * s.range * std::max(1, depth);
    for (const Circuit& c : s.circuits)
        r.circuits.push_back(c.restrict_gates(Interval(site, s.chain.hi)));
    return r;
}

Gate lift_gate(const Gate& g, const ChainSpec& src, const ChainSpec& dst) {
    int ns = g.support.size();
    std::vector<int> sub_dims(ns), sub_off(ns, 0);
    bool same = true;
    for (int i = 0; i < ns; ++i) {
        int site = g.support.lo + i;
        sub_dims[i] = src.dim(site);
        if (dst.dim(site) != sub_dims[i]) same = false;
    }
    if (same) return g;
    return Gate(g.support, expand_to_factors(g.u, g.support, dst, sub_dims, sub_off));
}

Circuit lift_circuit(const Circuit& c, const ChainSpec& src, const ChainSpec& dst) {
    Circuit out;
    out.declared_range = c.declared_range;
    for (const Layer& l : c.layers) {
        Layer nl;
        for (const Gate& g : l.gates) nl.gates.push_back(lift_gate(g, src, dst));
        out.layers.push_back(std::move(nl));
    }
    return out;
}

LocalOperator lift_operator(const LocalOperator& op, const ChainSpec& src, const ChainSpec& dst) {
    if (op.is_scalar()) return op;
    Gate g(op.support, op.mat);
    Gate lg = lift_gate(g, src, dst);
    LocalOperator out = LocalOperator::from_matrix(dst, op.support, std::move(lg.u));
    out.unitary_flag = op.unitary_flag;
    return out;
}

Gate ancilla_factor_gate(const ChainSpec& chain, int site, int factor_index, const Mat& u) {
    const std::vector<int>& f = chain.site_factors(site);
    long long pre = 1, post = 1;
    for (int k = 0; k < factor_index; ++k) pre *= f[k];
    for (int k = factor_index + 1; k < static_cast<int>(f.size()); ++k) post *= f[k];
    long long df = f[factor_index];
    Mat m = Mat::Zero(pre * df * post, pre * df * post);
    for (long long p = 0; p < pre; ++p)
        for (long long a = 0; a < df; ++a)
            for (long long b = 0; b < df; ++b) {
                cd v = u(a, b);
                if (v == cd(0.0, 0.0)) continue;
                for (long long q = 0; q < post; ++q)
                    m((p * df + a) * post + q, (p * df + b) * post + q) = v;
            }
    return Gate(Interval(site, site), std::move(m));
}

Symmetry extend_with_ancilla(const Symmetry& s, int site, int d, const std::vector<Mat>& anc_action) {
    Symmetry out;
    out.group = s.group;
    out.chain = s.chain.with_ancilla(site, d);
    out.range = s.range;
    out.verified = false;
    int factor_index = static_cast<int>(out.chain.site_factors(site).size()) - 1;
    for (int g = 0; g < s.group->order; ++g) {
        Circuit c = lift_circuit(s.circuit(g), s.chain, out.chain);
        if (!anc_action.empty()) {
            Layer l;
            l.gates.push_back(ancilla_factor_gate(out.chain, site, factor_index, anc_action[g]));
            c.add_layer(std::move(l));
        }
        out.circuits.push_back(std::move(c));
    }
    return out;
}

RightRestriction left_restriction(const Symmetry& s, int site) {
    RightRestriction r;
    r.group = s.group;
    r.chain = s.chain;
    r.site = site;
    r.left = true;
    int depth = 0;
    for (const Circuit& c : s.circuits) depth = std::max(depth, c.depth());
    r.defect_size = 2 * s.range * std::max(1, depth);
    for (const Circuit& c : s.circuits)
        r.circuits.push_back(c.restrict_gates(Interval(s.chain.lo, site - 1)));
    return r;
}

}  // namespace qsym
