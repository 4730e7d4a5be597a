#include "qsym/circuit.hpp"

namespace qsym {

bool Circuit::is_identity() const {
    for (const Layer& l : layers)
        if (!l.gates.empty()) return false;
    return true;
}

void Circuit::add_layer(Layer l) {
    for (size_t i = 0; i < l.gates.size(); ++i)
        for (size_t j = i + 1; j < l.gates.size(); ++j)
            if (l.gates[i].support.intersects(l.gates[j].support))
                throw PreconditionError("Layer: gates must have pairwise disjoint supports");
    layers.push_back(std::move(l));
}

Circuit Circuit::inverse() const {
    Circuit inv;
    inv.declared_range = declared_range;
    for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
        Layer l;
        for (const Gate& g : it->gates) l.gates.emplace_back(g.support, Mat(g.u.adjoint()));
        inv.layers.push_back(std::move(l));
    }
    return inv;
}

Circuit Circuit::then(const Circuit& next) const {
    Circuit out = *this;
    out.declared_range += next.declared_range;
    for (const Layer& l : next.layers) out.layers.push_back(l);
    return out;
}

Circuit Circuit::restrict_gates(const Interval& keep) const {
    Circuit out;
    out.declared_range = declared_range;
    for (const Layer& l : layers) {
        Layer kept;
        for (const Gate& g : l.gates)
            if (keep.contains(g.support)) kept.gates.push_back(g);
        out.layers.push_back(std::move(kept));
    }
    return out;
}

Interval Circuit::gate_span() const {
    Interval span = Interval::empty();
    for (const Layer& l : layers)
        for (const Gate& g : l.gates) span = span.unite(g.support);
    return span;
}

void Circuit::validate(const ChainSpec& chain, double tol) const {
    for (const Layer& l : layers) {
        for (size_t i = 0; i < l.gates.size(); ++i) {
            const Gate& g = l.gates[i];
            if (!chain.sites().contains(g.support))
                throw PreconditionError("Circuit: gate support outside chain");
            if (chain.window_dim(g.support) != g.u.rows())
                throw PreconditionError("Circuit: gate dimension inconsistent with support");
            if (g.unitarity_residual() > tol)
                throw PreconditionError("Circuit: gate is not unitary within tolerance");
            for (size_t j = i + 1; j < l.gates.size(); ++j)
                if (g.support.intersects(l.gates[j].support))
                    throw PreconditionError("Circuit: overlapping gates within a layer");
        }
    }
}

LocalOperator apply_automorphism(const Circuit& c, const LocalOperator& x, const ChainSpec& chain) {
    LocalOperator cur = x;
    for (const Layer& l : c.layers) {
        // gates within a layer are disjoint, so per-gate embedding plus a trim
        // keeps the carried support at the true operator support
        for (const Gate& g : l.gates) {
            if (!g.support.intersects(cur.support)) continue;
            Interval grown = cur.support.unite(g.support);
            chain.check_window(grown);
            cur = embed(cur, grown, chain);
            long long dl = 1, dg = 1, dr = 1;
            for (int s = grown.lo; s < g.support.lo; ++s) dl *= chain.dim(s);
            for (int s = g.support.lo; s <= g.support.hi; ++s) dg *= chain.dim(s);
            for (int s = g.support.hi + 1; s <= grown.hi; ++s) dr *= chain.dim(s);
            apply_gate_conjugate(cur.mat, g.u, dl, dg, dr);
            cur = trim_identity_boundary(cur);
        }
    }
    return cur;
}

long long WindowUnitary::dim() const {
    long long d = 1;
    for (int v : dims) d *= v;
    return d;
}

WindowUnitary window_product(const std::vector<const Circuit*>& circuits, const Interval& window,
                             const ChainSpec& chain, long long dense_cap) {
    chain.check_window(window);
    WindowUnitary out;
    out.window = window;
    out.dims = chain.window_dims(window);
    long long d = out.dim();
    out.monomial = true;
    out.mono = Monomial::identity(d);

    auto gate_block = [&](const Interval& s, long long& dl, long long& dg, long long& dr) {
        dl = dg = dr = 1;
        for (int site = window.lo; site < s.lo; ++site) dl *= chain.dim(site);
        for (int site = s.lo; site <= s.hi; ++site) dg *= chain.dim(site);
        for (int site = s.hi + 1; site <= window.hi; ++site) dr *= chain.dim(site);
    };

    for (const Circuit* c : circuits) {
        for (const Layer& l : c->layers) {
            for (const Gate& g : l.gates) {
                if (!window.contains(g.support)) continue;
                long long dl, dg, dr;
                gate_block(g.support, dl, dg, dr);
                if (out.monomial && g.mono) {
                    out.mono = g.mono->embed(dl, dr).compose(out.mono);
                } else {
                    if (out.monomial) {
                        if (d > dense_cap)
                            throw CapExceededError("window_product: dense fallback exceeds cap");
                        out.dense = out.mono.to_dense();
                        out.monomial = false;
                        out.mono = Monomial();
                    }
                    if (g.mono) {
                        Monomial em = g.mono->embed(dl, dr);
                        Mat next(d, out.dense.cols());
                        for (long long j = 0; j < d; ++j) next.row(em.perm[j]) = em.phase[j] * out.dense.row(j);
                        out.dense = std::move(next);
                    } else {
                        apply_gate_left(out.dense, g.u, dl, dg, dr);
                    }
                }
            }
        }
    }
    return out;
}

WindowUnitary window_product(const Circuit& c, const Interval& window, const ChainSpec& chain,
                             long long dense_cap) {
    return window_product(std::vector<const Circuit*>{&c}, window, chain, dense_cap);
}

}  // namespace qsym
