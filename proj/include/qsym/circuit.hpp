#pragma once

#include "qsym/monomial.hpp"

namespace qsym {

// Unitary gate with an explicit support interval.
struct Gate {
    Interval support;
    Mat u;
    std::optional<Monomial> mono;  // cached monomial form when the gate has one

    Gate() = default;
    Gate(Interval s, Mat m) : support(s), u(std::move(m)) { mono = monomial_from_dense(u); }

    double unitarity_residual() const {
        return (u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    }
};

// One block-partitioned layer: gates with pairwise disjoint supports.
struct Layer {
    std::vector<Gate> gates;
};

// Finite depth circuit acting on operators by layer-ordered conjugation:
// layer 0 is applied first. Total unitary is U_{L-1} ... U_1 U_0.
struct Circuit {
    std::vector<Layer> layers;
    int declared_range = 0;

    int depth() const { return static_cast<int>(layers.size()); }
    bool is_identity() const;
    void add_layer(Layer l);

    Circuit inverse() const;
    // Composition this-then-next as automorphisms: (next o this).
    Circuit then(const Circuit& next) const;
    // Gates fully inside `keep` retained, everything else dropped.
    Circuit restrict_gates(const Interval& keep) const;
    Interval gate_span() const;

    void validate(const ChainSpec& chain, double tol = 1e-10) const;
};

// Conjugation of a local operator through the circuit, touching only gates
// that intersect the growing support. Result support is the fattened interval.
LocalOperator apply_automorphism(const Circuit& c, const LocalOperator& x, const ChainSpec& chain);

// Ordered product of all gates of the given circuits (first circuit applied
// first) that fit fully inside `window`, as one unitary on the window.
// Kept monomial whenever every contributing gate is monomial.
struct WindowUnitary {
    Interval window;
    std::vector<int> dims;
    bool monomial = false;
    Monomial mono;
    Mat dense;

    long long dim() const;
    Mat to_dense() const { return monomial ? mono.to_dense() : dense; }
};

WindowUnitary window_product(const std::vector<const Circuit*>& circuits, const Interval& window,
                             const ChainSpec& chain, long long dense_cap = 4096);

// Single-circuit convenience.
WindowUnitary window_product(const Circuit& c, const Interval& window, const ChainSpec& chain,
                             long long dense_cap = 4096);

}  // namespace qsym
