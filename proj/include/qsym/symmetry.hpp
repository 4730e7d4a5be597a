#pragma once

#include "qsym/circuit.hpp"
#include "qsym/cochain.hpp"

namespace qsym {

// A finite-group symmetry presented by one finite-depth circuit per group
// element. Immutable once verified.
struct Symmetry {
    GroupPtr group;
    ChainSpec chain;
    std::vector<Circuit> circuits;  // indexed by group element
    int range = 0;
    bool verified = false;

    const Circuit& circuit(int g) const { return circuits[static_cast<size_t>(g)]; }

    LocalOperator apply(int g, const LocalOperator& x) const {
        return apply_automorphism(circuit(g), x, chain);
    }
};

// Truncation of a symmetry to a right half-line: per element, the gates fully
// supported on [site, chain.hi]. Acts as identity left of the defect window
// and agrees with the base to its right.
struct RightRestriction {
    GroupPtr group;
    ChainSpec chain;
    int site = 0;
    std::vector<Circuit> circuits;
    int defect_size = 0;
    bool left = false;  // set when this is a left restriction instead

    const Circuit& circuit(int g) const { return circuits[static_cast<size_t>(g)]; }
    LocalOperator apply(int g, const LocalOperator& x) const {
        return apply_automorphism(circuit(g), x, chain);
    }
};

// Probe-basis check of the homomorphism property on a central window.
// probe_sites is the width of the probe window.
bool verify_symmetry(const Symmetry& s, int probe_sites, double tol, std::string* fail_msg = nullptr);

// The two-layer diagonal + one-layer left-translation circuit construction
// from an exact normalized 3-cocycle. Chain dims must all equal |G|; range 1.
Symmetry build_cocycle_symmetry(const GroupPtr& g, const Cochain& omega, const ChainSpec& chain);

// Z_2 symmetry whose nontrivial component conjugates by a chain of CZ gates.
Symmetry build_cz_symmetry(const ChainSpec& chain);

// All circuits empty.
Symmetry build_trivial_symmetry(const GroupPtr& g, const ChainSpec& chain);

enum class OnsiteKind { Regular, Adjoint, Diagonal };

// Range-0 symmetry acting at a single site of dimension |G|.
// For Diagonal, `c` supplies the phases: U(g) = sum_l c_g(l) |l><l| with c a
// degree-1 cochain over U(1)[G] (coordinate g, argument l).
Symmetry build_onsite_representation(const GroupPtr& g, OnsiteKind kind, const ChainSpec& chain,
                                     int site, const Cochain* c = nullptr);

// Regular representation at every site (a decoupled symmetry).
Symmetry build_decoupled_regular(const GroupPtr& g, const ChainSpec& chain);

// Per-site tensor product of two symmetries of the same group on the same
// site range; the stacked chain concatenates the per-site factors.
Symmetry stack(const Symmetry& a, const Symmetry& b);

// gamma^-1 o alpha^(g) o gamma for every g, realized by circuit concatenation.
Symmetry conjugate_by_fdqc(const Symmetry& s, const Circuit& gamma);

RightRestriction right_restriction(const Symmetry& s, int site);
RightRestriction left_restriction(const Symmetry& s, int site);

// Left translation L^g |h> = |gh> on a dim-|G| factor.
Mat left_translation_matrix(const FiniteGroup& g, int elem);
// Adjoint action J^k |h> = |k h k^-1>.
Mat adjoint_action_matrix(const FiniteGroup& g, int elem);

// Re-embedding of gates and operators when sites acquire extra tensor
// factors. The destination chain must carry the source factors as a prefix of
// every site's factor list.
Gate lift_gate(const Gate& g, const ChainSpec& src, const ChainSpec& dst);
Circuit lift_circuit(const Circuit& c, const ChainSpec& src, const ChainSpec& dst);
LocalOperator lift_operator(const LocalOperator& op, const ChainSpec& src, const ChainSpec& dst);

// Single-site gate acting on one tensor factor of a site, identity elsewhere.
Gate ancilla_factor_gate(const ChainSpec& chain, int site, int factor_index, const Mat& u);

// Stack a dim-d ancilla factor at `site`. The extended symmetry applies
// anc_action[g] on the new factor (identity action when empty).
Symmetry extend_with_ancilla(const Symmetry& s, int site, int d,
                             const std::vector<Mat>& anc_action = {});

}  // namespace qsym
