#pragma once

#include "qsym/engine.hpp"

namespace qsym {

// Output of the ancilla upgrade constructions: the enlarged symmetry, the
// corrected restriction on the enlarged chain, and probe-suite residuals.
struct UpgradeResult {
    Symmetry extended;
    RightRestriction restriction;
    double hom_residual = -1.0;         // < 0 when the suite was not run
    double covariance_residual = -1.0;
    double phase_solve_residual = 0.0;
};

// Trivial anomaly -> restriction that is a group homomorphism, after stacking
// one dim-|G| ancilla at `site` on which the extended symmetry acts trivially.
UpgradeResult upgrade_to_group_hom(const Symmetry& s, int site, const EngineOptions& opt = {});

// Trivial obstruction -> covariant restriction, after stacking one regular
// representation ancilla at `site`.
UpgradeResult upgrade_to_covariant(const Symmetry& s, int site, const EngineOptions& opt = {});

// Trivial anomaly -> restriction that is simultaneously covariant and a group
// homomorphism; stacks rho_reg (x) rho_reg (x) rho_ad at `site`.
UpgradeResult upgrade_to_covariant_hom(const Symmetry& s, int site, const EngineOptions& opt = {});

// Worst probe deviation of beta(g) o beta(h) from beta(gh) around r.site.
double restriction_hom_residual(const RightRestriction& r, int probe_sites = 2);

// Worst probe deviation of ext(k) o beta(k^-1 g k) o ext(k^-1) from beta(g).
double restriction_covariance_residual(const Symmetry& ext, const RightRestriction& r,
                                       int probe_sites = 2);

// V = sum_a blocks[a] (x) |pi[a]><a| acting on the ancilla factor
// `anc_factor` of `anc_site`; blocks are given on the chain without that
// factor and must share the window.
LocalOperator controlled_ancilla_unitary(const ChainSpec& chain, const Interval& window,
                                         int anc_site, int anc_factor,
                                         const std::vector<LocalOperator>& blocks,
                                         const std::vector<int>& pi);

// Chain with one tensor factor of a site removed (for block embedding).
ChainSpec without_factor(const ChainSpec& chain, int site, int factor_index);

}  // namespace qsym
