#pragma once

#include <functional>

#include "qsym/circuit.hpp"

namespace qsym {

// Abstract conjugation action on operators supported in a fixed window.
using ActionOracle = std::function<LocalOperator(const LocalOperator&)>;

// Recover the unitary F implementing an inner automorphism on `window`:
// common nullspace of the constraints action(B_k) F - F B_k over a matrix-unit
// basis via smallest-eigenvector extraction, then polar projection. Phase
// gauge: first nonzero entry (row-major) made real positive.
// Errors: zero-dimensional nullspace ("window too small / not inner here"),
// higher-dimensional nullspace ("ambiguous localization"), post-polar
// residual above tol ("not implementable by a unitary at this tolerance").
LocalOperator localize_inner_automorphism(const ActionOracle& action, const Interval& window,
                                          const ChainSpec& chain, double tol);

struct LocalizeDiag {
    Interval window_used;       // the product window W
    Interval support;           // the defect window v the unitary lives on
    double schmidt_ratio = 0;   // sigma_2 / sigma_1 of the v|rest split
    double unitarity = 0;       // post-polar deviation from the rank-1 factor
};

// Recover the local unitary of a circuit composition that globally acts by
// conjugation with a unitary supported near `v`: product of all gates inside
// an enclosing window, then rank-1 operator-Schmidt split across v | rest.
// Window and margins grow automatically until the split is rank one.
LocalOperator localize_circuit_unitary(const std::vector<const Circuit*>& circuits,
                                       const Interval& v_hint, const ChainSpec& chain, double tol,
                                       LocalizeDiag* diag = nullptr, long long dense_cap = 4096);

// Fix the phase so the first entry with modulus > 0.1 * max (row-major scan)
// is real positive.
void fix_phase_gauge(Mat& m);

// Rank-1 split of a window unitary across v | rest: returns the v-side factor
// scaled to Frobenius norm sqrt(dim v). ratio_out receives sigma_2 / sigma_1.
Mat rank1_factor(const WindowUnitary& U, const Interval& v, const ChainSpec& chain,
                 double* ratio_out);

}  // namespace qsym
