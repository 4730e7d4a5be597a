#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "qsym/chain.hpp"

namespace qsym {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// Dense operator with an explicit support interval. Tensor ordering is
// site-major with the leftmost site most significant.
struct LocalOperator {
    Interval support;
    std::vector<int> dims;  // per-site dimension over the support
    Mat mat;
    std::optional<bool> unitary_flag;

    long long dim() const { return mat.rows(); }
    bool is_scalar() const { return support.is_empty(); }

    static LocalOperator scalar(cd value);
    static LocalOperator identity(const ChainSpec& chain, const Interval& supp);
    static LocalOperator from_matrix(const ChainSpec& chain, const Interval& supp, Mat m);

    LocalOperator adjoint() const;
    double unitarity_residual() const;  // ||U^H U - I||_inf
};

// Tensor with identities so the support becomes `target` (site ordering kept).
LocalOperator embed(const LocalOperator& op, const Interval& target, const ChainSpec& chain);

// Both operands embedded into the union of supports, then matrix product.
LocalOperator multiply(const LocalOperator& a, const LocalOperator& b, const ChainSpec& chain);

// Partial trace over `traced`, which must lie inside the support. When the
// traced block is interior the two remaining pieces are concatenated: sites
// right of the block keep their order but shift left by traced.size(), so the
// result support is the interval [support.lo, support.hi - traced.size()].
// Tracing the full support yields a scalar (empty support).
LocalOperator partial_trace(const LocalOperator& op, const Interval& traced);

// min over phi of ||a - e^{i phi} b||_F / ||b||_F on the common support.
double phase_distance(const LocalOperator& a, const LocalOperator& b, const ChainSpec& chain);

// Number of singular values exceeding tol * sigma_max across the cut between
// sites `cut` and `cut + 1` (both strictly inside the support).
int operator_schmidt_rank(const LocalOperator& op, int cut, double tol);

// tr(a^H b) / dim on the common support; the unimodular trace ratios behind
// the extracted cocycles.
cd normalized_overlap(const LocalOperator& a, const LocalOperator& b, const ChainSpec& chain);

// Hilbert-Schmidt matrix-unit basis of the window, enumerated row-major.
std::vector<LocalOperator> matrix_unit_basis(const ChainSpec& chain, const Interval& window);

// In-place m <- (I (x) g (x) I) m over the (dl, dg, dr) index split.
void apply_gate_left(Mat& m, const Mat& g, long long dl, long long dg, long long dr);
// In-place m <- (I (x) g (x) I) m (I (x) g (x) I)^H.
void apply_gate_conjugate(Mat& m, const Mat& g, long long dl, long long dg, long long dr);

// Shrink the support while a boundary site factors off as an exact identity
// (within tol, relative to the largest entry). Keeps conjugation cascades at
// the true operator support instead of the light-cone interval.
LocalOperator trim_identity_boundary(const LocalOperator& op, double tol = 1e-12);

}  // namespace qsym
