#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace qsym {

using Int = boost::multiprecision::cpp_int;

// Dense integer matrix with exact (arbitrary precision) entries.
// Scratch object for differential matrices and normal-form computations.
struct IMat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static IMat identity(int n);
    static IMat zero(int r, int c) { return IMat(r, c); }

    IMat transposed() const;
    IMat mul(const IMat& o) const;
    bool is_zero() const;
    bool operator==(const IMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    // Columns of `o` appended to the right.
    IMat hcat(const IMat& o) const;
    // Rows of `o` appended below.
    IMat vcat(const IMat& o) const;
    IMat col(int c) const;
    IMat submatrix_cols(int c0, int c1) const;  // columns [c0, c1)
    IMat submatrix_rows(int r0, int r1) const;
};

// Column-style Hermite reduction: finds unimodular U with A*U = H where the
// nonzero columns of H are echelon. Returns H; if U != nullptr it receives
// the transform. rank_out receives the number of nonzero columns.
IMat hermite_col(const IMat& A, IMat* U = nullptr, int* rank_out = nullptr);

// Canonical row-style HNF of the lattice spanned by the rows of A:
// pivots positive, entries above pivots reduced into [0, pivot).
// Zero rows dropped. Two bases of the same row lattice give identical output.
IMat hnf_row_canonical(const IMat& A);

// Basis of the right kernel {x in Z^cols : A x = 0}, one column per basis vector.
IMat kernel_basis(const IMat& A);

// Basis of {v in Z^rows : v^T A = 0}, one ROW per basis vector.
IMat left_kernel_basis(const IMat& A);

// Smith normal form: U A V = S with S diagonal, d1 | d2 | ... .
// Any of the transform outputs may be null. Uinv satisfies U*Uinv = I.
struct SmithResult {
    std::vector<Int> diag;  // min(rows, cols) entries, trailing zeros allowed
    IMat U, Uinv, V, Vinv;
};
SmithResult smith(const IMat& A, bool want_U = true, bool want_V = true);

// Solve A x = b over the integers. Returns true and fills x on success.
bool solve_integer(const IMat& A, const std::vector<Int>& b, std::vector<Int>& x);

// Basis (N x N, full rank) of {y in Z^N : C y = 0 mod m}, N = C.cols.
IMat congruence_lattice(const IMat& C, const Int& m);

// Basis of the saturation of the column lattice of D: span_R(D) intersect Z^N.
// One column per basis vector; N = D.rows.
IMat saturation_of_columns(const IMat& D);

// Lattice span of the columns of all given matrices (same row count); returns
// a basis, one column per vector.
IMat lattice_sum(const std::vector<IMat>& parts);

// Quotient L1 / L2 of full-rank lattices given by square column-basis
// matrices, with L2 a finite-index sublattice of L1.
struct LatticeQuotient {
    std::vector<Int> factors;      // all diagonal invariant factors (>= 1)
    IMat adapted_basis;            // columns c_i, order of c_i in L1/L2 is factors[i]
    IMat coord_transform;          // z = coord_transform * w identifies classes
    IMat b1;                       // the L1 basis used
};
LatticeQuotient lattice_quotient(const IMat& B1, const IMat& B2);

// Class coordinates of a lattice point y in L1 under a computed quotient:
// z_i mod factors[i]. Throws if y is not in L1.
std::vector<Int> quotient_coordinates(const LatticeQuotient& q, const std::vector<Int>& y);

}  // namespace qsym
