#include "qsym/intmat.hpp"

#include <stdexcept>

namespace qsym {

IMat IMat::identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IMat IMat::transposed() const {
    IMat t(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
}

IMat IMat::mul(const IMat& o) const {
    if (cols != o.rows) throw std::invalid_argument("IMat::mul: shape mismatch");
    IMat p(rows, o.cols);
    for (int r = 0; r < rows; ++r)
        for (int k = 0; k < cols; ++k) {
            const Int& v = at(r, k);
            if (v == 0) continue;
            for (int c = 0; c < o.cols; ++c) p.at(r, c) += v * o.at(k, c);
        }
    return p;
}

bool IMat::is_zero() const {
    for (const Int& v : a)
        if (v != 0) return false;
    return true;
}

IMat IMat::hcat(const IMat& o) const {
    if (rows != o.rows) throw std::invalid_argument("IMat::hcat: row mismatch");
    IMat m(rows, cols + o.cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) m.at(r, c) = at(r, c);
        for (int c = 0; c < o.cols; ++c) m.at(r, cols + c) = o.at(r, c);
    }
    return m;
}

IMat IMat::vcat(const IMat& o) const {
    if (cols != o.cols) throw std::invalid_argument("IMat::vcat: col mismatch");
    IMat m(rows + o.rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = at(r, c);
    for (int r = 0; r < o.rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(rows + r, c) = o.at(r, c);
    return m;
}

IMat IMat::col(int c) const {
    IMat m(rows, 1);
    for (int r = 0; r < rows; ++r) m.at(r, 0) = at(r, c);
    return m;
}

IMat IMat::submatrix_cols(int c0, int c1) const {
    IMat m(rows, c1 - c0);
    for (int r = 0; r < rows; ++r)
        for (int c = c0; c < c1; ++c) m.at(r, c - c0) = at(r, c);
    return m;
}

IMat IMat::submatrix_rows(int r0, int r1) const {
    IMat m(r1 - r0, cols);
    for (int r = r0; r < r1; ++r)
        for (int c = 0; c < cols; ++c) m.at(r - r0, c) = at(r, c);
    return m;
}

namespace {

void swap_cols(IMat& m, int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

void negate_col(IMat& m, int i) {
    for (int r = 0; r < m.rows; ++r) m.at(r, i) = -m.at(r, i);
}

// col_j += q * col_i
void addmul_col(IMat& m, int j, int i, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < m.rows; ++r) m.at(r, j) += q * m.at(r, i);
}

void swap_rows(IMat& m, int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void negate_row(IMat& m, int i) {
    for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}

// row_j += q * row_i
void addmul_row(IMat& m, int j, int i, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < m.cols; ++c) m.at(j, c) += q * m.at(i, c);
}

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

// floor division quotient
Int fdiv(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

IMat hermite_col(const IMat& A, IMat* U, int* rank_out) {
    IMat H = A;
    IMat u = IMat::identity(A.cols);
    int r = 0;  // next pivot column
    for (int i = 0; i < H.rows && r < H.cols; ++i) {
        // reduce columns r.. on row i until at most one nonzero remains
        for (;;) {
            int piv = -1;
            for (int c = r; c < H.cols; ++c) {
                if (H.at(i, c) == 0) continue;
                if (piv < 0 || abs_int(H.at(i, c)) < abs_int(H.at(i, piv))) piv = c;
            }
            if (piv < 0) break;
            swap_cols(H, r, piv);
            swap_cols(u, r, piv);
            bool clean = true;
            for (int c = r + 1; c < H.cols; ++c) {
                if (H.at(i, c) == 0) continue;
                Int q = -fdiv(H.at(i, c), H.at(i, r));
                addmul_col(H, c, r, q);
                addmul_col(u, c, r, q);
                if (H.at(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H.at(i, r) != 0) {
            if (H.at(i, r) < 0) { negate_col(H, r); negate_col(u, r); }
            ++r;
        }
    }
    if (U) *U = u;
    if (rank_out) *rank_out = r;
    return H;
}

IMat hnf_row_canonical(const IMat& A) {
    IMat H = A;
    int r = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < H.cols && r < H.rows; ++c) {
        for (;;) {
            int piv = -1;
            for (int i = r; i < H.rows; ++i) {
                if (H.at(i, c) == 0) continue;
                if (piv < 0 || abs_int(H.at(i, c)) < abs_int(H.at(piv, c))) piv = i;
            }
            if (piv < 0) break;
            swap_rows(H, r, piv);
            bool clean = true;
            for (int i = r + 1; i < H.rows; ++i) {
                if (H.at(i, c) == 0) continue;
                addmul_row(H, i, r, -fdiv(H.at(i, c), H.at(r, c)));
                if (H.at(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (r < H.rows && H.at(r, c) != 0) {
            if (H.at(r, c) < 0) negate_row(H, r);
            for (int i = 0; i < r; ++i)
                addmul_row(H, i, r, -fdiv(H.at(i, c), H.at(r, c)));
            pivot_col.push_back(c);
            ++r;
        }
    }
    return H.submatrix_rows(0, r);
}

IMat kernel_basis(const IMat& A) {
    IMat U;
    int rank = 0;
    hermite_col(A, &U, &rank);
    return U.submatrix_cols(rank, A.cols);
}

IMat left_kernel_basis(const IMat& A) {
    IMat k = kernel_basis(A.transposed());
    return k.transposed();
}

SmithResult smith(const IMat& A, bool want_U, bool want_V) {
    SmithResult res;
    IMat S = A;
    int n = std::min(A.rows, A.cols);
    if (want_U) { res.U = IMat::identity(A.rows); res.Uinv = IMat::identity(A.rows); }
    if (want_V) { res.V = IMat::identity(A.cols); res.Vinv = IMat::identity(A.cols); }

    auto row_op = [&](int j, int i, const Int& q) {
        addmul_row(S, j, i, q);
        if (want_U) { addmul_row(res.U, j, i, q); addmul_col(res.Uinv, i, j, -q); }
    };
    auto col_op = [&](int j, int i, const Int& q) {
        addmul_col(S, j, i, q);
        if (want_V) { addmul_col(res.V, j, i, q); addmul_row(res.Vinv, i, j, -q); }
    };
    auto row_swap = [&](int i, int j) {
        swap_rows(S, i, j);
        if (want_U) { swap_rows(res.U, i, j); swap_cols(res.Uinv, i, j); }
    };
    auto col_swap = [&](int i, int j) {
        swap_cols(S, i, j);
        if (want_V) { swap_cols(res.V, i, j); swap_rows(res.Vinv, i, j); }
    };
    auto row_neg = [&](int i) {
        negate_row(S, i);
        if (want_U) { negate_row(res.U, i); negate_col(res.Uinv, i); }
    };

    for (int t = 0; t < n; ++t) {
        for (;;) {
            // locate minimal nonzero entry in the trailing block
            int pr = -1, pc = -1;
            for (int i = t; i < S.rows; ++i)
                for (int j = t; j < S.cols; ++j) {
                    if (S.at(i, j) == 0) continue;
                    if (pr < 0 || abs_int(S.at(i, j)) < abs_int(S.at(pr, pc))) { pr = i; pc = j; }
                }
            if (pr < 0) break;  // trailing block zero
            row_swap(t, pr);
            col_swap(t, pc);
            bool dirty = false;
            for (int i = t + 1; i < S.rows; ++i) {
                if (S.at(i, t) == 0) continue;
                row_op(i, t, -fdiv(S.at(i, t), S.at(t, t)));
                if (S.at(i, t) != 0) dirty = true;
            }
            for (int j = t + 1; j < S.cols; ++j) {
                if (S.at(t, j) == 0) continue;
                col_op(j, t, -fdiv(S.at(t, j), S.at(t, t)));
                if (S.at(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // divisibility sweep: S[t,t] must divide the whole trailing block
            bool fixed = true;
            for (int i = t + 1; i < S.rows && fixed; ++i)
                for (int j = t + 1; j < S.cols && fixed; ++j)
                    if (S.at(i, j) % S.at(t, t) != 0) {
                        row_op(t, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (t < S.rows && t < S.cols && S.at(t, t) < 0) row_neg(t);
    }
    res.diag.resize(n);
    for (int t = 0; t < n; ++t) res.diag[t] = S.at(t, t);
    return res;
}

bool solve_integer(const IMat& A, const std::vector<Int>& b, std::vector<Int>& x) {
    if (static_cast<int>(b.size()) != A.rows) throw std::invalid_argument("solve_integer: size");
    SmithResult s = smith(A);
    int n = std::min(A.rows, A.cols);
    // y' = U b; need y_i = y'_i / d_i where defined, y'_i = 0 past rank.
    std::vector<Int> yp(A.rows);
    for (int i = 0; i < A.rows; ++i) {
        Int acc = 0;
        for (int j = 0; j < A.rows; ++j) acc += s.U.at(i, j) * b[j];
        yp[i] = acc;
    }
    std::vector<Int> y(A.cols);
    for (int i = 0; i < A.rows; ++i) {
        if (i < n && s.diag[i] != 0) {
            if (yp[i] % s.diag[i] != 0) return false;
            y[i] = yp[i] / s.diag[i];
        } else if (yp[i] != 0) {
            return false;
        }
    }
    x.assign(A.cols, 0);
    for (int i = 0; i < A.cols; ++i) {
        Int acc = 0;
        for (int j = 0; j < A.cols; ++j) acc += s.V.at(i, j) * y[j];
        x[i] = acc;
    }
    return true;
}

IMat congruence_lattice(const IMat& C, const Int& m) {
    int N = C.cols, k = C.rows;
    IMat block(k, N + k);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < N; ++c) block.at(r, c) = C.at(r, c);
        block.at(r, N + r) = m;
    }
    IMat ker = kernel_basis(block);  // (N+k) x N
    if (ker.cols != N) throw std::runtime_error("congruence_lattice: unexpected kernel dimension");
    IMat basis(N, N);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) basis.at(r, c) = ker.at(r, c);
    return basis;
}

IMat saturation_of_columns(const IMat& D) {
    IMat K = left_kernel_basis(D);  // k x N
    if (K.rows == 0) return IMat::identity(D.rows);
    return kernel_basis(K);  // N x (N - k)
}

IMat lattice_sum(const std::vector<IMat>& parts) {
    if (parts.empty()) throw std::invalid_argument("lattice_sum: empty");
    IMat all = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) all = all.hcat(parts[i]);
    IMat U;
    int rank = 0;
    IMat H = hermite_col(all, &U, &rank);
    return H.submatrix_cols(0, rank);
}

LatticeQuotient lattice_quotient(const IMat& B1, const IMat& B2) {
    if (B1.rows != B1.cols || B2.rows != B2.cols || B1.rows != B2.rows)
        throw std::invalid_argument("lattice_quotient: need square bases of equal size");
    int N = B1.rows;
    IMat X(N, N);
    for (int c = 0; c < N; ++c) {
        std::vector<Int> b(N), x;
        for (int r = 0; r < N; ++r) b[r] = B2.at(r, c);
        if (!solve_integer(B1, b, x))
            throw std::invalid_argument("lattice_quotient: L2 not inside L1");
        for (int r = 0; r < N; ++r) X.at(r, c) = x[r];
    }
    SmithResult s = smith(X, true, false);
    LatticeQuotient q;
    q.factors = s.diag;
    for (Int& f : q.factors)
        if (f < 0) f = -f;
    q.adapted_basis = B1.mul(s.Uinv);
    q.coord_transform = s.U;
    q.b1 = B1;
    return q;
}

std::vector<Int> quotient_coordinates(const LatticeQuotient& q, const std::vector<Int>& y) {
    std::vector<Int> w;
    if (!solve_integer(q.b1, y, w))
        throw std::invalid_argument("quotient_coordinates: point not in L1");
    int N = q.b1.rows;
    std::vector<Int> z(N);
    for (int i = 0; i < N; ++i) {
        Int acc = 0;
        for (int j = 0; j < N; ++j) acc += q.coord_transform.at(i, j) * w[j];
        if (q.factors[i] != 0) {
            acc %= q.factors[i];
            if (acc < 0) acc += q.factors[i];
        }
        z[i] = acc;
    }
    return z;
}

}  // namespace qsym
