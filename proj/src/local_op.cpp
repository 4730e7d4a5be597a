#include "qsym/local_op.hpp"

#include <cmath>

namespace qsym {

namespace {

long long prod(const std::vector<int>& v, size_t b, size_t e) {
    long long p = 1;
    for (size_t i = b; i < e; ++i) p *= v[i];
    return p;
}

}  // namespace

LocalOperator LocalOperator::scalar(cd value) {
    LocalOperator op;
    op.support = Interval::empty();
    op.mat = Mat::Constant(1, 1, value);
    return op;
}

LocalOperator LocalOperator::identity(const ChainSpec& chain, const Interval& supp) {
    chain.check_window(supp);
    LocalOperator op;
    op.support = supp;
    op.dims = chain.window_dims(supp);
    long long d = chain.window_dim(supp);
    op.mat = Mat::Identity(d, d);
    op.unitary_flag = true;
    return op;
}

LocalOperator LocalOperator::from_matrix(const ChainSpec& chain, const Interval& supp, Mat m) {
    chain.check_window(supp);
    LocalOperator op;
    op.support = supp;
    op.dims = chain.window_dims(supp);
    long long d = chain.window_dim(supp);
    if (m.rows() != d || m.cols() != d)
        throw PreconditionError("LocalOperator: matrix dimension inconsistent with support");
    op.mat = std::move(m);
    return op;
}

LocalOperator LocalOperator::adjoint() const {
    LocalOperator op = *this;
    op.mat = mat.adjoint();
    return op;
}

double LocalOperator::unitarity_residual() const {
    return (mat.adjoint() * mat - Mat::Identity(mat.rows(), mat.cols())).cwiseAbs().maxCoeff();
}

LocalOperator embed(const LocalOperator& op, const Interval& target, const ChainSpec& chain) {
    if (op.is_scalar()) {
        LocalOperator out = LocalOperator::identity(chain, target);
        out.mat *= op.mat(0, 0);
        out.unitary_flag.reset();
        return out;
    }
    if (!target.contains(op.support))
        throw PreconditionError("embed: support not contained in target");
    if (target == op.support) return op;
    chain.check_window(target);
    long long dl = 1, dr = 1;
    for (int s = target.lo; s < op.support.lo; ++s) dl *= chain.dim(s);
    for (int s = op.support.hi + 1; s <= target.hi; ++s) dr *= chain.dim(s);
    long long dm = op.mat.rows();
    long long d = dl * dm * dr;
    LocalOperator out;
    out.support = target;
    out.dims = chain.window_dims(target);
    out.mat = Mat::Zero(d, d);
    out.unitary_flag = op.unitary_flag;
    for (long long l = 0; l < dl; ++l)
        for (long long m1 = 0; m1 < dm; ++m1)
            for (long long m2 = 0; m2 < dm; ++m2) {
                cd v = op.mat(m1, m2);
                if (v == cd(0.0, 0.0)) continue;
                long long rbase1 = (l * dm + m1) * dr;
                long long rbase2 = (l * dm + m2) * dr;
                for (long long r = 0; r < dr; ++r) out.mat(rbase1 + r, rbase2 + r) = v;
            }
    return out;
}

LocalOperator multiply(const LocalOperator& a, const LocalOperator& b, const ChainSpec& chain) {
    if (a.is_scalar() || b.is_scalar()) {
        if (a.is_scalar() && b.is_scalar()) return LocalOperator::scalar(a.mat(0, 0) * b.mat(0, 0));
        LocalOperator out = a.is_scalar() ? b : a;
        out.mat *= a.is_scalar() ? a.mat(0, 0) : b.mat(0, 0);
        out.unitary_flag.reset();
        return out;
    }
    Interval u = a.support.unite(b.support);
    chain.check_window(u);
    LocalOperator ea = embed(a, u, chain);
    LocalOperator eb = embed(b, u, chain);
    LocalOperator out;
    out.support = u;
    out.dims = ea.dims;
    out.mat = ea.mat * eb.mat;
    if (a.unitary_flag.value_or(false) && b.unitary_flag.value_or(false)) out.unitary_flag = true;
    return out;
}

LocalOperator partial_trace(const LocalOperator& op, const Interval& traced) {
    if (op.is_scalar()) throw PreconditionError("partial_trace: scalar operand");
    if (!op.support.contains(traced) || traced.is_empty())
        throw PreconditionError("partial_trace: traced interval not inside support");
    size_t tb = static_cast<size_t>(traced.lo - op.support.lo);
    size_t te = static_cast<size_t>(traced.hi - op.support.lo + 1);
    long long dl = prod(op.dims, 0, tb);
    long long dt = prod(op.dims, tb, te);
    long long dr = prod(op.dims, te, op.dims.size());

    LocalOperator out;
    if (dl == 1 && dr == 1) {
        out = LocalOperator::scalar(op.mat.trace());
        return out;
    }
    if (traced.lo == op.support.lo)
        out.support = Interval(traced.hi + 1, op.support.hi);
    else
        out.support = Interval(op.support.lo, op.support.hi - traced.size());
    out.dims.assign(op.dims.begin(), op.dims.begin() + tb);
    out.dims.insert(out.dims.end(), op.dims.begin() + te, op.dims.end());
    out.mat = Mat::Zero(dl * dr, dl * dr);
    for (long long l1 = 0; l1 < dl; ++l1)
        for (long long r1 = 0; r1 < dr; ++r1)
            for (long long l2 = 0; l2 < dl; ++l2)
                for (long long r2 = 0; r2 < dr; ++r2) {
                    cd acc = 0;
                    for (long long t = 0; t < dt; ++t)
                        acc += op.mat((l1 * dt + t) * dr + r1, (l2 * dt + t) * dr + r2);
                    out.mat(l1 * dr + r1, l2 * dr + r2) = acc;
                }
    return out;
}

double phase_distance(const LocalOperator& a, const LocalOperator& b, const ChainSpec& chain) {
    Interval u = a.support.unite(b.support);
    LocalOperator ea = a.is_scalar() && u.is_empty() ? a : embed(a, u, chain);
    LocalOperator eb = b.is_scalar() && u.is_empty() ? b : embed(b, u, chain);
    double na2 = ea.mat.squaredNorm();
    double nb2 = eb.mat.squaredNorm();
    if (nb2 <= 0) throw PreconditionError("phase_distance: zero operator");
    double ov = std::abs((ea.mat.adjoint() * eb.mat).trace());
    double d2 = na2 + nb2 - 2.0 * ov;
    return std::sqrt(std::max(0.0, d2) / nb2);
}

int operator_schmidt_rank(const LocalOperator& op, int cut, double tol) {
    if (op.is_scalar() || cut < op.support.lo || cut >= op.support.hi)
        throw PreconditionError("operator_schmidt_rank: cut outside support");
    size_t k = static_cast<size_t>(cut - op.support.lo + 1);
    long long dl = prod(op.dims, 0, k);
    long long dr = prod(op.dims, k, op.dims.size());
    Mat m(dl * dl, dr * dr);
    for (long long l1 = 0; l1 < dl; ++l1)
        for (long long l2 = 0; l2 < dl; ++l2)
            for (long long r1 = 0; r1 < dr; ++r1)
                for (long long r2 = 0; r2 < dr; ++r2)
                    m(l1 * dl + l2, r1 * dr + r2) = op.mat((l1 * dr + r1), (l2 * dr + r2));
    Eigen::VectorXd sv;
    if (m.rows() > 128 || m.cols() > 128) {
        Eigen::BDCSVD<Mat> svd(m);
        sv = svd.singularValues();
    } else {
        Eigen::JacobiSVD<Mat> svd(m);
        sv = svd.singularValues();
    }
    if (sv.size() == 0 || sv(0) <= 0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rank;
    return rank;
}

cd normalized_overlap(const LocalOperator& a, const LocalOperator& b, const ChainSpec& chain) {
    Interval u = a.support.unite(b.support);
    LocalOperator ea = embed(a, u, chain);
    LocalOperator eb = embed(b, u, chain);
    return (ea.mat.adjoint() * eb.mat).trace() / static_cast<double>(ea.mat.rows());
}

void apply_gate_left(Mat& m, const Mat& g, long long dl, long long dg, long long dr) {
    long long cols = m.cols();
    Mat buf(dg, cols);
    for (long long l = 0; l < dl; ++l)
        for (long long r = 0; r < dr; ++r) {
            for (long long k = 0; k < dg; ++k) buf.row(k) = m.row((l * dg + k) * dr + r);
            for (long long k = 0; k < dg; ++k) {
                Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(cols);
                for (long long k2 = 0; k2 < dg; ++k2) {
                    cd v = g(k, k2);
                    if (v != cd(0.0, 0.0)) acc += v * buf.row(k2);
                }
                m.row((l * dg + k) * dr + r) = acc;
            }
        }
}

void apply_gate_conjugate(Mat& m, const Mat& g, long long dl, long long dg, long long dr) {
    apply_gate_left(m, g, dl, dg, dr);
    long long rows = m.rows();
    Mat buf(rows, dg);
    for (long long l = 0; l < dl; ++l)
        for (long long r = 0; r < dr; ++r) {
            for (long long k = 0; k < dg; ++k) buf.col(k) = m.col((l * dg + k) * dr + r);
            for (long long k = 0; k < dg; ++k) {
                Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(rows);
                for (long long k2 = 0; k2 < dg; ++k2) {
                    cd v = std::conj(g(k, k2));
                    if (v != cd(0.0, 0.0)) acc += v * buf.col(k2);
                }
                m.col((l * dg + k) * dr + r) = acc;
            }
        }
}

LocalOperator trim_identity_boundary(const LocalOperator& op, double tol) {
    if (op.is_scalar()) return op;
    LocalOperator cur = op;
    for (;;) {
        if (cur.dims.size() <= 1) break;
        double scale = cur.mat.cwiseAbs().maxCoeff();
        double eps = tol * std::max(1.0, scale);
        bool trimmed = false;

        // left end: mat = I_d0 (x) B
        {
            long long d0 = cur.dims.front();
            long long rest = cur.mat.rows() / d0;
            bool ok = true;
            for (long long i = 0; i < d0 && ok; ++i)
                for (long long j = 0; j < d0 && ok; ++j) {
                    const auto block = cur.mat.block(i * rest, j * rest, rest, rest);
                    if (i == j) {
                        if ((block - cur.mat.block(0, 0, rest, rest)).cwiseAbs().maxCoeff() > eps)
                            ok = false;
                    } else if (block.cwiseAbs().maxCoeff() > eps) {
                        ok = false;
                    }
                }
            if (ok) {
                LocalOperator next;
                next.support = Interval(cur.support.lo + 1, cur.support.hi);
                next.dims.assign(cur.dims.begin() + 1, cur.dims.end());
                next.mat = cur.mat.block(0, 0, rest, rest);
                next.unitary_flag = cur.unitary_flag;
                cur = std::move(next);
                trimmed = true;
            }
        }
        if (trimmed) continue;
        if (cur.dims.size() <= 1) break;

        // right end: mat = B (x) I_dn
        {
            long long dn = cur.dims.back();
            long long rest = cur.mat.rows() / dn;
            bool ok = true;
            Mat b(rest, rest);
            for (long long x = 0; x < rest; ++x)
                for (long long y = 0; y < rest; ++y) b(x, y) = cur.mat(x * dn, y * dn);
            for (long long a = 0; a < dn && ok; ++a)
                for (long long bq = 0; bq < dn && ok; ++bq)
                    for (long long x = 0; x < rest && ok; ++x)
                        for (long long y = 0; y < rest; ++y) {
                            cd v = cur.mat(x * dn + a, y * dn + bq);
                            cd expect = (a == bq) ? b(x, y) : cd(0.0, 0.0);
                            if (std::abs(v - expect) > eps) { ok = false; break; }
                        }
            if (ok) {
                LocalOperator next;
                next.support = Interval(cur.support.lo, cur.support.hi - 1);
                next.dims.assign(cur.dims.begin(), cur.dims.end() - 1);
                next.mat = std::move(b);
                next.unitary_flag = cur.unitary_flag;
                cur = std::move(next);
                trimmed = true;
            }
        }
        if (!trimmed) break;
    }
    return cur;
}

std::vector<LocalOperator> matrix_unit_basis(const ChainSpec& chain, const Interval& window) {
    long long d = chain.window_dim(window);
    std::vector<LocalOperator> basis;
    basis.reserve(static_cast<size_t>(d * d));
    for (long long i = 0; i < d; ++i)
        for (long long j = 0; j < d; ++j) {
            Mat m = Mat::Zero(d, d);
            m(i, j) = 1.0;
            basis.push_back(LocalOperator::from_matrix(chain, window, std::move(m)));
        }
    return basis;
}

}  // namespace qsym
