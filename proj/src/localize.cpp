#include "qsym/localize.hpp"

#include <Eigen/Eigenvalues>
#include <random>

#include "qsym/errors.hpp"

namespace qsym {

void fix_phase_gauge(Mat& m) {
    double mx = m.cwiseAbs().maxCoeff();
    if (mx <= 0) return;
    for (long long r = 0; r < m.rows(); ++r)
        for (long long c = 0; c < m.cols(); ++c) {
            cd v = m(r, c);
            if (std::abs(v) > 0.1 * mx) {
                m *= std::conj(v) / std::abs(v);
                return;
            }
        }
}

namespace {

Mat polar_unitary(const Mat& f, double* residual) {
    Eigen::JacobiSVD<Mat> svd(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double dev = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        dev = std::max(dev, std::abs(svd.singularValues()(i) - 1.0));
    if (residual) *residual = dev;
    return svd.matrixU() * svd.matrixV().adjoint();
}

struct SplitDims {
    long long dl = 1, dm = 1, dr = 1;
};

SplitDims split_dims(const Interval& w, const Interval& v, const ChainSpec& chain) {
    SplitDims s;
    for (int site = w.lo; site < v.lo; ++site) s.dl *= chain.dim(site);
    for (int site = v.lo; site <= v.hi; ++site) s.dm *= chain.dim(site);
    for (int site = v.hi + 1; site <= w.hi; ++site) s.dr *= chain.dim(site);
    return s;
}

// Power iteration on M M^H where M is the v|rest reshape of the window
// unitary. apply / applyH evaluate M and M^H without materializing M.
struct ReshapedProduct {
    const WindowUnitary* U;
    SplitDims s;
    long long dW, dv, drest;

    long long vpair(long long i, long long j) const {
        long long mi = (i / s.dr) % s.dm;
        long long mj = (j / s.dr) % s.dm;
        return mi * s.dm + mj;
    }
    long long restpair(long long i, long long j) const {
        long long li = i / (s.dm * s.dr), ri = i % s.dr;
        long long lj = j / (s.dm * s.dr), rj = j % s.dr;
        return (li * s.dr + ri) * drest + (lj * s.dr + rj);
    }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& w) const {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dv * dv);
        if (U->monomial) {
            for (long long j = 0; j < dW; ++j) {
                long long i = U->mono.perm[j];
                out(vpair(i, j)) += U->mono.phase[j] * w(restpair(i, j));
            }
        } else {
            for (long long j = 0; j < dW; ++j)
                for (long long i = 0; i < dW; ++i) {
                    cd u = U->dense(i, j);
                    if (u != cd(0.0, 0.0)) out(vpair(i, j)) += u * w(restpair(i, j));
                }
        }
        return out;
    }

    Eigen::VectorXcd applyH(const Eigen::VectorXcd& w) const {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(drest * drest);
        if (U->monomial) {
            for (long long j = 0; j < dW; ++j) {
                long long i = U->mono.perm[j];
                out(restpair(i, j)) += std::conj(U->mono.phase[j]) * w(vpair(i, j));
            }
        } else {
            for (long long j = 0; j < dW; ++j)
                for (long long i = 0; i < dW; ++i) {
                    cd u = U->dense(i, j);
                    if (u != cd(0.0, 0.0)) out(restpair(i, j)) += std::conj(u) * w(vpair(i, j));
                }
        }
        return out;
    }
};

double top_singular(const ReshapedProduct& rp, Eigen::VectorXcd& vec,
                    const Eigen::VectorXcd* deflate) {
    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned long long>(rp.dv));
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXcd u(rp.dv * rp.dv);
    for (long long i = 0; i < u.size(); ++i) u(i) = cd(dist(rng), dist(rng));
    if (deflate) u -= (*deflate) * deflate->dot(u);
    double sigma = 0;
    for (int it = 0; it < 60; ++it) {
        if (u.norm() < 1e-300) return 0.0;
        u.normalize();
        Eigen::VectorXcd next = rp.apply(rp.applyH(u));
        if (deflate) next -= (*deflate) * deflate->dot(next);
        double s2 = std::real(u.dot(next));
        double ns = std::sqrt(std::max(0.0, s2));
        if (it > 8 && std::abs(ns - sigma) <= 1e-12 * std::max(1.0, ns)) { sigma = ns; u = next; break; }
        sigma = ns;
        u = next;
    }
    if (u.norm() > 0) u.normalize();
    vec = u;
    return sigma;
}

}  // namespace

Mat rank1_factor(const WindowUnitary& U, const Interval& v, const ChainSpec& chain,
                 double* ratio_out) {
    SplitDims s = split_dims(U.window, v, chain);
    ReshapedProduct rp{&U, s, U.dim(), s.dm, s.dl * s.dr};
    Eigen::VectorXcd u1, u2;
    double s1 = top_singular(rp, u1, nullptr);
    double s2 = rp.dv * rp.dv > 1 ? top_singular(rp, u2, &u1) : 0.0;
    if (ratio_out) *ratio_out = s1 > 0 ? s2 / s1 : 1.0;
    // u1 holds vec(F)/||F||; the v-side factor of a unitary has norm sqrt(dv)
    Mat F(s.dm, s.dm);
    for (long long i = 0; i < s.dm; ++i)
        for (long long j = 0; j < s.dm; ++j) F(i, j) = u1(i * s.dm + j) * std::sqrt(static_cast<double>(s.dm));
    return F;
}

LocalOperator localize_circuit_unitary(const std::vector<const Circuit*>& circuits,
                                       const Interval& v_hint, const ChainSpec& chain, double tol,
                                       LocalizeDiag* diag, long long dense_cap) {
    Interval v = v_hint.clip(chain.sites());
    std::string last_err = "no window attempted";
    for (int grow = 0; grow < 4; ++grow) {
        for (int margin = 2; margin <= 5; ++margin) {
            Interval w = v.fatten(margin).clip(chain.sites());
            if (chain.window_dim(w) > chain.dim_cap) { last_err = "window dimension cap"; continue; }
            WindowUnitary U;
            try {
                U = window_product(circuits, w, chain, dense_cap);
            } catch (const CapExceededError& e) {
                last_err = e.what();
                continue;
            }
            double ratio = 1.0;
            Mat F = rank1_factor(U, v, chain, &ratio);
            if (ratio > tol) {
                last_err = "schmidt ratio " + std::to_string(ratio) + " at window [" +
                           std::to_string(w.lo) + "," + std::to_string(w.hi) + "]";
                continue;
            }
            double polar_dev = 0;
            Mat Fu = polar_unitary(F, &polar_dev);
            if (polar_dev > std::max(tol, 1e3 * ratio) + 1e-9) {
                last_err = "polar deviation " + std::to_string(polar_dev);
                continue;
            }
            fix_phase_gauge(Fu);
            if (diag) {
                diag->window_used = w;
                diag->support = v;
                diag->schmidt_ratio = ratio;
                diag->unitarity = polar_dev;
            }
            LocalOperator out = LocalOperator::from_matrix(chain, v, std::move(Fu));
            out.unitary_flag = true;
            return out;
        }
        v = v.fatten(1).clip(chain.sites());
    }
    throw NumericalError("localize_circuit_unitary: not localizable (" + last_err + ")");
}

LocalOperator localize_inner_automorphism(const ActionOracle& action, const Interval& window,
                                          const ChainSpec& chain, double tol) {
    long long dv = chain.window_dim(window);
    if (dv * dv > 1 << 16)
        throw CapExceededError("localize_inner_automorphism: window too large for constraint solve");
    auto basis = matrix_unit_basis(chain, window);
    // compress an action output back onto the window (exact when the action
    // maps the window algebra to itself)
    auto compress = [&](const LocalOperator& x) -> Mat {
        if (x.support == window) return x.mat;
        Interval u = x.support.unite(window);
        LocalOperator cur = embed(x, u, chain);
        long long dout = 1;
        if (u.lo < window.lo) {
            for (int s = u.lo; s < window.lo; ++s) dout *= chain.dim(s);
            cur = partial_trace(cur, Interval(u.lo, window.lo - 1));
        }
        if (u.hi > window.hi) {
            for (int s = window.hi + 1; s <= u.hi; ++s) dout *= chain.dim(s);
            cur = partial_trace(cur, Interval(window.hi + 1, u.hi));
        }
        return cur.mat / static_cast<double>(dout);
    };

    Mat N = Mat::Zero(dv * dv, dv * dv);
    Mat I = Mat::Identity(dv, dv);
    for (const auto& b : basis) {
        Mat A = compress(action(b));
        // C_k = I (x) A - B^T (x) I acting on column-stacked vec(F)
        Mat Ck = Mat::Zero(dv * dv, dv * dv);
        for (long long p = 0; p < dv; ++p)
            for (long long q = 0; q < dv; ++q)
                for (long long r = 0; r < dv; ++r) {
                    Ck(p * dv + r, p * dv + q) += A(r, q);       // (I (x) A)
                }
        for (long long p = 0; p < dv; ++p)
            for (long long q = 0; q < dv; ++q)
                for (long long r = 0; r < dv; ++r) {
                    Ck(q * dv + r, p * dv + r) -= b.mat(p, q);   // (B^T (x) I)
                }
        N += Ck.adjoint() * Ck;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(N);
    const auto& ev = es.eigenvalues();
    double scale = std::max(1.0, ev(ev.size() - 1));
    int nullspace = 0;
    for (int i = 0; i < ev.size(); ++i)
        if (ev(i) < 1e-8 * scale) ++nullspace;
    if (nullspace == 0)
        throw NumericalError("localize_inner_automorphism: window too small / not inner here");
    if (nullspace > 1)
        throw NumericalError("localize_inner_automorphism: ambiguous localization");
    Eigen::VectorXcd vecF = es.eigenvectors().col(0);
    Mat F(dv, dv);
    for (long long col = 0; col < dv; ++col)
        for (long long row = 0; row < dv; ++row) F(row, col) = vecF(col * dv + row);
    F *= std::sqrt(static_cast<double>(dv));
    double dev = 0;
    Mat Fu = polar_unitary(F, &dev);
    // verify against the action on the basis
    double worst = 0;
    for (const auto& b : basis) {
        Mat A = compress(action(b));
        worst = std::max(worst, (Fu * b.mat * Fu.adjoint() - A).cwiseAbs().maxCoeff());
    }
    if (worst > tol)
        throw NumericalError(
            "localize_inner_automorphism: not implementable by a unitary at this tolerance (residual " +
            std::to_string(worst) + ")");
    fix_phase_gauge(Fu);
    LocalOperator out = LocalOperator::from_matrix(chain, window, std::move(Fu));
    out.unitary_flag = true;
    return out;
}

}  // namespace qsym
