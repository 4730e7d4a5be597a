#pragma once

#include <optional>

#include "qsym/local_op.hpp"

namespace qsym {

// Generalized permutation matrix: U e_j = phase[j] * e_{perm[j]}.
// Products of diagonal and permutation gates stay in this class, which keeps
// window products of the builder circuits linear in the window dimension.
struct Monomial {
    std::vector<long long> perm;
    std::vector<cd> phase;

    long long dim() const { return static_cast<long long>(perm.size()); }

    static Monomial identity(long long d) {
        Monomial m;
        m.perm.resize(d);
        m.phase.assign(d, cd(1.0, 0.0));
        for (long long i = 0; i < d; ++i) m.perm[i] = i;
        return m;
    }

    // this * other (matrix product)
    Monomial compose(const Monomial& other) const {
        Monomial out;
        long long d = dim();
        out.perm.resize(d);
        out.phase.resize(d);
        for (long long j = 0; j < d; ++j) {
            long long k = other.perm[j];
            out.perm[j] = perm[k];
            out.phase[j] = other.phase[j] * phase[k];
        }
        return out;
    }

    Monomial dagger() const {
        Monomial out;
        long long d = dim();
        out.perm.resize(d);
        out.phase.resize(d);
        for (long long j = 0; j < d; ++j) {
            out.perm[perm[j]] = j;
            out.phase[perm[j]] = std::conj(phase[j]);
        }
        return out;
    }

    Mat to_dense() const {
        long long d = dim();
        Mat m = Mat::Zero(d, d);
        for (long long j = 0; j < d; ++j) m(perm[j], j) = phase[j];
        return m;
    }

    // Embed into a window: identity on dl dimensions left, dr right.
    Monomial embed(long long dl, long long dr) const {
        long long dm = dim();
        Monomial out;
        out.perm.resize(dl * dm * dr);
        out.phase.resize(dl * dm * dr);
        for (long long l = 0; l < dl; ++l)
            for (long long m = 0; m < dm; ++m) {
                long long base_in = (l * dm + m) * dr;
                long long base_out = (l * dm + perm[m]) * dr;
                for (long long r = 0; r < dr; ++r) {
                    out.perm[base_in + r] = base_out + r;
                    out.phase[base_in + r] = phase[m];
                }
            }
        return out;
    }
};

// Detect a monomial structure in a dense matrix (one nonzero per column).
std::optional<Monomial> monomial_from_dense(const Mat& m, double tol = 1e-12);

}  // namespace qsym
