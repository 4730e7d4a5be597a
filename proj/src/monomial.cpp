#include "qsym/monomial.hpp"

namespace qsym {

std::optional<Monomial> monomial_from_dense(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return std::nullopt;
    long long d = m.rows();
    Monomial out;
    out.perm.assign(d, -1);
    out.phase.assign(d, cd(0, 0));
    for (long long j = 0; j < d; ++j) {
        long long row = -1;
        for (long long i = 0; i < d; ++i) {
            if (std::abs(m(i, j)) > tol) {
                if (row >= 0) return std::nullopt;  // second nonzero in column
                row = i;
            }
        }
        if (row < 0) return std::nullopt;  // zero column
        out.perm[j] = row;
        out.phase[j] = m(row, j);
    }
    return out;
}

}  // namespace qsym
