#include "qsym/cohomology.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qsym/errors.hpp"

namespace qsym {

namespace {

void check_cap(long long rows, long long cols) {
    if (rows > kCochainCoordCap || cols > kCochainCoordCap)
        throw CapExceededError("cohomology: cochain coordinate count exceeds cap");
}

// Shared assembly for the full and normalized differential matrices.
// keep(t) filters row tuples; col_of(tuple) maps a column tuple to its column
// index or -1 when the entry is dropped.
IMat assemble_coboundary(const FiniteGroup& G, int n, const ModuleSpec& module,
                         const std::vector<int>& row_tuples, const std::vector<int>& col_of_tuple,
                         int n_col_tuples) {
    int M = module.coord_count();
    long long rows = static_cast<long long>(row_tuples.size()) * M;
    long long cols = static_cast<long long>(n_col_tuples) * M;
    check_cap(rows, cols);
    IMat D(static_cast<int>(rows), static_cast<int>(cols));
    std::vector<int> sub(n);
    for (size_t ri = 0; ri < row_tuples.size(); ++ri) {
        std::vector<int> t = tuple_unindex(G, n + 1, row_tuples[ri]);
        for (int m = 0; m < M; ++m) {
            long long row = static_cast<long long>(ri) * M + m;
            auto add = [&](const std::vector<int>& s, int coord, int sign) {
                int ci = col_of_tuple[tuple_index(G, s)];
                if (ci < 0) return;
                D.at(static_cast<int>(row), ci * M + coord) += sign;
            };
            sub.assign(t.begin() + 1, t.end());
            add(sub, module.act(t[0], m), +1);
            for (int j = 1; j <= n; ++j) {
                sub.clear();
                for (int i = 0; i < n + 1; ++i) {
                    if (i == j) continue;
                    int v = t[i];
                    if (i == j - 1) v = G.mul(t[j - 1], t[j]);
                    sub.push_back(v);
                }
                add(sub, m, j % 2 == 1 ? -1 : +1);
            }
            sub.assign(t.begin(), t.end() - 1);
            add(sub, m, (n + 1) % 2 == 1 ? -1 : +1);
        }
    }
    return D;
}

bool tuple_has_identity(const FiniteGroup& G, int degree, int idx) {
    for (int i = 0; i < degree; ++i) {
        if (idx % G.order == G.identity) return true;
        idx /= G.order;
    }
    return false;
}

std::vector<int> normalized_tuples(const FiniteGroup& G, int degree) {
    std::vector<int> out;
    long long nt = tuple_count(G, degree);
    for (long long i = 0; i < nt; ++i)
        if (!tuple_has_identity(G, degree, static_cast<int>(i))) out.push_back(static_cast<int>(i));
    return out;
}

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t fingerprint_basis_id(const FiniteGroup& G, int degree, const ModuleSpec& module,
                                   const IMat& K) {
    std::uint64_t h = 14695981039346656037ULL;
    h = fnv1a(h, static_cast<std::uint64_t>(G.order));
    for (int v : G.mul_table) h = fnv1a(h, static_cast<std::uint64_t>(v));
    h = fnv1a(h, static_cast<std::uint64_t>(degree));
    h = fnv1a(h, static_cast<std::uint64_t>(module.kind));
    h = fnv1a(h, static_cast<std::uint64_t>(K.rows));
    h = fnv1a(h, static_cast<std::uint64_t>(K.cols));
    for (const Int& v : K.a) h = fnv1a(h, static_cast<std::uint64_t>(static_cast<long long>(v)));
    return h;
}

long long to_ll(const Int& v) {
    if (v > INT64_MAX || v < INT64_MIN) throw NumericalError("integer out of int64 range");
    return static_cast<long long>(v);
}

Eigen::MatrixXd to_dense(const IMat& A) {
    Eigen::MatrixXd m(A.rows, A.cols);
    for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) m(r, c) = static_cast<double>(A.at(r, c));
    return m;
}

}  // namespace

IMat coboundary_matrix(const GroupPtr& g, int degree, const ModuleSpec& module) {
    const FiniteGroup& G = *g;
    int M = module.coord_count();
    if (degree < 0) return IMat(static_cast<int>(tuple_count(G, degree + 1)) * M, 0);
    long long nt_row = tuple_count(G, degree + 1);
    long long nt_col = tuple_count(G, degree);
    std::vector<int> row_tuples(nt_row);
    for (long long i = 0; i < nt_row; ++i) row_tuples[i] = static_cast<int>(i);
    std::vector<int> col_of(nt_col);
    for (long long i = 0; i < nt_col; ++i) col_of[i] = static_cast<int>(i);
    return assemble_coboundary(G, degree, module, row_tuples, col_of, static_cast<int>(nt_col));
}

IMat coboundary_matrix_normalized(const GroupPtr& g, int degree, const ModuleSpec& module) {
    const FiniteGroup& G = *g;
    int M = module.coord_count();
    if (degree < 0) return IMat(static_cast<int>(normalized_tuples(G, degree + 1).size()) * M, 0);
    std::vector<int> rows = normalized_tuples(G, degree + 1);
    std::vector<int> cols = normalized_tuples(G, degree);
    std::vector<int> col_of(tuple_count(G, degree), -1);
    for (size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = static_cast<int>(i);
    return assemble_coboundary(G, degree, module, rows, col_of, static_cast<int>(cols.size()));
}

IMat integer_kernel_basis(const IMat& D) {
    IMat K = left_kernel_basis(D);
    if (K.rows == 0) return IMat(0, D.rows);
    return hnf_row_canonical(K);
}

ClassFingerprint class_fingerprint(const Cochain& c, double tol) {
    const GroupPtr& g = c.module.group;
    IMat D = coboundary_matrix(g, c.degree - 1, c.module);
    IMat K = integer_kernel_basis(D);
    ClassFingerprint f;
    f.basis_id = fingerprint_basis_id(*g, c.degree, c.module, K);
    f.pairings.reserve(K.rows);
    long long m = g->order;
    if (c.all_exact()) {
        for (int r = 0; r < K.rows; ++r) {
            Rat acc(0);
            for (int j = 0; j < K.cols; ++j) {
                const Int& kv = K.at(r, j);
                if (kv == 0) continue;
                acc = (acc + Rat(to_ll(kv)) * c.values[j].r).mod1();
            }
            acc = acc.mod1();
            if (m % acc.den != 0)
                throw NumericalError("class_fingerprint: pairing denominator does not divide |G|");
            f.pairings.push_back(acc);
        }
    } else {
        for (int r = 0; r < K.rows; ++r) {
            double acc = 0;
            for (int j = 0; j < K.cols; ++j) {
                const Int& kv = K.at(r, j);
                if (kv == 0) continue;
                acc += static_cast<double>(to_ll(kv)) * c.values[j].value();
            }
            double residual = 0;
            Rat p = round_to_denominator(acc, m, &residual);
            if (residual >= tol)
                throw NumericalError("class_fingerprint: not a cocycle class at this tolerance (residual " +
                                     std::to_string(residual) + ")");
            f.pairings.push_back(p);
        }
    }
    return f;
}

bool classes_equal(const ClassFingerprint& a, const ClassFingerprint& b) {
    if (a.basis_id != b.basis_id)
        throw PreconditionError("classes_equal: fingerprint basis mismatch");
    return a.pairings == b.pairings;
}

ClassFingerprint fingerprint_add(const ClassFingerprint& a, const ClassFingerprint& b) {
    if (a.basis_id != b.basis_id)
        throw PreconditionError("fingerprint_add: fingerprint basis mismatch");
    ClassFingerprint out = a;
    for (size_t i = 0; i < out.pairings.size(); ++i)
        out.pairings[i] = (a.pairings[i] + b.pairings[i]).mod1();
    return out;
}

ClassFingerprint fingerprint_neg(const ClassFingerprint& a) {
    ClassFingerprint out = a;
    for (auto& p : out.pairings) p = (-p).mod1();
    return out;
}

std::vector<Cochain> CohomologyGroup::all_class_representatives() const {
    std::vector<Cochain> out;
    int k = static_cast<int>(invariant_factors.size());
    std::vector<long long> a(k, 0);
    for (;;) {
        Cochain c = Cochain::zero(degree, module);
        for (int i = 0; i < k; ++i)
            for (long long rep = 0; rep < a[i]; ++rep) c = cochain_add(c, representatives[i]);
        for (auto& v : c.values) v = PhaseAngle::make_exact(v.r.mod1());
        out.push_back(c);
        int i = k - 1;
        while (i >= 0 && a[i] + 1 == invariant_factors[i]) { a[i] = 0; --i; }
        if (i < 0) break;
        ++a[i];
    }
    return out;
}

std::vector<ClassFingerprint> CohomologyGroup::all_class_fingerprints() const {
    std::vector<ClassFingerprint> out;
    for (const Cochain& c : all_class_representatives()) out.push_back(class_fingerprint(c));
    return out;
}

CohomologyGroup enumerate_classes(const GroupPtr& g, int degree, const ModuleSpec& module) {
    const FiniteGroup& G = *g;
    Int m = G.order;
    IMat Dn = coboundary_matrix_normalized(g, degree, module);
    IMat Dn1 = coboundary_matrix_normalized(g, degree - 1, module);
    int N = Dn.cols;

    CohomologyGroup H;
    H.group = g;
    H.degree = degree;
    H.module = module;
    if (N == 0) return H;  // e.g. positive degree over the trivial group

    // cocycle lattice restricted to mu_m coefficients
    IMat L1 = congruence_lattice(Dn, m);
    // trivial-class lattice: integer shifts plus real coboundaries
    IMat mZ(N, N);
    for (int i = 0; i < N; ++i) mZ.at(i, i) = m;
    IMat L2 = lattice_sum({mZ, saturation_of_columns(Dn1)});
    LatticeQuotient q = lattice_quotient(L1, L2);

    std::vector<int> cols = normalized_tuples(G, degree);
    int M = module.coord_count();
    for (int i = 0; i < static_cast<int>(q.factors.size()); ++i) {
        if (q.factors[i] <= 1) continue;
        H.invariant_factors.push_back(to_ll(q.factors[i]));
        Cochain rep = Cochain::zero(degree, module);
        for (int j = 0; j < N; ++j) {
            const Int& num = q.adapted_basis.at(j, i);
            if (num == 0) continue;
            int t = cols[j / M], coord = j % M;
            rep.values[static_cast<size_t>(t) * M + coord] =
                PhaseAngle::make_exact(Rat(to_ll(num), G.order).mod1());
        }
        H.representatives.push_back(rep);
    }
    return H;
}

std::optional<int> match_class(const ClassFingerprint& f, const CohomologyGroup& h) {
    auto all = h.all_class_fingerprints();
    for (size_t i = 0; i < all.size(); ++i)
        if (classes_equal(f, all[i])) return static_cast<int>(i);
    return std::nullopt;
}

std::vector<long long> KQuotient::classify(const Cochain& mu, double tol) const {
    ClassFingerprint f = class_fingerprint(mu, tol);
    std::optional<int> idx = match_class(f, h1_full);
    if (!idx)
        throw NumericalError("KQuotient::classify: cocycle matches no enumerated H^1 class");
    std::vector<Int> z = quotient_coordinates(quotient, h1_class_vectors[*idx]);
    std::vector<long long> coords;
    for (size_t i = 0; i < z.size(); ++i) {
        if (quotient.factors[i] <= 1) continue;
        coords.push_back(to_ll(z[i]));
    }
    return coords;
}

KQuotient quotient_K(const GroupPtr& g) {
    const FiniteGroup& G = *g;
    Int m = G.order;
    ModuleSpec mod2{ModuleKind::U1OfG2, g};
    ModuleSpec mod1{ModuleKind::U1OfG, g};

    KQuotient K;
    K.group = g;
    K.h1_full = enumerate_classes(g, 1, mod2);

    IMat D1 = coboundary_matrix_normalized(g, 1, mod2);   // C^1(U1[G^2]) -> C^2
    IMat D0 = coboundary_matrix_normalized(g, 0, mod2);   // C^0 -> C^1
    int N = D1.cols;
    if (N == 0) {
        K.kgroup.group = g;
        K.kgroup.degree = 1;
        K.kgroup.module = mod2;
        return K;
    }

    // iota as an integer matrix on the normalized complexes
    IMat D1g = coboundary_matrix_normalized(g, 1, mod1);  // constraints making c a cocycle
    std::vector<int> tuples1 = normalized_tuples(G, 1);
    int Mg = mod1.coord_count(), Mg2 = mod2.coord_count();
    int Nc = static_cast<int>(tuples1.size()) * Mg;
    IMat Liota(N, Nc);
    for (size_t ti = 0; ti < tuples1.size(); ++ti) {
        int k = tuples1[ti];
        for (int gg = 0; gg < G.order; ++gg)
            for (int h = 0; h < G.order; ++h) {
                int row = static_cast<int>(ti) * Mg2 + gg * G.order + h;
                Liota.at(row, static_cast<int>(ti) * Mg + gg) += 1;
                Liota.at(row, static_cast<int>(ti) * Mg + h) += 1;
                Liota.at(row, static_cast<int>(ti) * Mg + G.mul(gg, h)) -= 1;
            }
        (void)k;
    }

    // stacked system: y/m = D0 nu + Liota c + n with D1g c = 0 (mod 1)
    IMat top = D0.hcat(Liota);
    IMat bottom = IMat(D1g.rows, D0.cols).hcat(D1g);
    IMat A = top.vcat(bottom);
    IMat KA = integer_kernel_basis(A);  // rows: invariant pairing vectors on (y-block, 0)
    IMat K1 = KA.submatrix_cols(0, N);

    IMat L1 = congruence_lattice(coboundary_matrix_normalized(g, 1, mod2), m);
    IMat L2 = congruence_lattice(K1, m);
    K.quotient = lattice_quotient(L1, L2);

    K.kgroup.group = g;
    K.kgroup.degree = 1;
    K.kgroup.module = mod2;
    std::vector<int> cols = normalized_tuples(G, 1);
    for (int i = 0; i < static_cast<int>(K.quotient.factors.size()); ++i) {
        if (K.quotient.factors[i] <= 1) continue;
        K.kgroup.invariant_factors.push_back(to_ll(K.quotient.factors[i]));
        Cochain rep = Cochain::zero(1, mod2);
        for (int j = 0; j < N; ++j) {
            const Int& num = K.quotient.adapted_basis.at(j, i);
            if (num == 0) continue;
            int t = cols[j / Mg2], coord = j % Mg2;
            rep.values[static_cast<size_t>(t) * Mg2 + coord] =
                PhaseAngle::make_exact(Rat(to_ll(num), G.order).mod1());
        }
        K.kgroup.representatives.push_back(rep);
    }

    // lattice vectors of each enumerated H^1 class for later identification
    std::vector<int> col_of(tuple_count(G, 1), -1);
    for (size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = static_cast<int>(i);
    for (const Cochain& c : K.h1_full.all_class_representatives()) {
        std::vector<Int> y(N, 0);
        for (long long t = 0; t < tuple_count(G, 1); ++t) {
            if (col_of[t] < 0) continue;
            for (int coord = 0; coord < Mg2; ++coord) {
                const Rat& r = c.values[static_cast<size_t>(t) * Mg2 + coord].r;
                y[static_cast<size_t>(col_of[t]) * Mg2 + coord] = Int(r.num) * (G.order / r.den);
            }
        }
        K.h1_class_vectors.push_back(y);
    }
    return K;
}

Mod1Solve solve_mod1(const IMat& A, const std::vector<double>& target, double tol) {
    Mod1Solve out;
    if (static_cast<int>(target.size()) != A.rows)
        throw std::invalid_argument("solve_mod1: target size");
    IMat K = integer_kernel_basis(A);
    std::vector<double> shifted = target;
    if (K.rows > 0) {
        std::vector<Int> t(K.rows);
        double worst = 0;
        for (int r = 0; r < K.rows; ++r) {
            double acc = 0;
            for (int c = 0; c < K.cols; ++c)
                acc += static_cast<double>(to_ll(K.at(r, c))) * target[c];
            worst = std::max(worst, dist_to_integer(acc));
            t[r] = Int(std::llround(acc));
        }
        out.shift_residual = worst;
        if (worst > tol) return out;  // target lattice pairings are not integral
        std::vector<Int> n;
        if (!solve_integer(K, t, n)) return out;
        for (int i = 0; i < A.rows; ++i) shifted[i] -= static_cast<double>(to_ll(n[i]));
    }
    Eigen::MatrixXd Ad = to_dense(A);
    Eigen::VectorXd b(A.rows);
    for (int i = 0; i < A.rows; ++i) b(i) = shifted[i];
    Eigen::VectorXd xi = Ad.colPivHouseholderQr().solve(b);
    out.residual = (Ad * xi - b).lpNorm<Eigen::Infinity>();
    if (out.residual > tol) return out;
    out.ok = true;
    out.xi.assign(xi.data(), xi.data() + xi.size());
    return out;
}

IMat orbit_expansion_matrix(const GroupPtr& g, int degree) {
    const FiniteGroup& G = *g;
    long long nt = tuple_count(G, degree);
    std::vector<int> orbit_of(nt, -1);
    int orbits = 0;
    for (long long t = 0; t < nt; ++t) {
        if (orbit_of[t] >= 0) continue;
        int id = orbits++;
        std::vector<int> tu = tuple_unindex(G, degree, static_cast<int>(t));
        for (int k = 0; k < G.order; ++k) {
            std::vector<int> ct(tu.size());
            for (size_t i = 0; i < tu.size(); ++i) ct[i] = G.conjugate(k, tu[i]);
            orbit_of[tuple_index(G, ct)] = id;
        }
    }
    IMat E(static_cast<int>(nt), orbits);
    for (long long t = 0; t < nt; ++t) E.at(static_cast<int>(t), orbit_of[t]) = 1;
    return E;
}

}  // namespace qsym
