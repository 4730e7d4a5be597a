#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsym/cochain.hpp"
#include "qsym/intmat.hpp"

namespace qsym {

// Hard cap on cochain coordinates for differential-matrix computations.
inline constexpr long long kCochainCoordCap = 2'000'000;

// Integer matrix D of the differential C^n -> C^(n+1) in log space:
// rows indexed by (n+1)-tuples x module coords, columns by n-tuples x coords;
// for any angle vector x, angles of delta(x) equal D x (mod 1 irrelevant here).
IMat coboundary_matrix(const GroupPtr& g, int degree, const ModuleSpec& module);

// Same differential restricted to the normalized subcomplex (cochains that
// vanish whenever some argument is the identity). Computes the same cohomology.
IMat coboundary_matrix_normalized(const GroupPtr& g, int degree, const ModuleSpec& module);

// Basis of {v in Z^rows(D) : v^T D = 0}, canonical (row HNF); one row per vector.
IMat integer_kernel_basis(const IMat& D);

// Gauge-rigid identification data for a (twisted) cohomology class: exact
// pairings of the cocycle's angles against an integer basis of the left
// kernel of the lower differential.
struct ClassFingerprint {
    std::vector<Rat> pairings;
    std::uint64_t basis_id = 0;

    bool is_trivial() const {
        for (const auto& p : pairings)
            if (!p.mod1().is_zero()) return false;
        return true;
    }
};

ClassFingerprint class_fingerprint(const Cochain& c, double tol = 1e-6);
bool classes_equal(const ClassFingerprint& a, const ClassFingerprint& b);
// Componentwise sum / negation mod 1 (fingerprints form a group under these).
ClassFingerprint fingerprint_add(const ClassFingerprint& a, const ClassFingerprint& b);
ClassFingerprint fingerprint_neg(const ClassFingerprint& a);

// H^n(G, M) with U(1) coefficients, computed exactly: invariant factors plus
// exact normalized representative cocycles with denominators dividing |G|.
struct CohomologyGroup {
    GroupPtr group;
    int degree = 0;
    ModuleSpec module;
    std::vector<long long> invariant_factors;  // nontrivial factors d1 | d2 | ...
    std::vector<Cochain> representatives;      // one exact cocycle per factor

    long long order() const {
        long long n = 1;
        for (long long f : invariant_factors) n *= f;
        return n;
    }
    // All |H| classes as exact cocycles, ordered lexicographically over the
    // exponent vectors (a_1, ..., a_k), a_i in [0, d_i).
    std::vector<Cochain> all_class_representatives() const;
    std::vector<ClassFingerprint> all_class_fingerprints() const;
};

CohomologyGroup enumerate_classes(const GroupPtr& g, int degree, const ModuleSpec& module);

// Index of the enumerated class whose fingerprint matches, or nullopt.
std::optional<int> match_class(const ClassFingerprint& f, const CohomologyGroup& h);

// The quotient K = H^1(G, U(1)[G^2]) / iota(H^1(G, U(1)[G])), with enough
// retained state to place a twisted 1-cocycle into the quotient.
struct KQuotient {
    GroupPtr group;
    CohomologyGroup kgroup;     // factors + representatives of K itself
    CohomologyGroup h1_full;    // H^1(G, U(1)[G^2]) for fingerprint matching
    LatticeQuotient quotient;   // L1 / L2 with L2 the trivial-in-K lattice
    std::vector<std::vector<Int>> h1_class_vectors;  // lattice point per h1 class

    // Class coordinates in K of a twisted 1-cocycle (exact or numeric).
    std::vector<long long> classify(const Cochain& mu, double tol = 1e-6) const;
    bool is_trivial_class(const std::vector<long long>& coords) const {
        for (long long c : coords)
            if (c != 0) return false;
        return true;
    }
};

KQuotient quotient_K(const GroupPtr& g);

// Solve A xi = target (mod 1) over real xi: integer-shift cleanup against the
// canonical left kernel, then least squares. ok is false when the target is
// not in the image lattice at the given tolerance.
struct Mod1Solve {
    bool ok = false;
    std::vector<double> xi;
    double residual = 0.0;      // post-substitution residual
    double shift_residual = 0;  // distance of kernel pairings from integers
};
Mod1Solve solve_mod1(const IMat& A, const std::vector<double>& target, double tol);

// Expansion matrix mapping functions on conjugation orbits of G^degree to
// full tuple space (simultaneous conjugation on all arguments).
IMat orbit_expansion_matrix(const GroupPtr& g, int degree);

}  // namespace qsym
