#pragma once

#include <map>

#include "qsym/cohomology.hpp"
#include "qsym/localize.hpp"
#include "qsym/symmetry.hpp"

namespace qsym {

// Localized unitaries witnessing the failure of a restriction to be a
// homomorphism: Ad[phi(g,h)] = a_>=(g) o a_>=(h) o a_>=(gh)^-1.
struct FusionTable {
    GroupPtr group;
    std::map<std::pair<int, int>, LocalOperator> phi;
    LocalizeDiag diag;  // of the widest localization

    const LocalOperator& at(int g, int h) const { return phi.at({g, h}); }
    LocalOperator& at(int g, int h) { return phi.at({g, h}); }
};

// Localized unitaries witnessing the failure of covariance:
// Ad[theta_g(k)] = a(k) o a_>=(k^-1 g k) o a(k^-1) o a_>=(g)^-1.
struct CrossingTable {
    GroupPtr group;
    std::map<std::pair<int, int>, LocalOperator> theta;  // key (g, k)
    LocalizeDiag diag;

    const LocalOperator& at(int g, int k) const { return theta.at({g, k}); }
    LocalOperator& at(int g, int k) { return theta.at({g, k}); }
};

struct AnomalyReport {
    Cochain raw_omega;          // numeric 3-cochain, trivial coefficients
    ClassFingerprint fingerprint;
    int matched_class = -1;     // index into enumerate_classes(G, 3, U1)
    double residual = 0;        // cocycle residual of raw_omega
    double unimodularity = 0;   // worst | |trace ratio| - 1 |
    Interval window;
};

struct ObstructionReport {
    Cochain raw_lambda;         // numeric twisted 2-cochain over U(1)[G]
    ClassFingerprint fingerprint;
    double residual = 0;
    double unimodularity = 0;
    Interval window;
};

struct MuReport {
    Cochain raw_mu;             // numeric twisted 1-cochain over U(1)[G^2]
    std::vector<long long> k_class;  // coordinates in the quotient K
    bool trivial_class = false;
    double residual = 0;
    double unimodularity = 0;
};

struct EngineOptions {
    double localize_tol = 1e-6;
    double unimod_tol = 1e-6;
    long long dense_cap = 4096;
};

FusionTable fusion_operators(const RightRestriction& r, const EngineOptions& opt = {});

CrossingTable crossing_operators(const Symmetry& s, const RightRestriction& r,
                                 const EngineOptions& opt = {});

// omega(f,g,h) = tr(S^H T)/dim, T = phi(f,g) phi(fg,h),
// S = a_>=(f)(phi(g,h)) phi(f,gh).
AnomalyReport extract_anomaly(const Symmetry& s, int site, const EngineOptions& opt = {});
AnomalyReport anomaly_from_fusion(const RightRestriction& r, const FusionTable& f,
                                  const EngineOptions& opt = {});

// lambda_g(k,l) = tr(S^H T)/dim, T = a(k)(theta_{k^-1 g k}(l)) theta_g(k),
// S = theta_g(kl).
ObstructionReport extract_obstruction(const Symmetry& s, int site, const EngineOptions& opt = {});
ObstructionReport obstruction_from_crossing(const Symmetry& s, const CrossingTable& c,
                                            const EngineOptions& opt = {});

// mu_{g,h}(k) = tr(phi(g,h)^H a(k)(phi(k^-1 g k, k^-1 h k)))/dim for a
// covariant restriction; class taken in the quotient K.
MuReport compute_mu(const Symmetry& s, const FusionTable& f, const KQuotient& K,
                    const EngineOptions& opt = {});

// Partial-trace identity of the CZ chain: trace over the 2b-site block
// [1-b, b] of U_[-a,a] against 2^b U_[-a,-b] CZ_{-b,b+1} U_[b+1,a].
bool cz_partial_trace_check(int a, int b, double tol = 1e-10, double* deviation = nullptr);

// Operator Schmidt rank of U_[-a,a] across the central 0|1 cut (expected 2).
int cz_nonfactorizability_witness(int a);

// The CZ product unitary on [lo, hi] as a diagonal local operator.
LocalOperator cz_product_unitary(const ChainSpec& chain, const Interval& interval);

}  // namespace qsym
