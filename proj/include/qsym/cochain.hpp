#pragma once

#include <cmath>
#include <vector>

#include "qsym/group.hpp"
#include "qsym/rational.hpp"

namespace qsym {

// U(1) value kept in log space: an angle mod 1, either exact (rational) or
// numeric with an attached tolerance.
struct PhaseAngle {
    bool exact = true;
    Rat r;            // valid when exact
    double x = 0.0;   // valid when !exact
    double tol = 0.0;

    PhaseAngle() = default;
    static PhaseAngle make_exact(const Rat& v) {
        PhaseAngle p;
        p.exact = true;
        p.r = v.mod1();
        return p;
    }
    static PhaseAngle make_numeric(double v, double tolerance) {
        PhaseAngle p;
        p.exact = false;
        p.x = v - std::floor(v);
        p.tol = tolerance;
        return p;
    }

    double value() const { return exact ? r.to_double() : x; }

    PhaseAngle operator+(const PhaseAngle& o) const;
    PhaseAngle operator-(const PhaseAngle& o) const;
    PhaseAngle operator-() const;
    // distance of the angle to the nearest integer (exactly 0 for exact zeros)
    double int_distance() const;
};

enum class ModuleKind { TrivialU1, U1OfG, U1OfG2 };

// Coefficient module for twisted cohomology. The kind fixes the index set of
// module coordinates (1, |G| or |G|^2) and the conjugation action on them.
struct ModuleSpec {
    ModuleKind kind = ModuleKind::TrivialU1;
    GroupPtr group;

    int coord_count() const {
        switch (kind) {
            case ModuleKind::TrivialU1: return 1;
            case ModuleKind::U1OfG: return group->order;
            case ModuleKind::U1OfG2: return group->order * group->order;
        }
        return 1;
    }
    // coordinate read off by the action of k: (k.lambda)_c = lambda_{act(k,c)}
    int act(int k, int c) const {
        switch (kind) {
            case ModuleKind::TrivialU1: return 0;
            case ModuleKind::U1OfG: return group->conjugate(k, c);
            case ModuleKind::U1OfG2: {
                int m = group->order;
                return group->conjugate(k, c / m) * m + group->conjugate(k, c % m);
            }
        }
        return 0;
    }
};

// Tuple <-> flat index, first argument most significant.
int tuple_index(const FiniteGroup& g, const std::vector<int>& t);
std::vector<int> tuple_unindex(const FiniteGroup& g, int degree, int idx);
long long tuple_count(const FiniteGroup& g, int degree);

// A degree-n cochain with values in the module, fully populated.
// Flat layout: index = tuple_index * coord_count + coord.
struct Cochain {
    int degree = 0;
    ModuleSpec module;
    std::vector<PhaseAngle> values;

    static Cochain zero(int degree, const ModuleSpec& mod);
    long long size() const { return static_cast<long long>(values.size()); }

    PhaseAngle& at(const std::vector<int>& args, int coord = 0);
    const PhaseAngle& at(const std::vector<int>& args, int coord = 0) const;

    bool all_exact() const;
    std::vector<double> angles() const;
    double max_tol() const;
};

// The differential in log space, alternating-sum formula with the module
// action permuting coordinates.
Cochain coboundary(const Cochain& c);

// True iff every angle of coboundary(c) is within tol of an integer.
// Exact cochains are tested with tol = 0 when tol < 0 is passed.
bool is_cocycle(const Cochain& c, double tol = -1.0);
double cocycle_residual(const Cochain& c);

// tau(omega)_g(k,l) = omega(g,k,l) omega(k,l,l^-1 k^-1 g k l) / omega(k, k^-1 g k, l)
// for a 3-cocycle omega with trivial coefficients; lands in degree 2 over U(1)[G].
Cochain slant_product(const Cochain& omega);

// iota(theta)_{g,h}(k) = theta_g(k) theta_h(k) / theta_{gh}(k),
// degree-1 U(1)[G] -> degree-1 U(1)[G^2].
Cochain iota(const Cochain& theta);

Cochain cochain_add(const Cochain& a, const Cochain& b);
Cochain cochain_neg(const Cochain& a);

}  // namespace qsym
