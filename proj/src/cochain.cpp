#include "qsym/cochain.hpp"

#include <stdexcept>

namespace qsym {

PhaseAngle PhaseAngle::operator+(const PhaseAngle& o) const {
    if (exact && o.exact) return make_exact(r + o.r);
    return make_numeric(value() + o.value(), std::max(exact ? 0.0 : tol, o.exact ? 0.0 : o.tol));
}

PhaseAngle PhaseAngle::operator-(const PhaseAngle& o) const {
    if (exact && o.exact) return make_exact(r - o.r);
    return make_numeric(value() - o.value(), std::max(exact ? 0.0 : tol, o.exact ? 0.0 : o.tol));
}

PhaseAngle PhaseAngle::operator-() const {
    if (exact) return make_exact(-r);
    return make_numeric(-x, tol);
}

double PhaseAngle::int_distance() const {
    if (exact) return r.mod1().is_zero() ? 0.0 : dist_to_integer(r.to_double());
    return dist_to_integer(x);
}

int tuple_index(const FiniteGroup& g, const std::vector<int>& t) {
    int idx = 0;
    for (int v : t) idx = idx * g.order + v;
    return idx;
}

std::vector<int> tuple_unindex(const FiniteGroup& g, int degree, int idx) {
    std::vector<int> t(degree);
    for (int i = degree - 1; i >= 0; --i) {
        t[i] = idx % g.order;
        idx /= g.order;
    }
    return t;
}

long long tuple_count(const FiniteGroup& g, int degree) {
    long long n = 1;
    for (int i = 0; i < degree; ++i) n *= g.order;
    return n;
}

Cochain Cochain::zero(int degree, const ModuleSpec& mod) {
    Cochain c;
    c.degree = degree;
    c.module = mod;
    c.values.assign(tuple_count(*mod.group, degree) * mod.coord_count(), PhaseAngle::make_exact(Rat(0)));
    return c;
}

PhaseAngle& Cochain::at(const std::vector<int>& args, int coord) {
    return values[static_cast<size_t>(tuple_index(*module.group, args)) * module.coord_count() + coord];
}

const PhaseAngle& Cochain::at(const std::vector<int>& args, int coord) const {
    return values[static_cast<size_t>(tuple_index(*module.group, args)) * module.coord_count() + coord];
}

bool Cochain::all_exact() const {
    for (const auto& v : values)
        if (!v.exact) return false;
    return true;
}

std::vector<double> Cochain::angles() const {
    std::vector<double> a(values.size());
    for (size_t i = 0; i < values.size(); ++i) a[i] = values[i].value();
    return a;
}

double Cochain::max_tol() const {
    double t = 0;
    for (const auto& v : values)
        if (!v.exact) t = std::max(t, v.tol);
    return t;
}

Cochain coboundary(const Cochain& c) {
    const FiniteGroup& g = *c.module.group;
    int n = c.degree;
    int M = c.module.coord_count();
    Cochain out = Cochain::zero(n + 1, c.module);
    long long nt = tuple_count(g, n + 1);
    std::vector<int> sub(n);
    for (long long ti = 0; ti < nt; ++ti) {
        std::vector<int> t = tuple_unindex(g, n + 1, static_cast<int>(ti));
        for (int m = 0; m < M; ++m) {
            // leading term: g1 acting on the module coordinate
            sub.assign(t.begin() + 1, t.end());
            PhaseAngle acc = c.at(sub, c.module.act(t[0], m));
            // alternating middle terms with adjacent products
            for (int j = 1; j <= n; ++j) {
                sub.clear();
                for (int i = 0; i < n + 1; ++i) {
                    if (i == j) continue;
                    int v = t[i];
                    if (i == j - 1) v = g.mul(t[j - 1], t[j]);
                    sub.push_back(v);
                }
                const PhaseAngle& term = c.at(sub, m);
                acc = (j % 2 == 1) ? acc - term : acc + term;
            }
            // trailing term, sign (-1)^(n+1)
            sub.assign(t.begin(), t.end() - 1);
            const PhaseAngle& last = c.at(sub, m);
            acc = ((n + 1) % 2 == 1) ? acc - last : acc + last;
            out.values[static_cast<size_t>(ti) * M + m] = acc;
        }
    }
    return out;
}

double cocycle_residual(const Cochain& c) {
    Cochain d = coboundary(c);
    double r = 0;
    for (const auto& v : d.values) r = std::max(r, v.int_distance());
    return r;
}

bool is_cocycle(const Cochain& c, double tol) {
    if (tol < 0) tol = c.all_exact() ? 0.0 : 1e-6;
    return cocycle_residual(c) <= tol;
}

Cochain slant_product(const Cochain& omega) {
    if (omega.degree != 3 || omega.module.kind != ModuleKind::TrivialU1)
        throw std::invalid_argument("slant_product: need a degree-3 cochain over trivial U(1)");
    const FiniteGroup& G = *omega.module.group;
    ModuleSpec mod{ModuleKind::U1OfG, omega.module.group};
    Cochain tau = Cochain::zero(2, mod);
    for (int gg = 0; gg < G.order; ++gg)
        for (int k = 0; k < G.order; ++k)
            for (int l = 0; l < G.order; ++l) {
                int kgk = G.conjugate(k, gg);
                int lkgkl = G.conjugate(l, kgk);
                PhaseAngle v = omega.at({gg, k, l}) + omega.at({k, l, lkgkl}) - omega.at({k, kgk, l});
                tau.at({k, l}, gg) = v;
            }
    return tau;
}

Cochain iota(const Cochain& theta) {
    if (theta.degree != 1 || theta.module.kind != ModuleKind::U1OfG)
        throw std::invalid_argument("iota: need a degree-1 cochain over U(1)[G]");
    const FiniteGroup& G = *theta.module.group;
    ModuleSpec mod{ModuleKind::U1OfG2, theta.module.group};
    Cochain out = Cochain::zero(1, mod);
    for (int k = 0; k < G.order; ++k)
        for (int gg = 0; gg < G.order; ++gg)
            for (int h = 0; h < G.order; ++h)
                out.at({k}, gg * G.order + h) =
                    theta.at({k}, gg) + theta.at({k}, h) - theta.at({k}, G.mul(gg, h));
    return out;
}

Cochain cochain_add(const Cochain& a, const Cochain& b) {
    if (a.degree != b.degree || a.values.size() != b.values.size())
        throw std::invalid_argument("cochain_add: shape mismatch");
    Cochain out = a;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] + b.values[i];
    return out;
}

Cochain cochain_neg(const Cochain& a) {
    Cochain out = a;
    for (auto& v : out.values) v = -v;
    return out;
}

}  // namespace qsym
