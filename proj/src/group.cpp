#include "qsym/group.hpp"

namespace qsym {

int FiniteGroup::element_order(int g) const {
    int x = g, n = 1;
    while (x != identity) {
        x = mul(x, g);
        ++n;
    }
    return n;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

namespace {

void validate(FiniteGroup& g) {
    int n = g.order;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int v = g.mul(a, b);
            if (v < 0 || v >= n) throw GroupValidationError("group table: entry out of range");
        }
    // two-sided identity
    int id = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            if (g.mul(e, a) != a || g.mul(a, e) != a) ok = false;
        if (ok) { id = e; break; }
    }
    if (id < 0) throw GroupValidationError("group table: no identity");
    g.identity = id;
    // inverses
    g.inv_table.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (g.mul(a, b) == id && g.mul(b, a) == id) { g.inv_table[a] = b; break; }
        if (g.inv_table[a] < 0) throw GroupValidationError("group table: missing inverse");
    }
    // associativity, exhaustive
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw GroupValidationError("group table: not associative");
    for (int a = 0; a < n; ++a)
        if (g.inv(g.inv(a)) != a) throw GroupValidationError("group table: inverse not involutive");
}

}  // namespace

GroupPtr make_cyclic(int n) {
    if (n < 1) throw GroupValidationError("make_cyclic: order must be >= 1");
    auto g = std::make_shared<FiniteGroup>();
    g->order = n;
    g->mul_table.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g->mul_table[static_cast<size_t>(a) * n + b] = (a + b) % n;
    g->name = n == 1 ? "trivial" : "Z" + std::to_string(n);
    validate(*g);
    return g;
}

GroupPtr make_direct_product(const GroupPtr& g, const GroupPtr& h) {
    int ng = g->order, nh = h->order, n = ng * nh;
    auto p = std::make_shared<FiniteGroup>();
    p->order = n;
    p->mul_table.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int a1 = a / nh, a2 = a % nh, b1 = b / nh, b2 = b % nh;
            p->mul_table[static_cast<size_t>(a) * n + b] = g->mul(a1, b1) * nh + h->mul(a2, b2);
        }
    p->name = g->name + "x" + h->name;
    validate(*p);
    return p;
}

GroupPtr make_from_table(const std::vector<std::vector<int>>& mul, const std::string& name) {
    int n = static_cast<int>(mul.size());
    if (n == 0) throw GroupValidationError("group table: empty");
    auto g = std::make_shared<FiniteGroup>();
    g->order = n;
    g->mul_table.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(mul[a].size()) != n) throw GroupValidationError("group table: not square");
        for (int b = 0; b < n; ++b) g->mul_table[static_cast<size_t>(a) * n + b] = mul[a][b];
    }
    g->name = name.empty() ? "G" + std::to_string(n) : name;
    validate(*g);
    return g;
}

}  // namespace qsym
