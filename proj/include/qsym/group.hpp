#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsym {

struct GroupValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite group as a closed Cayley table. Immutable after construction;
// every constructor validates the full axiom set.
struct FiniteGroup {
    int order = 0;
    std::vector<int> mul_table;  // order x order, row-major: mul_table[a*order+b] = a*b
    int identity = 0;
    std::vector<int> inv_table;
    std::string name;

    int mul(int a, int b) const { return mul_table[static_cast<size_t>(a) * order + b]; }
    int inv(int a) const { return inv_table[a]; }
    // k^-1 g k, the conjugation underlying the U(1)[G] module action
    int conjugate(int k, int g) const { return mul(mul(inv(k), g), k); }

    int element_order(int g) const;
    bool is_abelian() const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Z_n with mul[a,b] = (a+b) mod n; rejects n = 0.
GroupPtr make_cyclic(int n);

// Componentwise product; element index g*|H| + h.
GroupPtr make_direct_product(const GroupPtr& g, const GroupPtr& h);

// Validates associativity, identity and inverses; distinct messages per failure.
GroupPtr make_from_table(const std::vector<std::vector<int>>& mul, const std::string& name = "");

}  // namespace qsym
