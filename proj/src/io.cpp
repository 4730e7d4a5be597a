#include "qsym/io.hpp"

#include <fstream>
#include <sstream>

namespace qsym {

json group_to_json(const GroupPtr& g) {
    json j;
    j["name"] = g->name;
    j["order"] = g->order;
    std::vector<std::vector<int>> mul(g->order, std::vector<int>(g->order));
    for (int a = 0; a < g->order; ++a)
        for (int b = 0; b < g->order; ++b) mul[a][b] = g->mul(a, b);
    j["mul"] = mul;
    return j;
}

GroupPtr group_from_json(const json& j) {
    if (j.contains("cyclic")) return make_cyclic(j["cyclic"].get<int>());
    if (j.contains("product")) {
        const auto& p = j["product"];
        if (!p.is_array() || p.size() != 2)
            throw PreconditionError("group file: product needs two factors");
        return make_direct_product(group_from_json(p[0]), group_from_json(p[1]));
    }
    if (j.contains("mul")) {
        auto mul = j["mul"].get<std::vector<std::vector<int>>>();
        std::string name = j.value("name", "");
        return make_from_table(mul, name);
    }
    throw PreconditionError("group file: unrecognized format");
}

GroupPtr parse_groupspec(const std::string& spec) {
    if (spec == "trivial") return make_cyclic(1);
    if (spec.rfind("cyclic:", 0) == 0) return make_cyclic(std::stoi(spec.substr(7)));
    if (spec.rfind("product:", 0) == 0) {
        std::string rest = spec.substr(8);
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw PreconditionError("groupspec: product needs two comma-separated factors");
        return make_direct_product(parse_groupspec(rest.substr(0, comma)),
                                   parse_groupspec(rest.substr(comma + 1)));
    }
    return group_from_json(read_json_file(spec));
}

ModuleSpec module_from_string(const std::string& name, const GroupPtr& g) {
    if (name == "U1") return {ModuleKind::TrivialU1, g};
    if (name == "U1[G]") return {ModuleKind::U1OfG, g};
    if (name == "U1[G^2]") return {ModuleKind::U1OfG2, g};
    throw PreconditionError("unknown module: " + name);
}

std::string module_to_string(const ModuleSpec& m) {
    switch (m.kind) {
        case ModuleKind::TrivialU1: return "U1";
        case ModuleKind::U1OfG: return "U1[G]";
        case ModuleKind::U1OfG2: return "U1[G^2]";
    }
    return "U1";
}

namespace {

std::vector<int> coord_unflatten(const ModuleSpec& m, int coord) {
    switch (m.kind) {
        case ModuleKind::TrivialU1: return {};
        case ModuleKind::U1OfG: return {coord};
        case ModuleKind::U1OfG2: return {coord / m.group->order, coord % m.group->order};
    }
    return {};
}

int coord_flatten(const ModuleSpec& m, const std::vector<int>& c) {
    switch (m.kind) {
        case ModuleKind::TrivialU1: return 0;
        case ModuleKind::U1OfG: return c.at(0);
        case ModuleKind::U1OfG2: return c.at(0) * m.group->order + c.at(1);
    }
    return 0;
}

}  // namespace

json cochain_to_json(const Cochain& c) {
    json j;
    j["group"] = group_to_json(c.module.group);
    j["degree"] = c.degree;
    j["module"] = module_to_string(c.module);
    json vals = json::array();
    const FiniteGroup& G = *c.module.group;
    int M = c.module.coord_count();
    for (long long t = 0; t < tuple_count(G, c.degree); ++t)
        for (int m = 0; m < M; ++m) {
            const PhaseAngle& a = c.values[static_cast<size_t>(t) * M + m];
            if (a.exact && a.r.mod1().is_zero()) continue;
            json e;
            e["args"] = tuple_unindex(G, c.degree, static_cast<int>(t));
            e["coord"] = coord_unflatten(c.module, m);
            if (a.exact)
                e["angle"] = a.r.mod1().str();
            else
                e["angle"] = a.value();
            vals.push_back(e);
        }
    j["values"] = vals;
    return j;
}

Cochain cochain_from_json(const json& j) {
    GroupPtr g = group_from_json(j.at("group"));
    ModuleSpec mod = module_from_string(j.value("module", "U1"), g);
    Cochain c = Cochain::zero(j.at("degree").get<int>(), mod);
    for (const auto& e : j.at("values")) {
        std::vector<int> args = e.at("args").get<std::vector<int>>();
        std::vector<int> coord = e.value("coord", std::vector<int>{});
        int m = coord_flatten(mod, coord);
        if (e.at("angle").is_string())
            c.at(args, m) = PhaseAngle::make_exact(Rat::parse(e.at("angle").get<std::string>()));
        else
            c.at(args, m) = PhaseAngle::make_numeric(e.at("angle").get<double>(), 1e-6);
    }
    return c;
}

json fingerprint_to_json(const ClassFingerprint& f) {
    json j;
    std::ostringstream id;
    id << std::hex << f.basis_id;
    j["basis_id"] = id.str();
    json p = json::array();
    for (const Rat& r : f.pairings) p.push_back(r.mod1().str());
    j["pairings"] = p;
    return j;
}

json cohomology_group_to_json(const CohomologyGroup& h) {
    json j;
    j["group"] = group_to_json(h.group);
    j["degree"] = h.degree;
    j["module"] = module_to_string(h.module);
    j["invariant_factors"] = h.invariant_factors;
    json reps = json::array();
    for (const Cochain& c : h.representatives) reps.push_back(cochain_to_json(c));
    j["representatives"] = reps;
    j["order"] = h.order();
    return j;
}

namespace {

json chain_to_json(const ChainSpec& c) {
    json j;
    j["lo"] = c.lo;
    j["hi"] = c.hi;
    j["factors"] = c.factors;
    return j;
}

ChainSpec chain_from_json(const json& j) {
    ChainSpec c;
    c.lo = j.at("lo").get<int>();
    c.hi = j.at("hi").get<int>();
    if (j.contains("factors"))
        c.factors = j.at("factors").get<std::vector<std::vector<int>>>();
    else {
        auto dims = j.at("dims").get<std::vector<int>>();
        for (int d : dims) c.factors.push_back({d});
    }
    return c;
}

json gate_to_json(const Gate& g) {
    json j;
    j["support"] = {g.support.lo, g.support.hi};
    json m = json::array();
    for (long long r = 0; r < g.u.rows(); ++r)
        for (long long c = 0; c < g.u.cols(); ++c)
            m.push_back({g.u(r, c).real(), g.u(r, c).imag()});
    j["matrix"] = m;
    return j;
}

Gate gate_from_json(const json& j, const ChainSpec& chain) {
    Interval supp(j.at("support")[0].get<int>(), j.at("support")[1].get<int>());
    long long d = chain.window_dim(supp);
    Mat u(d, d);
    const auto& m = j.at("matrix");
    if (static_cast<long long>(m.size()) != d * d)
        throw PreconditionError("symmetry file: gate matrix size mismatch");
    for (long long r = 0; r < d; ++r)
        for (long long c = 0; c < d; ++c) {
            const auto& e = m[static_cast<size_t>(r * d + c)];
            u(r, c) = cd(e[0].get<double>(), e[1].get<double>());
        }
    return Gate(supp, std::move(u));
}

}  // namespace

json symmetry_to_json(const Symmetry& s) {
    json j;
    j["group"] = group_to_json(s.group);
    j["chain"] = chain_to_json(s.chain);
    j["range"] = s.range;
    json circs = json::array();
    for (const Circuit& c : s.circuits) {
        json layers = json::array();
        for (const Layer& l : c.layers) {
            json gates = json::array();
            for (const Gate& g : l.gates) gates.push_back(gate_to_json(g));
            layers.push_back(gates);
        }
        circs.push_back(layers);
    }
    j["circuits"] = circs;
    return j;
}

Symmetry symmetry_from_json(const json& j) {
    if (j.contains("builder")) {
        const json& b = j["builder"];
        std::string kind = b.at("kind").get<std::string>();
        ChainSpec chain = chain_from_json(j.at("chain"));
        if (kind == "cz") return build_cz_symmetry(chain);
        if (kind == "trivial") {
            GroupPtr g = group_from_json(j.at("group"));
            return build_trivial_symmetry(g, chain);
        }
        if (kind == "cocycle") {
            Cochain omega = cochain_from_json(b.contains("omega_inline")
                                                  ? b.at("omega_inline")
                                                  : read_json_file(b.at("omega").get<std::string>()));
            return build_cocycle_symmetry(omega.module.group, omega, chain);
        }
        if (kind == "onsite") {
            GroupPtr g = group_from_json(j.at("group"));
            std::string rep = b.value("rep", "regular");
            int site = b.value("site", chain.lo);
            OnsiteKind k = rep == "adjoint" ? OnsiteKind::Adjoint : OnsiteKind::Regular;
            return build_onsite_representation(g, k, chain, site);
        }
        throw PreconditionError("symmetry file: unknown builder " + kind);
    }
    Symmetry s;
    s.group = group_from_json(j.at("group"));
    s.chain = chain_from_json(j.at("chain"));
    s.range = j.value("range", 1);
    for (const auto& circ : j.at("circuits")) {
        Circuit c;
        c.declared_range = s.range;
        for (const auto& layer : circ) {
            Layer l;
            for (const auto& g : layer) l.gates.push_back(gate_from_json(g, s.chain));
            c.add_layer(std::move(l));
        }
        s.circuits.push_back(std::move(c));
    }
    if (static_cast<int>(s.circuits.size()) != s.group->order)
        throw PreconditionError("symmetry file: need one circuit per group element");
    return s;
}

json operator_to_json(const LocalOperator& op) {
    json j;
    j["support"] = {op.support.lo, op.support.hi};
    j["dims"] = op.dims;
    json m = json::array();
    for (long long r = 0; r < op.mat.rows(); ++r)
        for (long long c = 0; c < op.mat.cols(); ++c)
            m.push_back({op.mat(r, c).real(), op.mat(r, c).imag()});
    j["matrix"] = m;
    return j;
}

namespace {

json raw_angles_json(const Cochain& c) {
    json a = json::array();
    for (const auto& v : c.values) a.push_back(v.value());
    return a;
}

}  // namespace

json anomaly_report_to_json(const AnomalyReport& r) {
    json j;
    j["raw_omega"] = {{"degree", 3},
                      {"module", "U1"},
                      {"angles", raw_angles_json(r.raw_omega)}};
    j["fingerprint"] = fingerprint_to_json(r.fingerprint);
    j["matched_class"] = r.matched_class;
    j["residual"] = r.residual;
    j["unimodularity"] = r.unimodularity;
    j["window"] = {r.window.lo, r.window.hi};
    return j;
}

json obstruction_report_to_json(const ObstructionReport& r) {
    json j;
    j["raw_lambda"] = {{"degree", 2},
                       {"module", "U1[G]"},
                       {"angles", raw_angles_json(r.raw_lambda)}};
    j["fingerprint"] = fingerprint_to_json(r.fingerprint);
    j["residual"] = r.residual;
    j["unimodularity"] = r.unimodularity;
    j["window"] = {r.window.lo, r.window.hi};
    return j;
}

json mu_report_to_json(const MuReport& r) {
    json j;
    j["raw_mu"] = {{"degree", 1}, {"module", "U1[G^2]"}, {"angles", raw_angles_json(r.raw_mu)}};
    j["k_class"] = r.k_class;
    j["trivial_class"] = r.trivial_class;
    j["residual"] = r.residual;
    j["unimodularity"] = r.unimodularity;
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw PreconditionError("cannot write " + path);
    f << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot read " + path);
    json j;
    f >> j;
    return j;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace qsym
