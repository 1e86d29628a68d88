#include "hopfu/families.hpp"

#include <algorithm>
#include <sstream>

#include "hopfu/error.hpp"

namespace hopfu::families {

using quadalg::Term;
using Rels = std::vector<std::vector<Term>>;

namespace {

constexpr std::uint32_t X1 = 0, X2 = 1, Y = 2;

Elem get(const Params& ps, const char* name) { return ps.at(name); }

std::int64_t wt(const Params& ps, const char* name) { return static_cast<std::int64_t>(ps.at(name)); }

bool zero_mod(std::int64_t v, std::uint32_t p) { return ((v % p) + p) % p == 0; }

Elem neg1(const Field& f) { return f.neg(1); }

// Drops zero-coefficient terms so that the printed form matches the relation.
Rels clean(Rels rels) {
    for (auto& r : rels) r.erase(std::remove_if(r.begin(), r.end(), [](const Term& t) { return t.coeff == 0; }), r.end());
    return rels;
}

Rels commutative_rels(const Field& f) {
    return {{{1, X2, X1}, {neg1(f), X1, X2}}, {{1, Y, X1}, {neg1(f), X1, Y}}, {{1, Y, X2}, {neg1(f), X2, Y}}};
}

ParamSlot weight(const char* n, const char* d) { return {n, ParamDomain::Weight, d}; }
ParamSlot unit(const char* n) { return {n, ParamDomain::Unit, "nonzero scalar"}; }
ParamSlot scalar(const char* n) { return {n, ParamDomain::Scalar, "scalar"}; }
ParamSlot bit(const char* n) { return {n, ParamDomain::Bit, "0 or 1"}; }

Constraint a_nonzero() {
    return {"a≠0", [](const Field&, const Params& ps) { return ps.at("a") != 0; }};
}

Constraint j_is_i_plus(std::int64_t s) {
    std::string text = s == 0 ? "i=j" : "j=i+" + std::to_string(s);
    return {text, [s](const Field& f, const Params& ps) { return zero_mod(wt(ps, "j") - wt(ps, "i") - s, f.characteristic()); }};
}

Constraint i_ne_j() {
    return {"i≠j", [](const Field& f, const Params& ps) { return !zero_mod(wt(ps, "i") - wt(ps, "j"), f.characteristic()); }};
}

std::vector<FamilySpec> build_catalog() {
    std::vector<FamilySpec> out;
    const auto wi = weight("i", "lowest weight of M(2,i) or M(3,i)");
    const auto wj = weight("j", "weight of the simple summand S_j");

    {
        FamilySpec s;
        s.id = "gl2";
        s.summary = "commutative polynomial ring in two variables, V = M(2,i)";
        s.shape = ModuleShape::M2;
        s.params = {wi};
        s.relations = {"x2x1 - x1x2 = 0"};
        s.samples = {{{"i", 0}}, {{"i", 1}}};
        s.build = [](const Field& f, const Params&) -> Rels { return {{{1, X2, X1}, {neg1(f), X1, X2}}}; };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "t05-1a";
        s.summary = "commutative polynomial ring, V = M(3,i)";
        s.min_p = 3;
        s.shape = ModuleShape::M3;
        s.params = {wi};
        s.relations = {"x2x1 - x1x2 = 0", "x3x1 - x1x3 = 0", "x3x2 - x2x3 = 0"};
        s.samples = {{{"i", 0}}};
        s.build = [](const Field& f, const Params&) { return commutative_rels(f); };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "t05-1b";
        s.summary = "commutative polynomial ring, V = M(2,i) + M(1,j)";
        s.params = {wi, wj};
        s.relations = {"x2x1 - x1x2 = 0", "yx1 - x1y = 0", "yx2 - x2y = 0"};
        s.samples = {{{"i", 0}, {"j", 0}}, {{"i", 0}, {"j", 1}}};
        s.build = [](const Field& f, const Params&) { return commutative_rels(f); };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "t05-2";
        s.summary = "p = 3, V = M(3,i), x3 central";
        s.allowed_p = {3};
        s.min_p = 3;
        s.shape = ModuleShape::M3;
        s.params = {wi};
        s.relations = {"x2x1 - x1x2 + x3^2 = 0", "x3x1 - x1x3 = 0", "x3x2 - x2x3 = 0"};
        s.samples = {{{"i", 0}}};
        s.build = [](const Field& f, const Params&) -> Rels {
            return {{{1, X2, X1}, {neg1(f), X1, X2}, {1, Y, Y}}, {{1, Y, X1}, {neg1(f), X1, Y}}, {{1, Y, X2}, {neg1(f), X2, Y}}};
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "t05-3";
        s.summary = "j = i + 1";
        s.params = {wi, wj};
        s.relations = {"x1x2 + x1y - yx1 = 0", "x2x1 - x1x2 = 0", "x2^2 + x2y - yx2 = 0"};
        s.constraints = {j_is_i_plus(1)};
        s.samples = {{{"i", 0}, {"j", 1}}};
        s.build = [](const Field& f, const Params&) -> Rels {
            return {{{1, X1, X2}, {1, X1, Y}, {neg1(f), Y, X1}},
                    {{1, X2, X1}, {neg1(f), X1, X2}},
                    {{1, X2, X2}, {1, X2, Y}, {neg1(f), Y, X2}}};
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "t05-4";
        s.summary = "(i-j)(2i+1-2j) ≠ 0, y skew-commutes with x1 and x2";
        s.params = {wi, wj, unit("a")};
        s.relations = {"yx1 + a x1y = 0", "yx2 + a x2y = 0", "x2x1 - x1x2 = 0"};
        s.constraints = {{"(i-j)(2i+1-2j)≠0",
                          [](const Field& f, const Params& ps) {
                              const auto i = wt(ps, "i"), j = wt(ps, "j");
                              return !zero_mod((i - j) * (2 * i + 1 - 2 * j), f.characteristic());
                          }},
                         a_nonzero()};
        s.samples = {{{"i", 0}, {"j", 1}, {"a", 1}}};
        s.build = [](const Field& f, const Params& ps) -> Rels {
            const Elem a = get(ps, "a");
            return {{{1, Y, X1}, {a, X1, Y}}, {{1, Y, X2}, {a, X2, Y}}, {{1, X2, X1}, {neg1(f), X1, X2}}};
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "t05-5";
        s.summary = "2i+1-2j = 0";
        s.min_p = 3;
        s.params = {wi, wj, unit("a"), bit("eps")};
        s.relations = {"yx1 + a x1y = 0", "yx2 + a x2y = 0", "x2x1 - x1x2 + ε y^2 = 0"};
        s.constraints = {{"2i+1-2j=0",
                          [](const Field& f, const Params& ps) {
                              return zero_mod(2 * wt(ps, "i") + 1 - 2 * wt(ps, "j"), f.characteristic());
                          }},
                         a_nonzero(),
                         {"ε(a^2-1)=0", [](const Field& f, const Params& ps) {
                              const Elem a = ps.at("a");
                              return ps.at("eps") == 0 || f.sub(f.mul(a, a), 1) == 0;
                          }}};
        s.samples = {{{"i", 0}, {"j", 2}, {"a", 1}, {"eps", 0}}, {{"i", 0}, {"j", 2}, {"a", 1}, {"eps", 1}}};
        s.build = [](const Field& f, const Params& ps) -> Rels {
            const Elem a = get(ps, "a");
            return {{{1, Y, X1}, {a, X1, Y}}, {{1, Y, X2}, {a, X2, Y}}, {{1, X2, X1}, {neg1(f), X1, X2}, {get(ps, "eps"), Y, Y}}};
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "t05-6";
        s.summary = "i = j";
        s.params = {wi, wj, unit("a"), scalar("b"), bit("eps")};
        s.relations = {"yx1 + a x1y + b y^2 = 0", "yx2 + a x2y = 0", "x2x1 - x1x2 + ε x2y = 0"};
        s.constraints = {j_is_i_plus(0), a_nonzero(),
                         {"(a+1)(b-ε)=0", [](const Field& f, const Params& ps) {
                              return f.mul(f.add(ps.at("a"), 1), f.sub(ps.at("b"), ps.at("eps"))) == 0;
                          }}};
        s.samples = {{{"i", 0}, {"j", 0}, {"a", 1}, {"b", 0}, {"eps", 0}},
                     {{"i", 0}, {"j", 0}, {"a", 1}, {"b", 0}, {"eps", 1}}};
        s.build = [](const Field& f, const Params& ps) -> Rels {
            const Elem a = get(ps, "a");
            return {{{1, Y, X1}, {a, X1, Y}, {get(ps, "b"), Y, Y}},
                    {{1, Y, X2}, {a, X2, Y}},
                    {{1, X2, X1}, {neg1(f), X1, X2}, {get(ps, "eps"), X2, Y}}};
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "t05-7";
        s.summary = "j = i + 2";
        s.params = {wi, wj, scalar("b"), scalar("c"), scalar("d")};
        s.relations = {"yx2 - x2y = 0", "x1x2 - x2x1 + c x2y + b y^2 = 0", "x2^2 + yx1 - x1y + d y^2 = 0"};
        s.constraints = {j_is_i_plus(2),
                         {"c≠0 or d≠0 only if p=2",
                          [](const Field& f, const Params& ps) {
                              return f.characteristic() == 2 || (ps.at("c") == 0 && ps.at("d") == 0);
                          }},
                         {"b≠0 only if p=3",
                          [](const Field& f, const Params& ps) { return f.characteristic() == 3 || ps.at("b") == 0; }}};
        s.samples = {{{"i", 0}, {"j", 0}, {"b", 0}, {"c", 0}, {"d", 0}},
                     {{"i", 0}, {"j", 0}, {"b", 0}, {"c", 1}, {"d", 0}},
                     {{"i", 0}, {"j", 0}, {"b", 0}, {"c", 0}, {"d", 1}}};
        s.build = [](const Field& f, const Params& ps) -> Rels {
            return {{{1, Y, X2}, {neg1(f), X2, Y}},
                    {{1, X1, X2}, {neg1(f), X2, X1}, {get(ps, "c"), X2, Y}, {get(ps, "b"), Y, Y}},
                    {{1, X2, X2}, {1, Y, X1}, {neg1(f), X1, Y}, {get(ps, "d"), Y, Y}}};
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "t05-8";
        s.summary = "p = 2, i = j";
        s.allowed_p = {2};
        s.params = {wi, wj, scalar("e")};
        s.relations = {"yx2 + x2y = 0", "x1^2 + y^2 + e x2^2 = 0", "x1x2 + x2x1 = 0"};
        s.constraints = {j_is_i_plus(0)};
        s.samples = {{{"i", 0}, {"j", 0}, {"e", 0}}, {{"i", 1}, {"j", 1}, {"e", 1}}};
        s.build = [](const Field&, const Params& ps) -> Rels {
            return {{{1, Y, X2}, {1, X2, Y}}, {{1, X1, X1}, {1, Y, Y}, {get(ps, "e"), X2, X2}}, {{1, X1, X2}, {1, X2, X1}}};
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "t05-9";
        s.summary = "p = 2, i ≠ j";
        s.allowed_p = {2};
        s.params = {wi, wj, scalar("b"), scalar("c"), scalar("e")};
        s.relations = {"yx2 + x2y + b y^2 = 0", "x1^2 + c x2y + y^2 + e x2^2 = 0", "x1x2 + x2x1 = 0"};
        s.constraints = {i_ne_j(), {"(b,c)=(0,1) or (1,0)", [](const Field&, const Params& ps) {
                                        const Elem b = ps.at("b"), c = ps.at("c");
                                        return (b == 0 && c == 1) || (b == 1 && c == 0);
                                    }}};
        s.samples = {{{"i", 0}, {"j", 1}, {"b", 0}, {"c", 1}, {"e", 0}}, {{"i", 0}, {"j", 1}, {"b", 1}, {"c", 0}, {"e", 0}}};
        s.build = [](const Field&, const Params& ps) -> Rels {
            return {{{1, Y, X2}, {1, X2, Y}, {get(ps, "b"), Y, Y}},
                    {{1, X1, X1}, {get(ps, "c"), X2, Y}, {1, Y, Y}, {get(ps, "e"), X2, X2}},
                    {{1, X1, X2}, {1, X2, X1}}};
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "t05-10a";
        s.summary = "p = 2, i ≠ j, x2^2 + x2y + yx2 = 0";
        s.allowed_p = {2};
        s.params = {wi, wj, scalar("c")};
        s.relations = {"x1^2 + c (x2y + yx2) + y^2 = 0", "x1x2 + x2x1 = 0", "x2^2 + x2y + yx2 = 0"};
        s.constraints = {i_ne_j()};
        s.samples = {{{"i", 0}, {"j", 1}, {"c", 0}}, {{"i", 0}, {"j", 1}, {"c", 1}}};
        s.build = [](const Field&, const Params& ps) -> Rels {
            const Elem c = get(ps, "c");
            return {{{1, X1, X1}, {c, X2, Y}, {c, Y, X2}, {1, Y, Y}}, {{1, X1, X2}, {1, X2, X1}}, {{1, X2, X2}, {1, X2, Y}, {1, Y, X2}}};
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "t05-10b";
        s.summary = "p = 2, i ≠ j, x2^2 + y^2 = 0";
        s.allowed_p = {2};
        s.params = {wi, wj, scalar("e")};
        s.relations = {"x1^2 + x2y + yx2 + e y^2 = 0", "x1x2 + x2x1 = 0", "x2^2 + y^2 = 0"};
        s.constraints = {i_ne_j()};
        s.samples = {{{"i", 0}, {"j", 1}, {"e", 0}}, {{"i", 0}, {"j", 1}, {"e", 1}}};
        s.build = [](const Field&, const Params& ps) -> Rels {
            return {{{1, X1, X1}, {1, X2, Y}, {1, Y, X2}, {get(ps, "e"), Y, Y}}, {{1, X1, X2}, {1, X2, X1}}, {{1, X2, X2}, {1, Y, Y}}};
        };
        out.push_back(std::move(s));
    }
    for (auto& s : out) {
        auto inner = s.build;
        s.build = [inner](const Field& f, const Params& ps) { return clean(inner(f, ps)); };
    }
    return out;
}

std::vector<FamilySpec> build_extras() {
    std::vector<FamilySpec> out;
    const auto& cat = list_families();
    auto by_id = [&](const char* id) -> const FamilySpec& {
        return *std::find_if(cat.begin(), cat.end(), [&](const FamilySpec& s) { return s.id == id; });
    };
    {
        FamilySpec s = by_id("t05-3");
        s.id = "t05-3-alt";
        s.kind = SpecKind::Variant;
        s.summary = "t05-3 with both x1x2 and x2x1 reduced against x1y - yx1";
        s.relations = {"x1x2 + x1y - yx1 = 0", "x2x1 + x1y - yx1 = 0", "x2^2 + x2y - yx2 = 0"};
        s.build = [](const Field& f, const Params&) -> Rels {
            return {{{1, X1, X2}, {1, X1, Y}, {neg1(f), Y, X1}},
                    {{1, X2, X1}, {1, X1, Y}, {neg1(f), Y, X1}},
                    {{1, X2, X2}, {1, X2, Y}, {neg1(f), Y, X2}}};
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s = by_id("t05-4");
        s.id = "t05-4-skew";
        s.kind = SpecKind::Variant;
        s.summary = "t05-4 built as the skew polynomial ring with x_b x_a = q_ab x_a x_b, q_12 = 1, q_13 = q_23 = -a";
        s.relations = {"x_b x_a - q_ab x_a x_b = 0 for a < b"};
        s.build = [](const Field& f, const Params& ps) -> Rels {
            const Elem q[3][3] = {{0, 1, f.neg(ps.at("a"))}, {0, 0, f.neg(ps.at("a"))}, {0, 0, 0}};
            Rels rels;
            for (std::uint32_t a = 0; a < 3; ++a)
                for (std::uint32_t b = a + 1; b < 3; ++b) rels.push_back({{1, b, a}, {f.neg(q[a][b]), a, b}});
            return clean(rels);
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "ctl-x2-cubed";
        s.kind = SpecKind::Control;
        s.summary = "rejected p = 3 candidate on M(3,i); its overlap forces x2^3 = 0";
        s.allowed_p = {3};
        s.min_p = 3;
        s.shape = ModuleShape::M3;
        s.params = {weight("i", "lowest weight of M(3,i)")};
        s.relations = {"x3x2 - x2x3 + x1^2 = 0", "x2x1 + x1x2 = 0", "x3x1 + x1x3 - x2^2 = 0"};
        s.samples = {{{"i", 0}}};
        s.build = [](const Field& f, const Params&) -> Rels {
            return {{{1, Y, X2}, {neg1(f), X2, Y}, {1, X1, X1}}, {{1, X2, X1}, {1, X1, X2}}, {{1, Y, X1}, {1, X1, Y}, {neg1(f), X2, X2}}};
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "ctl-dual-onto-polynomial";
        s.kind = SpecKind::Control;
        s.summary = "rejected p = 3 candidate on M(3,i); its Koszul dual surjects onto k[t]";
        s.allowed_p = {3};
        s.min_p = 3;
        s.shape = ModuleShape::M3;
        s.params = {weight("i", "lowest weight of M(3,i)")};
        s.relations = {"x1x3 + x3x1 - x2^2 = 0", "x1x2 + x2x1 - x3^2 = 0", "x3x2 + x2x3 + x1^2 = 0"};
        s.samples = {{{"i", 0}}};
        s.build = [](const Field& f, const Params&) -> Rels {
            return {{{1, X1, Y}, {1, Y, X1}, {neg1(f), X2, X2}}, {{1, X1, X2}, {1, X2, X1}, {neg1(f), Y, Y}}, {{1, Y, X2}, {1, X2, Y}, {1, X1, X1}}};
        };
        out.push_back(std::move(s));
    }
    {
        FamilySpec s;
        s.id = "ctl-p2-equal-weights";
        s.kind = SpecKind::Control;
        s.summary = "rejected p = 2, i = j candidate; y3^2 kills the generators of its Koszul dual";
        s.allowed_p = {2};
        s.params = {weight("i", "lowest weight of M(2,i)"), weight("j", "weight of S_j"), scalar("a")};
        s.relations = {"x1^2 + a x1y + y^2 = 0", "x1x2 + x2x1 + a x2y = 0", "x2^2 + y^2 = 0"};
        s.constraints = {j_is_i_plus(0)};
        s.samples = {{{"i", 0}, {"j", 0}, {"a", 0}}, {{"i", 0}, {"j", 0}, {"a", 1}}};
        s.build = [](const Field&, const Params& ps) -> Rels {
            const Elem a = get(ps, "a");
            return clean({{{1, X1, X1}, {a, X1, Y}, {1, Y, Y}}, {{1, X1, X2}, {1, X2, X1}, {a, X2, Y}}, {{1, X2, X2}, {1, Y, Y}}});
        };
        out.push_back(std::move(s));
    }
    return out;
}

Matrix v_matrix_u(const Field& f, ModuleShape shape, const Params& ps, bool want_u) {
    const auto i = ps.at("i");
    umod::UModule m = [&] {
        switch (shape) {
            case ModuleShape::M2: return umod::standard_module(f, 2, i);
            case ModuleShape::M3: return umod::standard_module(f, 3, i);
            case ModuleShape::M2PlusM1: break;
        }
        return umod::direct_sum(umod::standard_module(f, 2, i), umod::standard_module(f, 1, ps.at("j")));
    }();
    return want_u ? m.mat_u() : m.mat_w();
}

Elem default_scalar(const FamilySpec& s, const std::string& name) {
    if (!s.samples.empty()) {
        if (auto it = s.samples.front().find(name); it != s.samples.front().end()) return it->second;
    }
    return name == "a" ? 1 : 0;
}

}  // namespace

std::string_view to_string(ParamDomain d) {
    switch (d) {
        case ParamDomain::Weight: return "weight";
        case ParamDomain::Unit: return "unit";
        case ParamDomain::Scalar: return "scalar";
        case ParamDomain::Bit: return "bit";
    }
    return "?";
}

bool FamilySpec::allows(std::uint32_t p) const {
    if (p < min_p) return false;
    return allowed_p.empty() || std::find(allowed_p.begin(), allowed_p.end(), p) != allowed_p.end();
}

std::vector<std::string> FamilySpec::generator_names() const {
    switch (shape) {
        case ModuleShape::M2: return {"x1", "x2"};
        case ModuleShape::M3: return {"x1", "x2", "x3"};
        case ModuleShape::M2PlusM1: break;
    }
    return {"x1", "x2", "y"};
}

const std::vector<FamilySpec>& list_families() {
    static const std::vector<FamilySpec> catalog = build_catalog();
    return catalog;
}

const std::vector<FamilySpec>& extra_specs() {
    static const std::vector<FamilySpec> extras = build_extras();
    return extras;
}

const FamilySpec& find_spec(const std::string& id) {
    for (const auto* list : {&list_families(), &extra_specs()})
        for (const auto& s : *list)
            if (s.id == id) return s;
    throw Error(ErrorKind::UnknownFamily, "no family named '" + id + "'");
}

std::string format_params(const Params& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ",";
        out += k + "=" + std::to_string(v);
    }
    return out;
}

FamilyInstance instantiate_unchecked(const std::string& id, const Field& field, Params params) {
    const FamilySpec& spec = find_spec(id);
    const std::uint32_t p = field.characteristic();
    if (!spec.allows(p)) {
        std::string allowed;
        if (spec.allowed_p.empty()) {
            allowed = "p >= " + std::to_string(spec.min_p);
        } else {
            for (auto a : spec.allowed_p) allowed += (allowed.empty() ? "p in {" : ",") + std::to_string(a);
            allowed += "}";
        }
        throw Error(ErrorKind::BadCharacteristic, id + " requires " + allowed + ", got p = " + std::to_string(p));
    }
    for (const auto& [name, value] : params) {
        auto slot = std::find_if(spec.params.begin(), spec.params.end(), [&](const ParamSlot& s) { return s.name == name; });
        if (slot == spec.params.end()) throw Error(ErrorKind::BadParameter, id + " has no parameter '" + name + "'");
        const bool ok = slot->domain == ParamDomain::Weight ? value < p
                        : slot->domain == ParamDomain::Bit  ? value <= 1
                                                            : value < field.order();
        if (!ok) throw Error(ErrorKind::BadParameter, "parameter " + name + " = " + std::to_string(value) + " is out of range");
    }
    for (const auto& slot : spec.params) {
        if (params.count(slot.name) || slot.name == "j") continue;
        params[slot.name] = slot.name == "i" ? 0 : default_scalar(spec, slot.name);
    }
    const bool has_j = std::any_of(spec.params.begin(), spec.params.end(), [](const ParamSlot& s) { return s.name == "j"; });
    if (has_j && !params.count("j")) {
        // The first weight j satisfying every constraint, or 0 when none does.
        params["j"] = 0;
        for (Elem j = 0; j < p; ++j) {
            params["j"] = j;
            if (std::all_of(spec.constraints.begin(), spec.constraints.end(),
                            [&](const Constraint& c) { return c.holds(field, params); }))
                break;
            params["j"] = 0;
        }
    }
    std::vector<std::string> violated;
    for (const auto& c : spec.constraints)
        if (!c.holds(field, params)) violated.push_back(c.text);
    auto algebra = QuadAlgebra::from_terms(field, spec.generator_names(), spec.build(field, params));
    return FamilyInstance{spec.id,
                          params,
                          spec.gldim(),
                          std::move(algebra),
                          v_matrix_u(field, spec.shape, params, true),
                          v_matrix_u(field, spec.shape, params, false),
                          std::move(violated)};
}

FamilyInstance instantiate_checked(const std::string& id, const Field& field, Params params) {
    auto inst = instantiate_unchecked(id, field, std::move(params));
    if (!inst.violated.empty()) throw Error(ErrorKind::ConstraintViolated, inst.violated.front() + " fails");
    (void)inst.action();
    return inst;
}

action::UAction instantiate(const std::string& id, const Field& field, Params params) {
    return instantiate_checked(id, field, std::move(params)).action();
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{"relations_dim_3",     "relations_U_submodule", "inner_faithful",
                                                "hilbert_matches",     "koszul_dual_frobenius", "constraint_predicates"};
    return names;
}

bool VerificationReport::overall() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check& VerificationReport::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw Error(ErrorKind::BadParameter, "no check named '" + name + "'");
}

std::vector<std::size_t> expected_hilbert(std::size_t gldim, std::size_t max_deg) {
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= max_deg; ++n) out.push_back(gldim == 2 ? n + 1 : (n + 1) * (n + 2) / 2);
    return out;
}

namespace {

std::string join(const std::vector<std::size_t>& v) {
    std::string out = "(";
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
    return out + ")";
}

std::vector<std::size_t> expected_dual(std::size_t gldim) {
    return gldim == 2 ? std::vector<std::size_t>{1, 2, 1} : std::vector<std::size_t>{1, 3, 3, 1};
}

}  // namespace

AlgebraCertificate certify_algebra(const QuadAlgebra& a, std::size_t gldim, std::size_t max_deg) {
    AlgebraCertificate c;
    const std::size_t want_rel = gldim == 2 ? 1 : 3;
    c.relations_ok = a.n_gens() == gldim && a.relations().dim() == want_rel;
    c.hilbert = a.hilbert(max_deg);
    c.hilbert_ok = c.hilbert == expected_hilbert(gldim, max_deg);
    const auto rep = quadalg::frobenius_check(quadalg::koszul_dual(a), 8);
    c.dual_dims = rep.dims;
    c.dual_status = rep.status;
    auto nonzero = rep.dims;
    while (!nonzero.empty() && nonzero.back() == 0) nonzero.pop_back();
    c.dual_frobenius_ok = rep.status == quadalg::FrobeniusStatus::Frobenius && rep.pairings_nondegenerate &&
                          nonzero == expected_dual(gldim);
    return c;
}

VerificationReport verify(const FamilyInstance& inst, std::size_t max_deg) {
    const QuadAlgebra& a = inst.algebra;
    VerificationReport r;
    r.family = inst.family;
    r.p = a.field().characteristic();
    r.k = a.field().degree();
    r.params = inst.params;
    r.max_deg = max_deg;
    const std::size_t want_rel = inst.gldim == 2 ? 1 : 3;

    r.checks.push_back({"relations_dim_3", a.relations().dim() == want_rel,
                        "dim R = " + std::to_string(a.relations().dim()) + ", expected " + std::to_string(want_rel) +
                            (a.dependent_relations() ? " (" + std::to_string(a.dependent_relations()) + " dependent)" : "")});

    std::string sub_witness;
    bool sub_ok = true;
    if (auto bad = umod::failing_identity(inst.rho_u, inst.rho_w)) {
        sub_ok = false;
        sub_witness = "V fails " + *bad;
    } else if (!action::preserves_relations(a, inst.rho_u)) {
        sub_ok = false;
        sub_witness = "u does not preserve R";
    } else if (!action::preserves_relations(a, inst.rho_w)) {
        sub_ok = false;
        sub_witness = "w does not preserve R";
    } else {
        sub_witness = "u R ⊆ R and w R ⊆ R";
    }
    r.checks.push_back({"relations_U_submodule", sub_ok, sub_witness});

    const bool faithful = !inst.rho_u.is_zero();
    r.checks.push_back({"inner_faithful", faithful, faithful ? "u V ≠ 0" : "u V = 0"});

    const auto cert = certify_algebra(a, inst.gldim, max_deg);
    r.hilbert = cert.hilbert;
    r.expected_hilbert = expected_hilbert(inst.gldim, max_deg);
    std::string hw = "dims " + join(r.hilbert);
    if (!cert.hilbert_ok) {
        for (std::size_t n = 0; n < r.hilbert.size(); ++n)
            if (r.hilbert[n] != r.expected_hilbert[n]) {
                hw += ", first mismatch at degree " + std::to_string(n) + " (expected " + std::to_string(r.expected_hilbert[n]) + ")";
                break;
            }
    }
    r.checks.push_back({"hilbert_matches", cert.hilbert_ok, hw});

    r.dual_dims = cert.dual_dims;
    r.dual_status = cert.dual_status;
    r.checks.push_back({"koszul_dual_frobenius", cert.dual_frobenius_ok,
                        std::string(quadalg::to_string(cert.dual_status)) + ", dual dims " + join(cert.dual_dims)});

    std::string cw;
    for (const auto& v : inst.violated) cw += (cw.empty() ? "" : "; ") + v + " fails";
    r.checks.push_back({"constraint_predicates", inst.violated.empty(), cw.empty() ? "all hold" : cw});
    return r;
}

std::optional<bool> solver_contains(const FamilyInstance& inst, std::uint64_t budget) {
    try {
        const auto res = action::solve_actions(inst.algebra, budget);
        return std::any_of(res.solutions.begin(), res.solutions.end(), [&](const action::ActionSolution& s) {
            return s.rho_u == inst.rho_u && s.rho_w == inst.rho_w;
        });
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::BudgetExceeded) return std::nullopt;
        throw;
    }
}

const std::vector<Char2Form>& char2_forms() {
    static const std::vector<Char2Form> forms = [] {
        std::vector<Char2Form> out;
        out.push_back(
            {"char2-form-1",
             {"x1^2 + c1 x2y + d1 yx2 + e1 y^2 = 0", "x1x2 + x2x1 = 0", "x2^2 + c3 x2y + d3 yx2 + e3 y^2 = 0"},
             {"c1", "d1", "e1", "c3", "d3", "e3"},
             "d1=c1, d3=c3, c3^2-e3≠0, c1e3-c3e1≠0",
             [](const Field& f, const Params& ps) {
                 const Elem c1 = ps.at("c1"), d1 = ps.at("d1"), e1 = ps.at("e1"), c3 = ps.at("c3"), d3 = ps.at("d3"), e3 = ps.at("e3");
                 return d1 == c1 && d3 == c3 && f.sub(f.mul(c3, c3), e3) != 0 && f.sub(f.mul(c1, e3), f.mul(c3, e1)) != 0;
             },
             [](const Field&, const Params& ps) -> Rels {
                 return clean({{{1, X1, X1}, {ps.at("c1"), X2, Y}, {ps.at("d1"), Y, X2}, {ps.at("e1"), Y, Y}},
                               {{1, X1, X2}, {1, X2, X1}},
                               {{1, X2, X2}, {ps.at("c3"), X2, Y}, {ps.at("d3"), Y, X2}, {ps.at("e3"), Y, Y}}});
             }});
        out.push_back({"char2-form-2",
                       {"yx2 - q x2y = 0", "x1^2 + a x1y + d y^2 + e x2^2 = 0", "x1x2 + x2x1 + a x2y = 0"},
                       {"q", "a", "d", "e"},
                       "a=0, q=1, d≠0",
                       [](const Field&, const Params& ps) { return ps.at("a") == 0 && ps.at("q") == 1 && ps.at("d") != 0; },
                       [](const Field& f, const Params& ps) -> Rels {
                           return clean({{{1, Y, X2}, {f.neg(ps.at("q")), X2, Y}},
                                         {{1, X1, X1}, {ps.at("a"), X1, Y}, {ps.at("d"), Y, Y}, {ps.at("e"), X2, X2}},
                                         {{1, X1, X2}, {1, X2, X1}, {ps.at("a"), X2, Y}}});
                       }});
        out.push_back({"char2-form-3",
                       {"yx2 - q x2y + c1 y^2 = 0", "x1^2 + c x2y + d y^2 + e x2^2 = 0", "x1x2 + x2x1 = 0"},
                       {"q", "c1", "c", "d", "e"},
                       "q=1, d≠0, c1c=0",
                       [](const Field& f, const Params& ps) {
                           return ps.at("q") == 1 && ps.at("d") != 0 && f.mul(ps.at("c1"), ps.at("c")) == 0;
                       },
                       [](const Field& f, const Params& ps) -> Rels {
                           return clean({{{1, Y, X2}, {f.neg(ps.at("q")), X2, Y}, {ps.at("c1"), Y, Y}},
                                         {{1, X1, X1}, {ps.at("c"), X2, Y}, {ps.at("d"), Y, Y}, {ps.at("e"), X2, X2}},
                                         {{1, X1, X2}, {1, X2, X1}}});
                       }});
        return out;
    }();
    return forms;
}

SweepResult sweep_char2_form(const Char2Form& form, const Field& field, std::size_t max_deg) {
    if (field.characteristic() != 2) throw Error(ErrorKind::BadCharacteristic, form.id + " is a characteristic 2 form");
    SweepResult res;
    res.form = form.id;
    res.q = field.order();
    const std::size_t n = form.params.size();
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= field.order();
    for (std::uint64_t code = 0; code < total; ++code) {
        Params ps;
        std::uint64_t c = code;
        for (const auto& name : form.params) {
            ps[name] = static_cast<Elem>(c % field.order());
            c /= field.order();
        }
        const bool pred = form.predicate(field, ps);
        const auto a = QuadAlgebra::from_terms(field, {"x1", "x2", "y"}, form.build(field, ps));
        const bool cert = certify_algebra(a, 3, max_deg).pass();
        ++res.points;
        res.predicate_true += pred;
        res.certified += cert;
        if (pred != cert) res.disagreements.push_back({ps, pred, cert});
    }
    return res;
}

}  // namespace hopfu::families
