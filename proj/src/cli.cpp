#include "hopfu/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "hopfu/error.hpp"
#include "hopfu/families.hpp"
#include "hopfu/green.hpp"
#include "hopfu/io.hpp"

namespace hopfu::cli {

namespace {

using io::json;
using umod::Label;

struct Options {
    std::string format = "table";
    std::string path;
    std::size_t max_deg = 6;
    std::size_t cutoff = 8;
    std::optional<std::uint64_t> budget;
    unsigned workers = 0;
    bool list = false;

    std::uint32_t p = 0;
    std::uint32_t k = 1;
    std::vector<std::uint32_t> tensor_args;
    std::vector<std::string> labels;
    std::string family;
    std::vector<std::string> params;
    bool csv_table = false;
    std::size_t random = 0;
    std::uint64_t seed = 1;
};

const std::set<ErrorKind> kUsageErrors = {
    ErrorKind::ParseError,  ErrorKind::SchemaError,      ErrorKind::BadLabel,          ErrorKind::BadParameter,
    ErrorKind::UnknownFamily, ErrorKind::NonPrime,        ErrorKind::ReducibleModulus,  ErrorKind::BadCharacteristic,
    ErrorKind::UnsupportedCharacteristic, ErrorKind::BadLength,
};

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool is_flat_array(const json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v)
        if (e.is_object() || (e.is_array() && !is_flat_array(e))) return false;
    return true;
}

// key paths joined by '.', array members as key[k]; arrays of scalars stay whole
void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    if (v.is_object()) {
        for (const auto& [key, val] : v.items()) flatten(val, prefix.empty() ? key : prefix + "." + key, rows);
    } else if (v.is_array() && !is_flat_array(v)) {
        for (std::size_t t = 0; t < v.size(); ++t) flatten(v[t], prefix + "[" + std::to_string(t) + "]", rows);
    } else {
        rows.emplace_back(prefix, scalar_text(v));
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void emit(const json& report, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << report.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    if (format == "csv") {
        out << "key,value\n";
        for (const auto& [k, v] : rows) out << csv_field(k) << "," << csv_field(v) << "\n";
    } else {
        for (const auto& [k, v] : rows) out << k << ": " << v << "\n";
    }
}

json green_to_json(const green::GreenElem& x) {
    json map = json::object();
    for (const auto& [lab, c] : x.coeffs()) map[std::to_string(lab.l) + "," + std::to_string(lab.i)] = c;
    umod::Decomposition d{x.p(), {}};
    bool effective = true;
    for (const auto& [lab, c] : x.coeffs()) {
        if (c < 0) effective = false;
        else d.mult[lab] = static_cast<std::uint64_t>(c);
    }
    return {{"map", map}, {"text", x.to_string()}, {"terms", effective ? d.to_terms() : x.to_string()}};
}

// "M(3,0) + 2 S_1": terms separated by '+', each an optional positive count and a label.
green::GreenElem parse_green(const std::string& text, std::uint32_t p) {
    green::GreenElem x(p);
    std::size_t start = 0;
    int depth = 0;
    auto take = [&](std::string term) {
        const auto b = term.find_first_not_of(' ');
        if (b == std::string::npos) throw Error(ErrorKind::BadLabel, "empty term in \"" + text + "\"");
        term = term.substr(b);
        std::int64_t c = 1;
        if (std::isdigit(static_cast<unsigned char>(term[0])) && term.find(',') == std::string::npos) {
            const auto sp = term.find(' ');
            if (sp == std::string::npos) throw Error(ErrorKind::BadLabel, "missing label in \"" + term + "\"");
            c = std::stoll(term.substr(0, sp));
            term = term.substr(sp + 1);
        }
        x.add_term(umod::parse_label(term, p), c);
    };
    for (std::size_t t = 0; t < text.size(); ++t) {
        if (text[t] == '(') ++depth;
        if (text[t] == ')') --depth;
        if (text[t] == '+' && depth == 0) {
            take(text.substr(start, t - start));
            start = t + 1;
        }
    }
    take(text.substr(start));
    return x;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw Error(ErrorKind::BadParameter, what + " \"" + s + "\" is not a non-negative integer");
    return v;
}

std::uint64_t solve_budget(const Options& o) {
    if (o.budget) return *o.budget;
    if (const char* env = std::getenv("HOPFU_BUDGET")) return parse_u64(env, "HOPFU_BUDGET");
    return action::kDefaultSolveBudget;
}

families::Params parse_params(const std::vector<std::string>& items, const gf::Field& f) {
    families::Params out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::BadParameter, "expected name=value, got \"" + item + "\"");
        const std::string name = item.substr(0, eq), value = item.substr(eq + 1);
        if (!value.empty() && value[0] == '-') {
            std::int64_t v = 0;
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc() || ptr != value.data() + value.size()) throw Error(ErrorKind::BadParameter, name + "=" + value + " is not an integer");
            out[name] = f.from_int(v);
        } else {
            const auto v = parse_u64(value, name);
            if (v > std::numeric_limits<gf::Elem>::max()) throw Error(ErrorKind::BadParameter, name + "=" + value + " is out of range");
            out[name] = static_cast<gf::Elem>(v);
        }
    }
    return out;
}

std::string pbw_monomial(std::size_t i, std::size_t j) {
    auto power = [](const char* x, std::size_t e) -> std::string {
        if (e == 0) return "";
        return e == 1 ? std::string(x) : std::string(x) + "^" + std::to_string(e);
    };
    const std::string m = power("u", i) + power("w", j);
    return m.empty() ? "1" : m;
}

std::string format_pbw(const gf::Field& f, std::uint32_t p, std::span<const gf::Elem> v) {
    std::string s;
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c] == 0) continue;
        if (!s.empty()) s += " + ";
        const std::string mono = pbw_monomial(c / p, c % p);
        if (v[c] == 1) s += mono;
        else s += mono == "1" ? f.format(v[c]) : f.format(v[c]) + "*" + mono;
    }
    return s.empty() ? "0" : s;
}

json verification_to_json(const families::VerificationReport& r) {
    json checks = json::object();
    for (const auto& c : r.checks) checks[c.name] = {{"pass", c.pass}, {"witness", c.witness}};
    json params = json::object();
    for (const auto& [name, v] : r.params) params[name] = v;
    return {{"family", r.family},
            {"p", r.p},
            {"k", r.k},
            {"params", params},
            {"params_text", families::format_params(r.params)},
            {"max_deg", r.max_deg},
            {"checks", checks},
            {"hilbert", r.hilbert},
            {"expected_hilbert", r.expected_hilbert},
            {"dual_dims", r.dual_dims},
            {"dual_status", std::string(quadalg::to_string(r.dual_status))},
            {"operation", "families.verify"},
            {"overall", r.overall()}};
}

std::uint32_t default_p(const families::FamilySpec& spec) {
    return spec.allowed_p.empty() ? spec.min_p : spec.allowed_p.front();
}

families::Params random_params(const families::FamilySpec& spec, const gf::Field& f, std::mt19937_64& rng) {
    families::Params out;
    for (const auto& slot : spec.params) {
        const std::uint32_t q = f.order(), p = f.characteristic();
        switch (slot.domain) {
            case families::ParamDomain::Weight: out[slot.name] = static_cast<gf::Elem>(rng() % p); break;
            case families::ParamDomain::Unit: out[slot.name] = static_cast<gf::Elem>(1 + rng() % (q - 1)); break;
            case families::ParamDomain::Scalar: out[slot.name] = static_cast<gf::Elem>(rng() % q); break;
            case families::ParamDomain::Bit: out[slot.name] = static_cast<gf::Elem>(rng() % 2); break;
        }
    }
    return out;
}

struct Context {
    json report;
    std::ostream& out;
};

int cmd_tensor(const Options& o, Context& ctx) {
    const auto& a = o.tensor_args;
    const std::uint32_t p = a[0];
    const auto f = gf::Field::make(p);
    const Label x{a[1], a[2]}, y{a[3], a[4]};
    ctx.report["inputs"] = {{"p", p}, {"left", umod::format_label(x)}, {"right", umod::format_label(y)}};
    const auto closed = green::basis_product(p, x, y);
    const auto brute = umod::decompose(umod::tensor(umod::standard_module(f, x.l, x.i), umod::standard_module(f, y.l, y.i)));
    const bool agree = closed == green::GreenElem::from_decomposition(brute);
    json cf = green_to_json(closed);
    cf["operation"] = "green.basis_product";
    json bf = io::decomposition_to_json(brute);
    bf["operation"] = "umod.decompose(umod.tensor)";
    ctx.report["closed_form"] = cf;
    ctx.report["brute_force"] = bf;
    ctx.report["agreement"] = agree;
    return agree ? 0 : 1;
}

int cmd_decompose(const Options& o, Context& ctx) {
    ctx.report["inputs"] = {{"module", o.path}};
    const auto m = io::parse_module(o.path);
    json d = io::decomposition_to_json(umod::decompose(m));
    d["operation"] = "umod.decompose";
    ctx.report["p"] = m.p();
    ctx.report["decomposition"] = d;
    return 0;
}

int cmd_green_mul(const Options& o, Context& ctx) {
    ctx.report["inputs"] = {{"p", o.p}, {"factors", o.labels}};
    if (o.p < 2) throw Error(ErrorKind::BadParameter, "--p is required");
    green::GreenElem acc = green::GreenElem::one(o.p);
    for (const auto& t : o.labels) acc = green::mul(acc, parse_green(t, o.p));
    json r = green_to_json(acc);
    r["operation"] = "green.mul";
    r["dim"] = acc.dim();
    ctx.report["product"] = r;
    return 0;
}

int cmd_green_present(const Options& o, Context& ctx) {
    ctx.report["inputs"] = {{"p", o.p}};
    if (o.p < 2) throw Error(ErrorKind::BadParameter, "--p is required");
    gf::Field::make(o.p);
    const auto r = green::presentation_check(o.p);
    bool recursion = true;
    for (std::uint32_t n = 1; n <= 20; ++n) recursion = recursion && green::f_poly_closed(n) == green::f_poly_recursive(n);
    ctx.report["operation"] = "green.presentation_check";
    ctx.report["a_pow_p_is_one"] = r.a_pow_p_is_one;
    ctx.report["x_minus_a_minus_one_kills_u_p"] = r.x_minus_a_minus_one_kills_u_p;
    ctx.report["monomials_give_basis"] = r.monomials_give_basis;
    ctx.report["f_closed_equals_recursion_n_le_20"] = recursion;
    ctx.report["lines"] = r.lines;
    const bool pass = r.a_pow_p_is_one && r.x_minus_a_minus_one_kills_u_p && r.monomials_give_basis && recursion;
    ctx.report["pass"] = pass;
    return pass ? 0 : 1;
}

int cmd_green_fpdim(const Options& o, Context& ctx) {
    ctx.report["inputs"] = {{"p", o.p}, {"module", o.labels}};
    if (o.p < 2) throw Error(ErrorKind::BadParameter, "--p is required");
    green::GreenElem x(o.p);
    for (const auto& t : o.labels) x += parse_green(t, o.p);
    std::map<Label, std::uint64_t> mult;
    for (const auto& [lab, c] : x.coeffs()) {
        if (c < 0) throw Error(ErrorKind::BadParameter, "fpdim takes a module, not a virtual class");
        mult[lab] = static_cast<std::uint64_t>(c);
    }
    ctx.report["module"] = green_to_json(x);
    ctx.report["fpdim"] = {{"operation", "green.fpdim"}, {"value", green::fpdim(o.p, mult)}};
    ctx.report["spectral_radius"] = {{"operation", "green.multiplication_spectral_radius"},
                                     {"value", green::multiplication_spectral_radius(x)}};
    return 0;
}

json relation_counts(const quadalg::QuadAlgebra& a) {
    return {{"supplied", a.supplied_relations()},
            {"independent", a.relations().dim()},
            {"dependent", a.dependent_relations()}};
}

int cmd_hilbert(const Options& o, Context& ctx) {
    ctx.report["inputs"] = {{"algebra", o.path}, {"max_deg", o.max_deg}};
    const auto a = io::parse_presentation(o.path);
    ctx.report["relations"] = relation_counts(a);
    ctx.report["hilbert"] = {{"operation", "quadalg.hilbert"}, {"dims", a.hilbert(o.max_deg)}};
    return 0;
}

int cmd_koszul(const Options& o, Context& ctx) {
    ctx.report["inputs"] = {{"algebra", o.path}};
    const auto a = io::parse_presentation(o.path);
    const auto d = quadalg::koszul_dual(a);
    ctx.report["relations"] = relation_counts(a);
    ctx.report["dual"] = {{"operation", "quadalg.koszul_dual"},
                          {"presentation", io::presentation_to_json(d)},
                          {"relations_dim", d.relations().dim()}};
    return 0;
}

int cmd_frobenius(const Options& o, Context& ctx) {
    ctx.report["inputs"] = {{"algebra", o.path}, {"cutoff", o.cutoff}};
    const auto a = io::parse_presentation(o.path);
    const auto r = quadalg::frobenius_check(a, o.cutoff);
    json top = nullptr;
    if (r.top_degree) top = *r.top_degree;
    ctx.report["operation"] = "quadalg.frobenius_check";
    ctx.report["status"] = std::string(quadalg::to_string(r.status));
    ctx.report["finite"] = r.finite;
    ctx.report["dims"] = r.dims;
    ctx.report["top_degree"] = top;
    ctx.report["top_is_one_dimensional"] = r.top_is_one_dimensional;
    ctx.report["symmetric"] = r.symmetric;
    ctx.report["pairings_nondegenerate"] = r.pairings_nondegenerate;
    ctx.report["pairing_ranks"] = r.pairing_ranks;
    ctx.report["reason"] = r.reason;
    return r.status == quadalg::FrobeniusStatus::Frobenius ? 0 : 1;
}

int cmd_verify(const Options& o, Context& ctx) {
    json inputs = {{"family", o.family}, {"k", o.k}, {"max_deg", o.max_deg}, {"params", o.params}};
    if (o.p) inputs["p"] = o.p;
    if (o.random) {
        inputs["random"] = o.random;
        inputs["seed"] = o.seed;
    }
    ctx.report["inputs"] = inputs;

    std::vector<families::VerificationReport> reports;
    if (o.family == "all") {
        if (!o.params.empty() || o.random) throw Error(ErrorKind::BadParameter, "--param and --random need a single family id");
        for (const auto& spec : families::list_families()) {
            if (o.p && !spec.allows(o.p)) continue;
            const auto f = gf::Field::make(o.p ? o.p : default_p(spec), o.k);
            std::vector<families::Params> points = o.p ? std::vector<families::Params>{{}} : spec.samples;
            if (points.empty()) points.push_back({});
            for (const auto& params : points)
                reports.push_back(families::verify(families::instantiate_unchecked(spec.id, f, params), o.max_deg));
        }
    } else {
        const auto& spec = families::find_spec(o.family);
        const auto f = gf::Field::make(o.p ? o.p : default_p(spec), o.k);
        const auto given = parse_params(o.params, f);
        if (o.random) {
            if (!spec.allows(f.characteristic()))
                throw Error(ErrorKind::BadCharacteristic, spec.id + " is not defined at p = " + std::to_string(f.characteristic()));
            std::mt19937_64 rng(o.seed);
            for (std::size_t n = 0; n < o.random; ++n) {
                for (int attempt = 0;; ++attempt) {
                    auto params = random_params(spec, f, rng);
                    for (const auto& [k, v] : given) params[k] = v;
                    auto inst = families::instantiate_unchecked(spec.id, f, params);
                    if (inst.violated.empty()) {
                        reports.push_back(families::verify(inst, o.max_deg));
                        break;
                    }
                    if (attempt == 10000)
                        throw Error(ErrorKind::BadParameter, "no parameter point satisfying the constraints was drawn");
                }
            }
        } else {
            reports.push_back(families::verify(families::instantiate_unchecked(spec.id, f, given), o.max_deg));
        }
    }

    bool all_pass = true;
    json list = json::array();
    for (const auto& r : reports) {
        all_pass = all_pass && r.overall();
        list.push_back(verification_to_json(r));
    }
    ctx.report["reports"] = list;
    ctx.report["overall"] = all_pass;

    if (o.csv_table || o.format == "csv") {
        ctx.out << "family,p,k,params";
        for (const auto& name : families::check_names()) ctx.out << "," << name;
        ctx.out << ",overall\n";
        for (const auto& r : reports) {
            ctx.out << csv_field(r.family) << "," << r.p << "," << r.k << "," << csv_field(families::format_params(r.params));
            for (const auto& name : families::check_names()) ctx.out << "," << (r.check(name).pass ? "pass" : "fail");
            ctx.out << "," << (r.overall() ? "pass" : "fail") << "\n";
        }
        ctx.report = nullptr;
    }
    return all_pass ? 0 : 1;
}

int cmd_families(const Options&, Context& ctx) {
    json list = json::array();
    auto add = [&](const families::FamilySpec& spec) {
        json params = json::array();
        for (const auto& slot : spec.params) params.push_back({{"name", slot.name}, {"domain", std::string(families::to_string(slot.domain))}});
        json constraints = json::array();
        for (const auto& c : spec.constraints) constraints.push_back(c.text);
        list.push_back({{"id", spec.id},
                        {"summary", spec.summary},
                        {"gldim", spec.gldim()},
                        {"min_p", spec.min_p},
                        {"allowed_p", spec.allowed_p},
                        {"relations", spec.relations},
                        {"params", params},
                        {"constraints", constraints}});
    };
    for (const auto& spec : families::list_families()) add(spec);
    for (const auto& spec : families::extra_specs()) add(spec);
    ctx.report["families"] = list;
    return 0;
}

int cmd_solve(const Options& o, Context& ctx) {
    const auto budget = solve_budget(o);
    ctx.report["inputs"] = {{"algebra", o.path}, {"budget", budget}};
    const auto a = io::parse_presentation(o.path);
    const auto r = action::solve_actions(a, budget, o.workers);
    ctx.report["operation"] = "action.solve_actions";
    ctx.report["relations"] = relation_counts(a);
    ctx.report["derivation_space_dim"] = r.derivation_space_dim;
    ctx.report["candidates_u"] = r.candidates_u;
    ctx.report["nilpotent_u"] = r.nilpotent_u;
    ctx.report["solutions"] = r.solutions.size();
    ctx.report["inner_faithful_solutions"] = r.inner_faithful_count();
    if (o.list) {
        json acts = json::array();
        for (const auto& s : r.solutions)
            acts.push_back({{"rho_u", io::matrix_to_json(s.rho_u)}, {"rho_w", io::matrix_to_json(s.rho_w)}, {"inner_faithful", s.inner_faithful}});
        ctx.report["actions"] = acts;
    }
    return 0;
}

int cmd_invariants(const Options& o, Context& ctx) {
    ctx.report["inputs"] = {{"action", o.path}, {"max_deg", o.max_deg}};
    const auto act = io::parse_action(o.path);
    ctx.report["operation"] = "action.invariant_dims";
    ctx.report["dims"] = action::invariant_dims(act, o.max_deg);
    ctx.report["hilbert"] = act.algebra().hilbert(o.max_deg);
    return 0;
}

int cmd_graded(const Options& o, Context& ctx) {
    ctx.report["inputs"] = {{"action", o.path}, {"max_deg", o.max_deg}};
    const auto act = io::parse_action(o.path);
    const auto decs = action::graded_decompose(act, o.max_deg);
    json list = json::array();
    for (std::size_t n = 0; n < decs.size(); ++n) {
        json d = io::decomposition_to_json(decs[n]);
        d["degree"] = n;
        list.push_back(d);
    }
    ctx.report["operation"] = "action.graded_decompose";
    ctx.report["degrees"] = list;
    return 0;
}

int cmd_annihilator(const Options& o, Context& ctx) {
    ctx.report["inputs"] = {{"action", o.path}, {"max_deg", o.max_deg}};
    const auto act = io::parse_action(o.path);
    const auto ann = action::annihilator(act, o.max_deg);
    const auto& f = act.algebra().field();
    const std::uint32_t p = f.characteristic();
    json basis = json::array();
    for (std::size_t r = 0; r < ann.dim(); ++r) basis.push_back(format_pbw(f, p, ann.basis().row(r)));
    ctx.report["operation"] = "action.annihilator";
    ctx.report["dim"] = ann.dim();
    ctx.report["basis"] = basis;
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations for the restricted enveloping algebra U = k<u,w>/(u^p, w^p - w, wu - uw - u)", "hopfu"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");
    Options o;
    std::function<int(const Options&, Context&)> handler;
    std::string command;

    auto sub = [&](const std::string& name, const std::string& desc, int (*fn)(const Options&, Context&)) {
        auto* s = app.add_subcommand(name, desc);
        s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table", "csv"}))->capture_default_str();
        s->callback([&handler, &command, fn, name] {
            handler = fn;
            command = name;
        });
        return s;
    };
    auto file_arg = [&](CLI::App* s, const char* what) { s->add_option("file", o.path, what)->required(); };
    auto deg_opt = [&](CLI::App* s) { s->add_option("--max-deg", o.max_deg, "Highest degree")->capture_default_str(); };

    auto* tensor = sub("tensor", "Decompose M(l,r) (x) M(m,r') by the closed form and by brute force", cmd_tensor);
    tensor->add_option("args", o.tensor_args, "p l r m r'")->required()->expected(5);

    file_arg(sub("decompose", "Indecomposable summands of a module file", cmd_decompose), "Module JSON file");

    auto* greencmd = app.add_subcommand("green", "Green ring computations");
    greencmd->require_subcommand(1);
    auto green_sub = [&](const std::string& name, const std::string& desc, int (*fn)(const Options&, Context&)) {
        auto* s = greencmd->add_subcommand(name, desc);
        s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table", "csv"}))->capture_default_str();
        s->add_option("--p", o.p, "Characteristic")->required();
        s->callback([&handler, &command, fn, name] {
            handler = fn;
            command = "green " + name;
        });
        return s;
    };
    green_sub("mul", "Product of Green ring elements such as \"M(3,0) + S_1\"", cmd_green_mul)
        ->add_option("factors", o.labels, "Factors")->required();
    green_sub("present-check", "Check the generators-and-relations presentation of r(U)", cmd_green_present);
    green_sub("fpdim", "Frobenius-Perron dimension (p = 2, 3)", cmd_green_fpdim)
        ->add_option("module", o.labels, "Summands")->required();

    auto* hil = sub("hilbert", "Hilbert function of a quadratic algebra", cmd_hilbert);
    file_arg(hil, "Algebra JSON file");
    deg_opt(hil);
    file_arg(sub("koszul-dual", "Koszul dual presentation", cmd_koszul), "Algebra JSON file");
    auto* frob = sub("frobenius", "Frobenius certificate of a quadratic algebra", cmd_frobenius);
    file_arg(frob, "Algebra JSON file");
    frob->add_option("--cutoff", o.cutoff, "Highest degree examined")->capture_default_str();

    auto* ver = sub("verify-family", "Verify catalog family instances (id or \"all\")", cmd_verify);
    ver->add_option("family", o.family, "Family id or all")->required();
    ver->add_option("--p", o.p, "Characteristic (default: smallest allowed)");
    ver->add_option("--k", o.k, "Field degree")->capture_default_str();
    ver->add_option("--param", o.params, "Parameter name=value (field element code)");
    ver->add_flag("--table", o.csv_table, "One CSV row per instance");
    ver->add_option("--random", o.random, "Verify this many random in-constraint parameter points");
    ver->add_option("--seed", o.seed, "Seed for --random")->capture_default_str();
    deg_opt(ver);

    sub("families", "List catalog families, variants and negative controls", cmd_families);

    auto* solve = sub("solve-actions", "Enumerate every U-action on the degree-one part", cmd_solve);
    file_arg(solve, "Algebra JSON file");
    solve->add_option("--budget", o.budget, "Enumeration budget (default: HOPFU_BUDGET or 1e8)");
    solve->add_option("--workers", o.workers, "Worker threads (0: hardware)");
    solve->add_flag("--list", o.list, "Include every solution");

    for (auto [name, desc, fn] : std::initializer_list<std::tuple<const char*, const char*, int (*)(const Options&, Context&)>>{
             {"invariants", "Dimensions of the invariants in each degree", cmd_invariants},
             {"graded-decompose", "Decomposition of each graded piece", cmd_graded},
             {"annihilator", "Elements of U acting as zero up to the given degree", cmd_annihilator}}) {
        auto* s = sub(name, desc, fn);
        file_arg(s, "Action JSON file");
        deg_opt(s);
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Context ctx{json::object(), out};
    ctx.report["command"] = command;
    int status = 0;
    try {
        status = handler(o, ctx);
    } catch (const Error& e) {
        if (kUsageErrors.contains(e.kind())) {
            err << "hopfu " << command << ": " << e.what() << "\n";
            return 2;
        }
        ctx.report.erase("operation");
        ctx.report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.detail()}};
        status = 1;
    } catch (const std::exception& e) {
        err << "hopfu " << command << ": internal error: " << e.what() << "\n";
        return 1;
    }
    if (!ctx.report.is_null()) emit(ctx.report, o.format, out);
    return status;
}

}  // namespace hopfu::cli
