#include "hopfu/io.hpp"

#include <fstream>
#include <sstream>

#include "hopfu/error.hpp"

namespace hopfu::io {

namespace {

[[noreturn]] void schema(const std::string& ptr, const std::string& why) {
    throw Error(ErrorKind::SchemaError, (ptr.empty() ? "/" : ptr) + ": " + why);
}

const json& member(const json& j, const char* key, const std::string& ptr) {
    if (!j.is_object()) schema(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema(ptr, std::string("missing member \"") + key + "\"");
    return *it;
}

std::uint32_t small_uint(const json& j, const std::string& ptr) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0 || j.get<std::int64_t>() > 1'000'000)
        schema(ptr, "expected a non-negative integer");
    return j.get<std::uint32_t>();
}

std::int64_t integer(const json& j, const std::string& ptr) {
    if (!j.is_number_integer()) schema(ptr, "expected an integer");
    return j.get<std::int64_t>();
}

std::string idx(const std::string& ptr, std::size_t k) { return ptr + "/" + std::to_string(k); }

}  // namespace

json parse_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t k = 0; k < upto; ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string why = e.what();
        if (auto pos = why.find("column "); pos != std::string::npos) {
            if (auto colon = why.find(": ", pos); colon != std::string::npos) why = why.substr(colon + 2);
        }
        throw Error(ErrorKind::ParseError, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + why);
    }
}

json load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path.string());
}

Field field_from_json(const json& j, const std::string& ptr) {
    const std::uint32_t p = small_uint(member(j, "p", ptr), ptr + "/p");
    std::uint32_t k = 1;
    if (j.contains("k")) k = small_uint(j["k"], ptr + "/k");
    std::optional<std::vector<std::uint32_t>> modulus;
    if (j.contains("modulus") && !j["modulus"].is_null()) {
        const auto& m = j["modulus"];
        if (!m.is_array()) schema(ptr + "/modulus", "expected a coefficient list");
        std::vector<std::uint32_t> coeffs;
        for (std::size_t t = 0; t < m.size(); ++t) coeffs.push_back(small_uint(m[t], idx(ptr + "/modulus", t)));
        modulus = std::move(coeffs);
    }
    return Field::make(p, k, modulus);
}

json field_to_json(const Field& f) {
    json j{{"p", f.characteristic()}, {"k", f.degree()}};
    if (f.degree() > 1) j["modulus"] = f.modulus();
    return j;
}

Elem elem_from_json(const Field& f, const json& j, const std::string& ptr) {
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    if (!j.is_array()) schema(ptr, "expected a field element (integer or coefficient list)");
    if (j.size() > f.degree()) schema(ptr, "coefficient list longer than the field degree " + std::to_string(f.degree()));
    std::vector<std::uint32_t> coeffs;
    for (std::size_t t = 0; t < j.size(); ++t) {
        coeffs.push_back(f.from_int(integer(j[t], idx(ptr, t))));
    }
    return f.from_coeffs(coeffs);
}

json elem_to_json(const Field& f, Elem e) {
    auto c = f.coeffs(e);
    c.resize(f.degree(), 0);
    return c;
}

Matrix matrix_from_json(const Field& f, const json& j, const std::string& ptr) {
    if (!j.is_array()) schema(ptr, "expected a matrix (list of rows)");
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? (j[0].is_array() ? j[0].size() : 0) : 0;
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = j[r];
        if (!row.is_array()) schema(idx(ptr, r), "expected a row");
        if (row.size() != cols) schema(idx(ptr, r), "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, elem_from_json(f, row[c], idx(idx(ptr, r), c)));
    }
    return m;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(elem_to_json(m.field(), m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

umod::UModule module_from_json(const json& j) {
    const Field f = field_from_json(member(j, "field", ""), "/field");
    if (j.contains("p") && small_uint(j["p"], "/p") != f.characteristic()) schema("/p", "does not match /field/p");
    auto u = matrix_from_json(f, member(j, "mat_u", ""), "/mat_u");
    auto w = matrix_from_json(f, member(j, "mat_w", ""), "/mat_w");
    if (!u.is_square()) schema("/mat_u", "expected a square matrix");
    if (!w.is_square() || w.rows() != u.rows()) schema("/mat_w", "expected a square matrix of the same size as /mat_u");
    if (j.contains("dim") && small_uint(j["dim"], "/dim") != u.rows()) schema("/dim", "does not match the matrix size");
    return umod::UModule::make(std::move(u), std::move(w));
}

json module_to_json(const umod::UModule& m) {
    return {{"p", m.p()},
            {"field", field_to_json(m.field())},
            {"dim", m.dim()},
            {"mat_u", matrix_to_json(m.mat_u())},
            {"mat_w", matrix_to_json(m.mat_w())}};
}

umod::UModule parse_module(const std::filesystem::path& path) { return module_from_json(load_file(path)); }

quadalg::QuadAlgebra presentation_from_json(const json& j) {
    const Field f = field_from_json(member(j, "field", ""), "/field");
    const auto& gens = member(j, "generators", "");
    if (!gens.is_array() || gens.empty()) schema("/generators", "expected a non-empty list of names");
    std::vector<std::string> names;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (!gens[g].is_string()) schema(idx("/generators", g), "expected a string");
        names.push_back(gens[g].get<std::string>());
    }
    const std::size_t n = names.size();
    const auto& rels = member(j, "relations", "");
    if (!rels.is_array()) schema("/relations", "expected a list of relations");
    std::vector<std::vector<Elem>> vecs;
    for (std::size_t r = 0; r < rels.size(); ++r) {
        const std::string rp = idx("/relations", r);
        if (!rels[r].is_array()) schema(rp, "expected a list of terms");
        std::vector<Elem> v(n * n, 0);
        for (std::size_t t = 0; t < rels[r].size(); ++t) {
            const std::string tp = idx(rp, t);
            const auto& term = rels[r][t];
            const auto& mono = member(term, "monomial", tp);
            if (!mono.is_array() || mono.size() != 2) schema(tp + "/monomial", "expected [a, b]");
            const auto a = small_uint(mono[0], tp + "/monomial/0"), b = small_uint(mono[1], tp + "/monomial/1");
            if (a >= n) schema(tp + "/monomial/0", "generator index out of range");
            if (b >= n) schema(tp + "/monomial/1", "generator index out of range");
            const Elem c = elem_from_json(f, member(term, "coeff", tp), tp + "/coeff");
            v[a * n + b] = f.add(v[a * n + b], c);
        }
        vecs.push_back(std::move(v));
    }
    return quadalg::QuadAlgebra::make(f, std::move(names), vecs);
}

json presentation_to_json(const quadalg::QuadAlgebra& a) {
    const Field& f = a.field();
    const std::size_t n = a.n_gens();
    json rels = json::array();
    const auto& basis = a.relations().basis();
    for (std::size_t r = 0; r < basis.rows(); ++r) {
        json terms = json::array();
        for (std::size_t c = 0; c < n * n; ++c) {
            if (basis(r, c) == 0) continue;
            terms.push_back({{"monomial", {c / n, c % n}}, {"coeff", elem_to_json(f, basis(r, c))}});
        }
        rels.push_back(std::move(terms));
    }
    return {{"field", field_to_json(f)}, {"generators", a.gen_names()}, {"relations", std::move(rels)}};
}

quadalg::QuadAlgebra parse_presentation(const std::filesystem::path& path) { return presentation_from_json(load_file(path)); }

action::UAction action_from_json(const json& j, const std::filesystem::path& base_dir) {
    const auto& alg = member(j, "algebra", "");
    quadalg::QuadAlgebra a = [&] {
        if (alg.is_string()) {
            std::filesystem::path p = alg.get<std::string>();
            return parse_presentation(p.is_absolute() ? p : base_dir / p);
        }
        try {
            return presentation_from_json(alg);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SchemaError) throw;
            throw Error(ErrorKind::SchemaError, "/algebra" + e.detail());
        }
    }();
    auto u = matrix_from_json(a.field(), member(j, "rho_u", ""), "/rho_u");
    auto w = matrix_from_json(a.field(), member(j, "rho_w", ""), "/rho_w");
    return action::UAction::make(std::move(a), std::move(u), std::move(w));
}

json action_to_json(const action::UAction& act) {
    return {{"algebra", presentation_to_json(act.algebra())},
            {"rho_u", matrix_to_json(act.rho_u())},
            {"rho_w", matrix_to_json(act.rho_w())}};
}

action::UAction parse_action(const std::filesystem::path& path) {
    return action_from_json(load_file(path), path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

json decomposition_to_json(const umod::Decomposition& d) {
    json summands = json::array();
    for (const auto& [lab, mult] : d.mult) {
        summands.push_back({{"label", umod::format_label(lab)}, {"l", lab.l}, {"i", lab.i}, {"multiplicity", mult}});
    }
    return {{"dim", d.dim()}, {"summands", std::move(summands)}, {"terms", d.to_terms()}, {"text", d.to_string()}};
}

}  // namespace hopfu::io
