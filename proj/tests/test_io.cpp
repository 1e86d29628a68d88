#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>

#include "hopfu/error.hpp"
#include "hopfu/io.hpp"

using namespace hopfu;
using io::json;
using umod::Label;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::CheckFailed;
}

std::string detail_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.detail();
    }
    FAIL("no error thrown");
    return {};
}

json commutative3(std::uint32_t p) {
    json rels = json::array();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            rels.push_back({{{"monomial", {j, i}}, {"coeff", {1}}}, {{"monomial", {i, j}}, {"coeff", {-1}}}});
    return {{"field", {{"p", p}}}, {"generators", {"x1", "x2", "x3"}}, {"relations", rels}};
}

std::filesystem::path scratch_dir() {
    auto d = std::filesystem::temp_directory_path() / "hopfu_test_io";
    std::filesystem::create_directories(d);
    return d;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("parse errors carry line and column") {
    const std::string text = "{\n  \"field\": {\"p\": 3},\n  \"generators\": [\"x\",]\n}";
    const auto msg = detail_of([&] { io::parse_text(text, "alg.json"); });
    CHECK(msg.rfind("alg.json:3:", 0) == 0);
    CHECK(kind_of([&] { io::parse_text(text); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { io::load_file("/nonexistent/hopfu.json"); }) == ErrorKind::ParseError);
}

TEST_CASE("schema errors name the offending member") {
    json j = commutative3(3);
    j["relations"][1][0]["monomial"] = {0, 7};
    CHECK(detail_of([&] { io::presentation_from_json(j); }).rfind("/relations/1/0/monomial/1:", 0) == 0);

    j = commutative3(3);
    j.erase("generators");
    CHECK(detail_of([&] { io::presentation_from_json(j); }).rfind("/: missing member \"generators\"", 0) == 0);

    j = commutative3(3);
    j["relations"][0][0]["coeff"] = "one";
    CHECK(detail_of([&] { io::presentation_from_json(j); }).rfind("/relations/0/0/coeff:", 0) == 0);

    j = commutative3(3);
    j["field"]["p"] = 4;
    CHECK(kind_of([&] { io::presentation_from_json(j); }) == ErrorKind::NonPrime);
}

TEST_CASE("presentation round trip is canonical") {
    const auto a = io::presentation_from_json(commutative3(3));
    CHECK(a.field().characteristic() == 3);
    CHECK(a.relations().dim() == 3);
    CHECK(a.hilbert(3) == std::vector<std::size_t>{1, 3, 6, 10});

    const json once = io::presentation_to_json(a);
    const json twice = io::presentation_to_json(io::presentation_from_json(once));
    CHECK(once == twice);
    CHECK(once.dump() == twice.dump());
    CHECK(once["relations"][0][0]["coeff"] == json::array({1}));

    // Random rescaling and recombination of the input relations does not change the output.
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        json j = commutative3(3);
        json mixed = json::array();
        for (int r = 0; r < 3; ++r) {
            json terms = json::array();
            for (int s = 0; s < 3; ++s) {
                const int c = static_cast<int>(rng() % 3);
                for (auto t : j["relations"][s]) {
                    t["coeff"] = {t["coeff"][0].get<int>() * c};
                    terms.push_back(t);
                }
            }
            mixed.push_back(terms);
        }
        j["relations"] = mixed;
        const auto b = io::presentation_from_json(j);
        if (b.relations().dim() == 3) CHECK(io::presentation_to_json(b) == once);
    }
}

TEST_CASE("dependent relations are accepted and counted") {
    json j = commutative3(2);
    j["relations"].push_back(j["relations"][0]);
    const auto a = io::presentation_from_json(j);
    CHECK(a.supplied_relations() == 4);
    CHECK(a.relations().dim() == 3);
    CHECK(a.dependent_relations() == 1);
}

TEST_CASE("extension field elements") {
    const auto f = gf::Field::make(2, 2);
    const json j = io::field_to_json(f);
    CHECK(j.contains("modulus"));
    CHECK(io::field_from_json(j) == f);
    for (gf::Elem e = 0; e < f.order(); ++e) CHECK(io::elem_from_json(f, io::elem_to_json(f, e), "") == e);
    CHECK(io::elem_to_json(f, 0) == json::array({0, 0}));
    CHECK(kind_of([&] { io::elem_from_json(f, json::array({1, 0, 1}), "/x"); }) == ErrorKind::SchemaError);
    CHECK(io::elem_from_json(gf::Field::make(5), -1, "") == 4);
    CHECK(io::elem_from_json(gf::Field::make(5), json::array({7}), "") == 2);
}

TEST_CASE("module files") {
    const auto f = gf::Field::make(3);
    const auto m = umod::direct_sum(umod::standard_module(f, 2, 1), umod::standard_module(f, 3, 0));
    const json j = io::module_to_json(m);
    CHECK(j["dim"] == 5);
    CHECK(j["p"] == 3);
    const auto back = io::module_from_json(j);
    CHECK(back.mat_u() == m.mat_u());
    CHECK(back.mat_w() == m.mat_w());
    CHECK(io::module_to_json(back).dump() == j.dump());

    json bad = j;
    bad["dim"] = 4;
    CHECK(detail_of([&] { io::module_from_json(bad); }).rfind("/dim:", 0) == 0);
    bad = j;
    bad["mat_w"][0][0] = {2};
    CHECK(kind_of([&] { io::module_from_json(bad); }) == ErrorKind::InvalidModule);
    bad = j;
    bad["mat_u"][2].erase(0);
    CHECK(detail_of([&] { io::module_from_json(bad); }).rfind("/mat_u/2:", 0) == 0);

    const json d = io::decomposition_to_json(umod::decompose(m));
    CHECK(d["terms"] == "M(2,1) + M(3,0)");
    CHECK(d["dim"] == 5);
}

TEST_CASE("action files") {
    json alg = {{"field", {{"p", 2}}},
                {"generators", {"x1", "x2"}},
                {"relations", {{{{"monomial", {1, 0}}, {"coeff", {1}}}, {{"monomial", {0, 1}}, {"coeff", {1}}}}}}};
    // V = M(2,1): u x1 = x2, w x1 = x1, w x2 = 0
    json act = {{"algebra", alg}, {"rho_u", {{{0}, {0}}, {{1}, {0}}}}, {"rho_w", {{{1}, {0}}, {{0}, {0}}}}};
    const auto a = io::action_from_json(act);
    CHECK(a.algebra().relations().dim() == 1);
    const json once = io::action_to_json(a);
    CHECK(io::action_to_json(io::action_from_json(once)) == once);

    SUBCASE("path-based algebra") {
        const auto dir = scratch_dir();
        write_file(dir / "plane.json", alg.dump());
        json by_path = act;
        by_path["algebra"] = "plane.json";
        write_file(dir / "act.json", by_path.dump());
        CHECK(io::action_to_json(io::parse_action(dir / "act.json")) == once);
        by_path["algebra"] = "missing.json";
        CHECK(kind_of([&] { io::action_from_json(by_path, dir); }) == ErrorKind::ParseError);
    }
    SUBCASE("nested schema pointer") {
        json bad = act;
        bad["algebra"]["relations"][0][1].erase("coeff");
        CHECK(detail_of([&] { io::action_from_json(bad); }).rfind("/algebra/relations/0/1:", 0) == 0);
    }
    SUBCASE("failing identity is named") {
        json bad = act;
        bad["rho_w"] = {{{1}, {0}}, {{0}, {1}}};
        CHECK(kind_of([&] { io::action_from_json(bad); }) == ErrorKind::NotUModule);
        CHECK(detail_of([&] { io::action_from_json(bad); }).find("wu - uw = u") != std::string::npos);
    }
    SUBCASE("relations must be preserved") {
        json bad = act;
        bad["algebra"]["relations"] = {{{{"monomial", {0, 0}}, {"coeff", {1}}}}};
        CHECK(kind_of([&] { io::action_from_json(bad); }) == ErrorKind::RelationsNotPreserved);
    }
}

TEST_CASE("labels and decomposition text") {
    CHECK(umod::parse_label("S_2", 3) == Label{1, 2});
    CHECK(umod::parse_label("M(3,0)", 3) == Label{3, 0});
    CHECK(umod::parse_label("2,1", 3) == Label{2, 1});
    CHECK(umod::parse_label(" M( 2 , 1 ) ", 3) == Label{2, 1});
    for (const char* bad : {"S_3", "M(4,0)", "M(0,0)", "M(2)", "T_1", "", "2,", "M(2,1)x"})
        CHECK(kind_of([&] { umod::parse_label(bad, 3); }) == ErrorKind::BadLabel);

    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::uint32_t l = 1; l <= p; ++l)
            for (std::uint32_t i = 0; i < p; ++i) {
                const Label lab{l, i};
                CHECK(umod::parse_label(umod::format_label(lab), p) == lab);
            }

    CHECK(umod::decomposition_of(3, {{{3, 0}, 1}, {{1, 1}, 1}}).to_terms() == "M(1,1) + M(3,0)");
    CHECK(umod::decomposition_of(3, {{{2, 1}, 2}}).to_terms() == "2 M(2,1)");
    CHECK(umod::Decomposition{3, {}}.to_terms() == "0");
}
