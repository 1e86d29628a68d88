#pragma once

// Catalog of quadratic algebras with an inner-faithful U-action: the
// two-generator polynomial ring and the three-generator families t05-1a ...
// t05-10b, together with constraint predicates and a verification pipeline.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopfu/action.hpp"

namespace hopfu::families {

using gf::Elem;
using gf::Field;
using gf::Matrix;
using quadalg::QuadAlgebra;

// Parameter values: weights i, j as residues mod p, scalars as field codes.
using Params = std::map<std::string, Elem>;

enum class ParamDomain { Weight, Unit, Scalar, Bit };
std::string_view to_string(ParamDomain d);

struct ParamSlot {
    std::string name;
    ParamDomain domain;
    std::string description;
};

struct Constraint {
    std::string text;  // e.g. "ε(a^2-1)=0"
    std::function<bool(const Field&, const Params&)> holds;
};

enum class ModuleShape { M2, M3, M2PlusM1 };

enum class SpecKind { Family, Variant, Control };

struct FamilySpec {
    std::string id;
    SpecKind kind = SpecKind::Family;
    std::string summary;
    std::vector<std::uint32_t> allowed_p;  // empty: every prime >= min_p
    std::uint32_t min_p = 2;
    ModuleShape shape = ModuleShape::M2PlusM1;
    std::vector<ParamSlot> params;
    std::vector<std::string> relations;  // printed form
    std::vector<Constraint> constraints;
    // Sample parameter points at min_p, used by the positive suite.
    std::vector<Params> samples;
    std::function<std::vector<std::vector<quadalg::Term>>(const Field&, const Params&)> build;

    bool allows(std::uint32_t p) const;
    std::size_t gldim() const { return shape == ModuleShape::M2 ? 2 : 3; }
    std::vector<std::string> generator_names() const;
};

// The thirteen catalog families, in catalog order.
const std::vector<FamilySpec>& list_families();
// Alternative constructions of catalog families ("t05-3-alt", "t05-4-skew")
// and rejected candidates ("ctl-x2-cubed", "ctl-dual-onto-polynomial",
// "ctl-p2-equal-weights").
const std::vector<FamilySpec>& extra_specs();
// Looks up catalog and extra specs; throws UnknownFamily.
const FamilySpec& find_spec(const std::string& id);

struct FamilyInstance {
    std::string family;
    Params params;
    std::size_t gldim = 3;
    QuadAlgebra algebra;
    Matrix rho_u;
    Matrix rho_w;
    std::vector<std::string> violated;  // constraint texts that fail

    action::UAction action() const { return action::UAction::make(algebra, rho_u, rho_w); }
};

std::string format_params(const Params& params);

// Fills unspecified parameters with defaults and builds the instance without
// checking constraints.  Throws UnknownFamily, BadCharacteristic, BadParameter.
FamilyInstance instantiate_unchecked(const std::string& id, const Field& field, Params params);
// As above, then throws ConstraintViolated ("<text> fails") and validates the action.
action::UAction instantiate(const std::string& id, const Field& field, Params params);
FamilyInstance instantiate_checked(const std::string& id, const Field& field, Params params);

struct Check {
    std::string name;
    bool pass = false;
    std::string witness;
};

struct VerificationReport {
    std::string family;
    std::uint32_t p = 0;
    std::uint32_t k = 1;
    Params params;
    std::size_t max_deg = 0;
    std::vector<Check> checks;
    std::vector<std::size_t> hilbert;
    std::vector<std::size_t> expected_hilbert;
    std::vector<std::size_t> dual_dims;
    quadalg::FrobeniusStatus dual_status = quadalg::FrobeniusStatus::Inconclusive;

    bool overall() const;
    const Check& check(const std::string& name) const;
};

// Check names in report order.
const std::vector<std::string>& check_names();

std::vector<std::size_t> expected_hilbert(std::size_t gldim, std::size_t max_deg);

VerificationReport verify(const FamilyInstance& inst, std::size_t max_deg = 6);

// Algebra-level certificates: relation count, Hilbert function, Frobenius dual.
struct AlgebraCertificate {
    bool relations_ok = false;
    bool hilbert_ok = false;
    bool dual_frobenius_ok = false;
    std::vector<std::size_t> hilbert;
    std::vector<std::size_t> dual_dims;
    quadalg::FrobeniusStatus dual_status = quadalg::FrobeniusStatus::Inconclusive;
    bool pass() const { return relations_ok && hilbert_ok && dual_frobenius_ok; }
};

AlgebraCertificate certify_algebra(const QuadAlgebra& a, std::size_t gldim, std::size_t max_deg = 6);

// Whether the instance's (rho_u, rho_w) occurs in solve_actions on its own
// algebra; nullopt when the enumeration exceeds the budget.
std::optional<bool> solver_contains(const FamilyInstance& inst, std::uint64_t budget);

// Three-generator relation forms in characteristic 2, each with a predicate on
// its parameters that is claimed equivalent to AS regularity.
struct Char2Form {
    std::string id;
    std::vector<std::string> relations;
    std::vector<std::string> params;
    std::string predicate_text;
    std::function<bool(const Field&, const Params&)> predicate;
    std::function<std::vector<std::vector<quadalg::Term>>(const Field&, const Params&)> build;
};

const std::vector<Char2Form>& char2_forms();

struct SweepDisagreement {
    Params params;
    bool predicate = false;
    bool certificate = false;
};

struct SweepResult {
    std::string form;
    std::uint32_t q = 0;
    std::size_t points = 0;
    std::size_t predicate_true = 0;
    std::size_t certified = 0;
    std::vector<SweepDisagreement> disagreements;
};

// Every parameter point of the form over the field.
SweepResult sweep_char2_form(const Char2Form& form, const Field& field, std::size_t max_deg = 6);

}  // namespace hopfu::families
