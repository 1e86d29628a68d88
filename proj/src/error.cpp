#include "hopfu/error.hpp"

namespace hopfu {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonPrime: return "NonPrime";
        case ErrorKind::ReducibleModulus: return "ReducibleModulus";
        case ErrorKind::BadParameter: return "BadParameter";
        case ErrorKind::AmbientMismatch: return "AmbientMismatch";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::BadLength: return "BadLength";
        case ErrorKind::BadLabel: return "BadLabel";
        case ErrorKind::InvalidModule: return "InvalidModule";
        case ErrorKind::CharacteristicMismatch: return "CharacteristicMismatch";
        case ErrorKind::CheckFailed: return "CheckFailed";
        case ErrorKind::UnsupportedCharacteristic: return "UnsupportedCharacteristic";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::NotUModule: return "NotUModule";
        case ErrorKind::RelationsNotPreserved: return "RelationsNotPreserved";
        case ErrorKind::ConstraintViolated: return "ConstraintViolated";
        case ErrorKind::BadCharacteristic: return "BadCharacteristic";
        case ErrorKind::UnknownFamily: return "UnknownFamily";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SchemaError: return "SchemaError";
    }
    return "Unknown";
}

}  // namespace hopfu
