#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hopfu {

enum class ErrorKind {
    NonPrime,
    ReducibleModulus,
    BadParameter,
    AmbientMismatch,
    FieldMismatch,
    DimensionMismatch,
    BadLength,
    BadLabel,
    InvalidModule,
    CharacteristicMismatch,
    CheckFailed,
    UnsupportedCharacteristic,
    BudgetExceeded,
    DegreeMismatch,
    NotUModule,
    RelationsNotPreserved,
    ConstraintViolated,
    BadCharacteristic,
    UnknownFamily,
    ParseError,
    SchemaError,
};

std::string_view to_string(ErrorKind kind);

// Every recoverable failure in the library is reported through this type;
// the kind is stable and is what the CLI maps onto exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace hopfu
