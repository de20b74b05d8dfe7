// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ancl {

/// Broad error classes; each maps to one CLI exit code / C API status.
enum class ErrorClass { parse = 2, contract = 3, not_member = 4, internal = 5 };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
    [[nodiscard]] ErrorClass error_class() const noexcept { return cls_; }

private:
    ErrorClass cls_;
};

// Input / schema level
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorClass::parse, w) {}
};
struct CertificationError : Error {
    explicit CertificationError(const std::string& w) : Error(ErrorClass::parse, "certification: " + w) {}
};
struct LookupError : Error {
    explicit LookupError(const std::string& w) : Error(ErrorClass::parse, "lookup: " + w) {}
};

// Contract level
struct ContractError : Error {
    explicit ContractError(const std::string& w) : Error(ErrorClass::contract, w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorClass::contract, "domain: " + w) {}
};
struct ExpressionError : Error {
    explicit ExpressionError(const std::string& w) : Error(ErrorClass::contract, "expression: " + w) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(ErrorClass::contract, "validation: " + w) {}
};
struct UnsupportedSumError : Error {
    explicit UnsupportedSumError(const std::string& w) : Error(ErrorClass::contract, "unsupported sum: " + w) {}
};

struct NotMemberError : Error {
    explicit NotMemberError(const std::string& w) : Error(ErrorClass::not_member, w) {}
};

struct IterationLimitError : Error {
    explicit IterationLimitError(const std::string& w) : Error(ErrorClass::internal, "iteration limit: " + w) {}
};
struct TheoremViolation : Error {
    explicit TheoremViolation(const std::string& w) : Error(ErrorClass::internal, "theorem violation: " + w) {}
};

} // namespace ancl
