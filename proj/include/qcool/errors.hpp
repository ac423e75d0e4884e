// errors.hpp — Exception types shared by all qcool modules

#pragma once

#include <stdexcept>
#include <string>

namespace qcool {

// Each category maps onto one CLI exit code (see run.cpp).
enum class ErrorKind {
    invalid_input,   // malformed arguments (non-Hermitian, dimension mismatch, ...)
    domain,          // argument outside the formula's domain (vacuous bound, n <= 0, ...)
    model_invalid,   // model cannot satisfy the operation's preconditions
    instability,     // real-axis pole, parametric resonance, ill-conditioned solve
    regime,          // formula applied outside its declared regime
    accuracy,        // quadrature / truncation did not reach the requested tolerance
    contract,        // API misuse (delta density queried pointwise, ...)
    unsupported,     // declared limitation
    config           // configuration parsing/validation failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

namespace detail {
template <ErrorKind K>
class TypedError : public Error {
public:
    explicit TypedError(const std::string& what) : Error(K, what) {}
};
} // namespace detail

using InvalidInput = detail::TypedError<ErrorKind::invalid_input>;
using DomainError = detail::TypedError<ErrorKind::domain>;
using ModelInvalid = detail::TypedError<ErrorKind::model_invalid>;
using InstabilityError = detail::TypedError<ErrorKind::instability>;
using RegimeError = detail::TypedError<ErrorKind::regime>;
using AccuracyError = detail::TypedError<ErrorKind::accuracy>;
using ContractError = detail::TypedError<ErrorKind::contract>;
using UnsupportedError = detail::TypedError<ErrorKind::unsupported>;
using ConfigError = detail::TypedError<ErrorKind::config>;

} // namespace qcool
