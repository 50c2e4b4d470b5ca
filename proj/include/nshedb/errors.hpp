#pragma once

#include <stdexcept>
#include <string>

#include "nshedb/rational.hpp"

namespace nshedb {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidParams : Error {
    explicit InvalidParams(const std::string& what) : Error("invalid params: " + what) {}
};

struct BackendMismatch : Error {
    explicit BackendMismatch(const std::string& what) : Error("backend/params mismatch: " + what) {}
};

struct DepthBudgetExceeded : Error {
    DepthBudgetExceeded(Rational attempted, Rational budget)
        : Error("multiplicative depth " + attempted.str() + " exceeds budget " + budget.str()),
          attempted(attempted),
          budget(budget) {}
    Rational attempted;
    Rational budget;
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what) : Error("index out of range: " + what) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error("shape mismatch: " + what) {}
};

/// Raised when a query uses a construct outside the supported operator set.
struct UnsupportedFeature : Error {
    explicit UnsupportedFeature(const std::string& what) : Error("unsupported feature: " + what) {}
};

/// Raised when no plan rewrite keeps the deepest path within the depth budget.
/// This engine has no bootstrapping; such queries are rejected with a depth report.
struct InfeasibleWithoutBootstrap : Error {
    InfeasibleWithoutBootstrap(Rational depth, Rational budget)
        : Error("plan depth " + depth.str() + " exceeds noise budget " + budget.str() +
                " and no rewrite can fix it (bootstrapping unavailable)"),
          depth(depth),
          budget(budget) {}
    Rational depth;
    Rational budget;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error("parse error at " + std::to_string(position) + ": " + what), position(position) {}
    std::size_t position;
};

struct SerializationError : Error {
    explicit SerializationError(const std::string& what) : Error("serialization: " + what) {}
};

struct EncodingError : Error {
    explicit EncodingError(const std::string& what) : Error("encoding: " + what) {}
};

/// Public pre-execution bound check failed: an aggregate or comparison could
/// wrap around mod p for the declared value ranges.
struct OverflowBound : Error {
    explicit OverflowBound(const std::string& what) : Error("modular-safety bound: " + what) {}
};

struct ClientError : Error {
    explicit ClientError(const std::string& what) : Error(what) {}
};

}  // namespace nshedb
