#pragma once

#include <stdexcept>
#include <string>

namespace msd {

/// Input text could not be parsed or does not match the scenario schema.
class schema_error : public std::runtime_error {
public:
    explicit schema_error(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was invoked outside its stated preconditions.
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

/// The data is structurally well-formed but contradicts the hypotheses the
/// engine relies on (inadmissible portrait, inconsistent bookkeeping, cyclic
/// saddle order, ...).
class hypothesis_error : public std::runtime_error {
public:
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace msd
