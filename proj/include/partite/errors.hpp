#pragma once

#include <stdexcept>
#include <string>

namespace partite {

/// Thrown when an exact algorithm runs out of its node/iteration budget.
/// Callers never get an approximate answer in place of an exact one.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace partite
