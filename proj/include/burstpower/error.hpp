#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace burstpower {

// Precondition violations throw std::invalid_argument. Failures of the model
// itself (numerics, infeasibility) use the types below.

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No policy satisfies the constraints (or none was found by a search).
class InfeasibleError : public ModelError {
public:
    explicit InfeasibleError(const std::string& what, std::uint64_t evaluated = 0)
        : ModelError(what), evaluated_(evaluated) {}

    std::uint64_t evaluated_count() const noexcept { return evaluated_; }

private:
    std::uint64_t evaluated_;
};

}  // namespace burstpower
