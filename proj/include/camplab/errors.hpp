#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace camplab {

// Iterative routine produced non-finite values or exhausted its budget.
// iteration() reports the first iteration at which the failure was detected.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, std::size_t iteration)
        : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration) {}

    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

// Noise-free MSE-map trajectory escaped upward: the map has no contracting
// tail at this threshold, so no finite fixed point exists.
class DivergenceError : public NumericalError {
public:
    DivergenceError(const std::string& what, std::size_t iteration)
        : NumericalError(what, iteration) {}
};

}  // namespace camplab
