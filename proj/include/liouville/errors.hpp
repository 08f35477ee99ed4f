#ifndef LIOUVILLE_ERRORS_HPP
#define LIOUVILLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace liouville {

// Argument outside the support or parameter range of a density family.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation at or beyond the time horizon where transition laws degenerate.
struct HorizonError : std::runtime_error {
    explicit HorizonError(const std::string& what) : std::runtime_error(what) {}
};

// Conditioning on a state the process cannot occupy (h or Theta vanishes).
struct UnreachableStateError : std::runtime_error {
    explicit UnreachableStateError(const std::string& what) : std::runtime_error(what) {}
};

// Operation requires a law shape the argument does not have
// (e.g. a pgf of a law with a continuous part).
struct UnsupportedLawError : std::runtime_error {
    explicit UnsupportedLawError(const std::string& what) : std::runtime_error(what) {}
};

// Moment-based operation on a family without the moment (1/2-stable has no mean).
struct IntegrabilityError : std::runtime_error {
    explicit IntegrabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Statistical routine given too few samples to produce a stable estimate.
struct InsufficientDataError : std::runtime_error {
    explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed run configuration or unknown suite name.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace liouville

#endif
