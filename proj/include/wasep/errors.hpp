#pragma once

#include <stdexcept>
#include <string>

namespace wasep {

// Invalid arguments: parameters outside the documented domain.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// The tagged particle (or an observation window) came within reach of the
// periodic wrap; results would be contaminated by the ring geometry.
class RingBreach : public std::runtime_error {
public:
    explicit RingBreach(const std::string& what) : std::runtime_error(what) {}
};

class UntrackedBond : public std::logic_error {
public:
    explicit UntrackedBond(const std::string& what) : std::logic_error(what) {}
};

// Covariance matrix without a usable triangular factor.
class SingularMatrix : public std::runtime_error {
public:
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Rate functions requested outside the regimes where they are defined
// (beta < 1 with rho = 1/2, or rho in {0, 1}).
class DegenerateRegime : public std::domain_error {
public:
    explicit DegenerateRegime(const std::string& what) : std::domain_error(what) {}
};

}  // namespace wasep
