#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fkpp {

/// Parameter or configuration outside its admissible range.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested accuracy could not be reached; carries the bound that was achieved.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_bound(achieved) {}
    double achieved_bound;
};

/// A kernel table failed one of the Green's-function admissibility checks.
class kernel_validation_error : public std::runtime_error {
public:
    kernel_validation_error(const std::string& condition, double residual,
                            const std::string& what)
        : std::runtime_error(what), condition(condition), residual(residual) {}
    std::string condition;  // "unit_mass", "realness", "positivity", ...
    double residual;
};

/// Iterative solve did not converge; carries the sup-change history.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), sup_change_history(std::move(history)) {}
    std::vector<double> sup_change_history;
};

/// Initial condition exceeds the |u0| <= 1 bound without the override flag.
class bound_violation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fkpp
