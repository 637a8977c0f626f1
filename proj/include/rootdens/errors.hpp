// errors.hpp -- exception types shared by every module.
//
// Two user-visible failure categories:
//   invalid_input_error  -- malformed or out-of-domain input (CLI exit code 2)
//   budget_error         -- a configured budget (factoring bound, model size,
//                           sieve ceiling, precision target) cannot be met
//                           (CLI exit code 3)
// Internal invariant violations throw std::logic_error and are never expected.
#pragma once

#include <stdexcept>
#include <string>

namespace rootdens {

class invalid_input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rootdens
