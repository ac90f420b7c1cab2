#ifndef LINFORM_ERRORS_HPP
#define LINFORM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace linform {

// Error taxonomy shared by the library and the CLI exit codes:
//   validation_error / domain_error / precondition_error -> exit 3
//   resource_error                                       -> exit 4
//   tolerance_error / precision_error                    -> exit 5

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An effort or memory budget was exceeded; the message names the limit.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numeric tolerance could not be met; the message reports what was achieved.
struct tolerance_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An interval straddles a decision boundary at the maximum working precision.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace linform

#endif
