#pragma once

#include <stdexcept>
#include <string>

namespace hgm {

// Invalid argument for a mathematical operation (zero ideal, foreign prime, ...).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A configured resource bound was exceeded; the message names the bound.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation was called on data that does not satisfy its precondition.
struct precondition_error : std::logic_error {
    using std::logic_error::logic_error;
};

// The radicand is a p-th power, so K(a^(1/p)) = K.
struct degenerate_extension_error : domain_error {
    using domain_error::domain_error;
};

// Input that lies outside what the library handles.
struct unsupported_error : domain_error {
    using domain_error::domain_error;
};

}  // namespace hgm
