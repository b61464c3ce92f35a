#pragma once

#include <stdexcept>

namespace cdsar {

// Raised when an algorithm cannot meet its accuracy or stability contract
// (singular covariance, quadrature budget exhausted, non-finite input).
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cdsar
