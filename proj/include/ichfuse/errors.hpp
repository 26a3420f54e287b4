#pragma once

#include <stdexcept>
#include <string>

namespace ichfuse {

// Raised for anything wrong with user-supplied data or files: malformed CSV,
// broken invariants, missing inputs. The CLI maps this to exit code 1.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ichfuse
