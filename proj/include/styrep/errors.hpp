#pragma once

#include <stdexcept>
#include <string>

namespace styrep {

// Invalid input data (corpus files, cases files, labels). CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace styrep
