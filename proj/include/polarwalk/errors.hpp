#pragma once

#include <stdexcept>
#include <string>

namespace polarwalk {

// Work would exceed a configured exhaustive-computation cap.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or unreadable input file.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polarwalk
