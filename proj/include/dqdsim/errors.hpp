#ifndef DQDSIM_ERRORS_HPP
#define DQDSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dqd {

// Error categories map 1:1 onto CLI exit codes / C API status codes.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace dqd

#endif
