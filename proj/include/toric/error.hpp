#ifndef TORIC_ERROR_HPP
#define TORIC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace toric {

// Mathematical-precondition failures (bad cone data, non-generic flag, ...).
// The CLI maps these to exit code 1.
class MathError : public std::runtime_error {
public:
    MathError(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Malformed input documents.  The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace toric

#endif
