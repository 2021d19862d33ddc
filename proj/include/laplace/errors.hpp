#pragma once

#include <stdexcept>
#include <string>

namespace laplace
{

// Violated invariant or operation precondition. The message names the invariant.
class precondition_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed textual or JSON input.
class parse_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// An operator application produced terms outside the declared truncation window.
class truncation_overflow : public std::runtime_error
{
public:
    explicit truncation_overflow(const std::string &dropped)
        : std::runtime_error("truncation overflow, dropped terms: " + dropped), dropped_(dropped)
    {
    }
    const std::string &dropped() const noexcept { return dropped_; }

private:
    std::string dropped_;
};

inline void require(bool cond, const char *what)
{
    if (!cond) {
        throw precondition_error(what);
    }
}

inline void require(bool cond, const std::string &what)
{
    if (!cond) {
        throw precondition_error(what);
    }
}

} // namespace laplace
