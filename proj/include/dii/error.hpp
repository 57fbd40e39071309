#pragma once

#include <stdexcept>
#include <string>

namespace dii {

// Failure categories; the CLI maps each to a distinct exit status.
enum class ErrorKind {
    precondition,           // caller violated a documented precondition
    unsupported,            // valid input outside the implemented families
    resource,               // compute budget or bound exceeded
    search_exhausted,       // bounded search found nothing (not a nonexistence proof)
    insufficient_precision, // numerics or truncation too coarse to decide
    match_ambiguous,        // eigen-matching could not be made unique
    regression,             // recomputed value disagrees with a pinned value
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::resource: return "resource";
    case ErrorKind::search_exhausted: return "search-exhausted";
    case ErrorKind::insufficient_precision: return "insufficient-precision";
    case ErrorKind::match_ambiguous: return "match-ambiguous";
    case ErrorKind::regression: return "regression";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::precondition, what);
}

} // namespace dii
