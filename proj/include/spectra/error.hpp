#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
    domain,  ///< invalid mathematical input (non-prime p, failed axiom, ...)
    parse,   ///< malformed JSON or descriptor
    bound,   ///< an enumeration bound would be exceeded
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(const std::string& what) {
    throw Error(ErrorKind::domain, what);
}

[[noreturn]] inline void fail_bound(const std::string& what) {
    throw Error(ErrorKind::bound, what);
}

[[noreturn]] inline void fail_parse(const std::string& what) {
    throw Error(ErrorKind::parse, what);
}

/// Enumeration caps shared by every exhaustive routine.
struct Bounds {
    std::size_t ideal_enumeration = 64;      ///< max |R| for full ideal enumeration
    std::size_t module_size = 4096;          ///< max size of a constructed module
    std::size_t ambient_enumeration = 1u << 20;  ///< max |R^r| walked when forming cokernels
    std::size_t hom_pairs = 1u << 16;        ///< max |M|*|E| for homomorphism search
    int degree = 6;                          ///< default degree bound for graded loops
    long radical = 1000;                     ///< default radical bound over Z
};

}  // namespace spectra
