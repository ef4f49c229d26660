#pragma once

#include <stdexcept>
#include <string>

namespace rigidconv {

// Error categories surfaced by the library. The CLI maps parse_error to
// exit code 2 and everything else to exit code 1.
enum class Errc {
    zero_input,
    not_square,
    shape_mismatch,
    duplicate_points,
    unknown_point,
    non_rational_spectrum,
    resonant,
    not_rigid,
    not_irreducible,
    stuck,
    integer_parameter,
    indeterminate_conjugacy,
    bad_prime,
    symbol_residue,
    invariance_violation,
    replay_mismatch,
    empty_quotient,
    precondition,
    parse_error,
};

const char* errc_name(Errc c);

class DomainError : public std::runtime_error {
public:
    DomainError(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

// Input-document errors carry the JSON field path that failed.
class ParseError : public DomainError {
public:
    ParseError(const std::string& path, const std::string& what)
        : DomainError(Errc::parse_error, path.empty() ? what : path + ": " + what),
          path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

} // namespace rigidconv
