#ifndef SCTK_RATIONAL_HPP
#define SCTK_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace sctk {

/// Exact arbitrary-precision rational. Every coefficient in the toolkit is
/// one of these; there is no floating point anywhere.
using Rat = boost::multiprecision::cpp_rational;

/// Error with a stable machine-readable code (used for CLI diagnostics).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline bool is_odd_degree(int degree) { return (degree % 2) != 0; }

/// Parity product sign: (-1)^(a*b) with a, b arbitrary integers.
inline int parity_sign(long long a, long long b) {
    return (a % 2 != 0 && b % 2 != 0) ? -1 : 1;
}

/// Renders p or p/q without spaces; reparses under the expression grammar.
inline std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

} // namespace sctk

#endif
