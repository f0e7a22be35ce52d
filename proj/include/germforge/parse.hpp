#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "germforge/poly.hpp"

namespace germforge {

struct SyntaxError : std::runtime_error {
    size_t position;
    SyntaxError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

struct GermViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parsed map definition. The parameter symbol `t` is kept symbolic until
// a rational value is substituted with instantiate().
class ParsedMap {
public:
    ParsedMap(std::vector<std::string> vars, std::vector<Poly> components, bool uses_param);

    const std::vector<std::string>& map_vars() const { return vars_; }
    bool uses_param() const { return uses_param_; }

    // Substitutes the parameter (if any) and verifies the germ condition.
    PolyMap instantiate(const Rational& t_value) const;

private:
    std::vector<std::string> vars_;   // declared variables, without t
    std::vector<Poly> components_;    // over vars_ (+ "t" when uses_param_)
    bool uses_param_;
};

// Grammar: f(<vars>) = (<expr>, ...) with + - * ^, integer and rational
// literals (3/2), and the reserved parameter symbol t.
ParsedMap parse_map(const std::string& text);

PolyMap parse_map_fixed(const std::string& text, const Rational& t_value = 0);

// Canonical text form; parse_map(render(f)).instantiate(0) == f.
std::string render(const PolyMap& f);

} // namespace germforge
