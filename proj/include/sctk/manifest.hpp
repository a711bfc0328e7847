#ifndef SCTK_MANIFEST_HPP
#define SCTK_MANIFEST_HPP

#include "sctk/darboux.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sctk {

/// A parsed expression: an algebra element or, when D(...) occurs, a form.
struct ExprValue {
    bool is_form = false;
    Poly poly;
    Form form;

    Form as_form() const { return is_form ? form : Form::from_poly(poly); }
};

/// Parses the expression grammar over the given algebra:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := '-'* primary ('^' integer)?
///   primary:= rational | ident | 'D' '(' ident ')' | '(' expr ')'
/// Rationals are p or p/q; negative exponents only reach invertible
/// generators. Diagnostics carry line/column and the expected tokens.
ExprValue parse_expression(const std::string& text, const AlgebraPtr& alg);
Poly parse_poly(const std::string& text, const AlgebraPtr& alg);
Form parse_form(const std::string& text, const AlgebraPtr& alg);
Rat parse_rational(const std::string& text);

struct SchemeSection {
    DarbouxScheme scheme;
    std::string hamiltonian_src; // expression, parsed against the model algebra
    std::string z_src;           // element mode
    // explicit pairing for element mode over a user algebra: (x, y) names and
    // z names; empty for generator-mode scheme-built algebras
    std::vector<std::pair<std::string, std::string>> pair_names;
    std::vector<std::string> z_names;
};

/// Sectioned text manifest: [algebra], [differential], [forms], [points],
/// [scheme], [options]; grammar frozen in docs/FORMAT.md.
struct Manifest {
    std::string name = "unnamed";
    std::optional<int> k;
    std::vector<GradedVar> generators;
    std::vector<std::string> invert;
    std::vector<std::pair<std::string, std::string>> differential_src;
    std::vector<std::pair<std::string, std::string>> forms_src;
    std::vector<std::pair<std::string, Point>> points;
    std::optional<SchemeSection> scheme;
    std::map<std::string, std::string> options;

    bool has_algebra() const { return !generators.empty(); }
    const Point* point(const std::string& name) const;
};

Manifest parse_manifest(const std::string& text);
Manifest load_manifest(const std::string& path);

/// The manifest's explicit algebra, with differential applied and validated.
Cdga build_manifest_cdga(const Manifest& m);

/// Named forms parsed over the given algebra.
std::map<std::string, Form> build_manifest_forms(const Manifest& m, const AlgebraPtr& alg);

} // namespace sctk

#endif
