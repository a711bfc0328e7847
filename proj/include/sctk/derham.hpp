#ifndef SCTK_DERHAM_HPP
#define SCTK_DERHAM_HPP

#include "sctk/cdga.hpp"

#include <map>
#include <vector>

namespace sctk {

/// Canonically ordered wedge word D(v1)^m1 ^ D(v2)^m2 ^ ... .
///
/// All commutation in DR(A) uses the total degree of each factor, with D(v)
/// of total degree |v| + 1. Hence D(v)^2 = 0 exactly when |v| is even, and
/// repeated factors (m >= 2) occur only for odd |v|.
struct VectorField;

struct Wedge {
    std::vector<std::pair<int, int>> factors; // (var id, mult), sorted by name order

    int weight() const;
    int degree(const Algebra& alg) const;       // sum of |v| * mult
    int total_parity(const Algebra& alg) const; // weight + degree mod 2
    bool operator<(const Wedge& rhs) const { return factors < rhs.factors; }
    bool operator==(const Wedge& rhs) const { return factors == rhs.factors; }
};

/// Homogeneous element of DR(A) of fixed weight p and degree k: a canonical
/// map from wedge words to Poly coefficients (coefficients on the left).
class Form {
public:
    Form() = default;
    Form(AlgebraPtr alg, int weight, int degree)
        : alg_(std::move(alg)), weight_(weight), degree_(degree) {}

    static Form zero(AlgebraPtr alg, int weight, int degree) {
        return Form(std::move(alg), weight, degree);
    }
    /// Weight-0 form from an algebra element (must be homogeneous).
    static Form from_poly(const Poly& coeff);

    const AlgebraPtr& algebra() const { return alg_; }
    int weight() const { return weight_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Wedge, Poly>& terms() const { return terms_; }

    /// Adds coeff * D(d_vars[0]) ^ ... ^ D(d_vars[p-1]) (as written; the
    /// canonical reordering sign is absorbed into the coefficient).
    void add_term(const Poly& coeff, const std::vector<int>& d_vars);

    /// Coefficient of the given wedge word (zero Poly when absent).
    Poly coefficient(const Wedge& w) const;

    Form operator+(const Form& rhs) const;
    Form operator-(const Form& rhs) const;
    Form operator-() const;
    Form operator*(const Rat& c) const;
    bool operator==(const Form& rhs) const;
    bool operator!=(const Form& rhs) const { return !(*this == rhs); }

    /// Left multiplication by an algebra element (homogeneous).
    Form scaled_by(const Poly& a) const;

    Form transport(const AlgebraPtr& target) const;

    std::string str() const;

private:
    void add_canonical(const Wedge& w, const Poly& coeff);
    friend Form wedge(const Form&, const Form&);
    friend Form ddr(const Form&);
    friend Form d_int(const Cdga&, const Form&);
    friend Form contract(const VectorField&, const Form&);

    AlgebraPtr alg_;
    int weight_ = 0;
    int degree_ = 0;
    std::map<Wedge, Poly> terms_;
};

/// Wedge product; weights and degrees add.
Form wedge(const Form& a, const Form& b);
Form wedge_pow(const Form& a, int e);

/// De Rham differential: weight p+1, degree k. On a homogeneous coefficient
/// a it contributes sum_v (-1)^(|a|(|v|+1)) (da/dv) D(v); d_dR^2 = 0.
Form ddr(const Form& w);

/// Internal differential: weight p, degree k+1. Acts by d on coefficients
/// and by D(v) -> -d_dR(dv) on wedge symbols (the unique extension with
/// d d_dR + d_dR d = 0). Requires the algebra differential.
Form d_int(const Cdga& A, const Form& w);

/// Vector field sum_v c_v d/dv; degree(c_v) - degree(v) is constant over
/// the nonzero components and is the field's degree.
struct VectorField {
    AlgebraPtr alg;
    std::map<int, Poly> components;
    int degree = 0;

    static VectorField basis(const AlgebraPtr& alg, int var_id);
    static VectorField zero(AlgebraPtr alg, int degree) {
        return VectorField{std::move(alg), {}, degree};
    }
    void validate() const;
    std::string str() const;
};

/// Contraction: the unique derivation of total degree |Y|+1 on DR(A) with
/// iota_Y g = 0 and iota_Y D(v) = Y(v).
Form contract(const VectorField& Y, const Form& w);

/// d-closedness of a single representative (a p-form of degree k).
Report is_shifted_pform(const Cdga& A, const Form& w);

/// Closed-form ladder (omega^0, omega^1, ...): checks d omega^0 = 0 and
/// d_dR omega^i + d omega^{i+1} = 0 with an implicit zero tail.
Report is_closed_sequence(const Cdga& A, const std::vector<Form>& ws);

} // namespace sctk

#endif
