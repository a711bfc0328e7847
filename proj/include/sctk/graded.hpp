#ifndef SCTK_GRADED_HPP
#define SCTK_GRADED_HPP

#include "sctk/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sctk {

/// A named free generator of a graded-commutative polynomial algebra.
/// Cohomological degree is non-positive; invertible generators (adjoined
/// inverses, the symplectification fiber variable) sit in degree 0 and may
/// carry negative exponents.
struct GradedVar {
    std::string name;
    int degree = 0;
    bool invertible = false;
    /// Adjoined inverse symbols from localization are bookkeeping, not new
    /// generators; they do not count toward m_0 / vdim.
    bool counts_for_vdim = true;
};

/// Immutable registry of the generators of one algebra. Polys, Forms and
/// Derivations hold a shared handle; operands of binary operations must
/// come from the same registry.
class Algebra {
public:
    static std::shared_ptr<const Algebra> make(std::vector<GradedVar> vars);

    int size() const { return static_cast<int>(vars_.size()); }
    const GradedVar& var(int id) const { return vars_[static_cast<size_t>(id)]; }
    int degree(int id) const { return vars_[static_cast<size_t>(id)].degree; }
    const std::string& name(int id) const { return vars_[static_cast<size_t>(id)].name; }
    bool has(const std::string& name) const { return index_.count(name) != 0; }
    int id_of(const std::string& name) const;

    /// Rank of the generator in name-lexicographic order; monomial and wedge
    /// factors are kept sorted by this rank.
    int order_of(int id) const { return order_[static_cast<size_t>(id)]; }

    /// Generator ids sorted name-lexicographically.
    const std::vector<int>& sorted_ids() const { return sorted_ids_; }

    /// New registry with extra generators appended (localize / symplectify).
    std::shared_ptr<const Algebra> extended(std::vector<GradedVar> extra) const;

private:
    Algebra() = default;
    std::vector<GradedVar> vars_;
    std::map<std::string, int> index_;
    std::vector<int> order_;
    std::vector<int> sorted_ids_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Product of generator powers in canonical (name-lexicographic) order.
/// Odd-degree generators appear with exponent exactly 1; negative exponents
/// only on invertible generators. The Koszul sign of any reordering is
/// absorbed into the owning term's coefficient at construction time.
struct Monomial {
    std::vector<std::pair<int, int>> factors; // (var id, exponent), sorted by order

    int degree(const Algebra& alg) const;
    bool operator<(const Monomial& rhs) const { return factors < rhs.factors; }
    bool operator==(const Monomial& rhs) const { return factors == rhs.factors; }
};

class Poly;
struct Point;

/// Element of the algebra: exact-rational combination of canonical
/// monomials. Unique canonical form; equality is structural.
class Poly {
public:
    Poly() = default;
    explicit Poly(AlgebraPtr alg) : alg_(std::move(alg)) {}

    static Poly zero(AlgebraPtr alg) { return Poly(std::move(alg)); }
    static Poly constant(AlgebraPtr alg, const Rat& c);
    static Poly generator(AlgebraPtr alg, int var_id);
    static Poly generator(AlgebraPtr alg, const std::string& name);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Degree when homogeneous (zero is homogeneous of every degree).
    std::optional<int> degree() const;
    bool is_homogeneous() const { return is_zero() || degree().has_value(); }

    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator-() const;
    Poly operator*(const Poly& rhs) const;
    Poly operator*(const Rat& c) const;
    bool operator==(const Poly& rhs) const;
    bool operator!=(const Poly& rhs) const { return !(*this == rhs); }

    Poly pow(int e) const;

    /// Adds c * m (m given as unsorted (var, exp) list; Koszul sign of the
    /// sort is applied). Vanishing squares of odd generators drop the term.
    void add_term(const std::vector<std::pair<int, int>>& factors, const Rat& c);

    std::string str() const;

    /// Rebuilds this element over a registry that contains (by name, degree)
    /// every generator of the current one.
    Poly transport(const AlgebraPtr& target) const;

private:
    void add_canonical(const Monomial& m, const Rat& c);
    friend Poly mul(const Poly&, const Poly&);
    friend Poly partial(const Poly&, int);
    friend Rat evaluate(const Poly&, const Point&);

    AlgebraPtr alg_;
    std::map<Monomial, Rat> terms_;
};

/// Sign accumulated when moving each right factor past each left factor:
/// (-1)^(sum of pairwise degree products).
int koszul_sign(const std::vector<int>& left_degrees, const std::vector<int>& right_degrees);

/// Supercommutative product (with mixed-algebra operands rejected).
Poly mul(const Poly& a, const Poly& b);

/// Left partial derivative with respect to a generator:
/// d(ab)/dv = (da/dv) b + (-1)^(|v||a|) a (db/dv),  dv/dw = delta_vw.
Poly partial(const Poly& p, int var_id);
Poly partial(const Poly& p, const std::string& name);

/// Graded derivation given by its images on generators (absent = zero),
/// extended by the graded Leibniz rule: D(p) = sum_v D(v) * (left) dp/dv.
struct Derivation {
    AlgebraPtr alg;
    int parity_degree = 1;
    std::map<int, Poly> images;

    static Derivation zero(AlgebraPtr a, int parity) { return Derivation{std::move(a), parity, {}}; }

    Poly image(int var_id) const;
    void set_image(int var_id, Poly value);
    /// Validates degree bookkeeping of every stored image.
    void validate() const;
};

Poly apply_derivation(const Derivation& d, const Poly& p);

/// Rational assignment to the degree-0 generators (a point of the ambient
/// affine space of spec H^0(A)). Invertible generators must be nonzero.
struct Point {
    std::map<std::string, Rat> assignment;

    const Rat& value(const std::string& name) const;
    void validate(const Algebra& alg) const;
};

/// Restriction to H^0: monomials containing a negative-degree generator
/// evaluate to 0; degree-0 monomials evaluate numerically.
Rat evaluate(const Poly& p, const Point& pt);

namespace detail {
/// Inserts factor v^e into a canonical monomial, returning the Koszul sign
/// (0 means the term vanished: odd square or bad exponent).
int monomial_insert(const Algebra& alg, Monomial& m, int var_id, int exp);
} // namespace detail

} // namespace sctk

#endif
