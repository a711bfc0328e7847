#ifndef SCTK_CDGA_HPP
#define SCTK_CDGA_HPP

#include "sctk/graded.hpp"
#include "sctk/report.hpp"

#include <vector>

namespace sctk {

/// Build description for a standard-form tower: a free polynomial ring in
/// degree 0 (optionally with inverted elements) with generators adjoined
/// degree by degree, and a degree +1 differential.
struct CdgaSpec {
    std::vector<GradedVar> base_vars; // degree 0
    std::vector<GradedVar> neg_vars;  // degrees -1..-n, any order
    // differential images by generator name; absent means zero
    std::vector<std::pair<std::string, Poly>> differential_exprs;
};

/// Validated algebra handle: generator registry plus square-degree-checked
/// internal differential and per-degree generator counts.
struct Cdga {
    AlgebraPtr alg;
    Derivation d; // parity +1

    /// m[i] = number of vdim-counted generators in degree -i.
    std::vector<int> gen_counts() const;
    int max_depth() const; // n such that generators live in degrees -n..0

    Poly diff(const Poly& p) const { return apply_derivation(d, p); }
    Poly poly(const std::string& name) const { return Poly::generator(alg, name); }
};

/// Darboux variable bookkeeping shared by the master-equation check and the
/// Hamiltonian-induced differential: (x_j^{-i}, y_j^{k+i}) pairs indexed by
/// i >= 0 plus the middle-degree z block when k = -4l-2.
struct PairingScheme {
    int k = -1;
    struct Pair {
        int i = 0;  // tower index; i = 0 pairs a base variable with y^k
        int x = -1; // var id of x_j^{-i}
        int y = -1; // var id of y_j^{k+i}
    };
    std::vector<Pair> pairs;
    std::vector<int> z_vars; // degree -2l-1 generators, k = -4l-2 only

    void validate(const Algebra& alg) const;
};

/// Assembles and validates the tower; rejects duplicate names, positive
/// degrees and differential images of the wrong degree.
Cdga build_tower(const CdgaSpec& spec);

/// d^2 = 0 on every generator (sufficient by the Leibniz rule); failures
/// are reported per generator with the nonzero residual.
Report check_d_squared(const Cdga& A);

/// Classical master equation: sum over i >= 1 of dH/dx_j^{-i} * dH/dy_j^{k+i},
/// plus (1/4) * sum (dH/dz_j)^2 when k = 2 mod 4. Passes iff the sum is the
/// zero element; the residual is reported otherwise.
Report check_master_equation(const Cdga& A, const PairingScheme& s, const Poly& H);

/// Residual of the master equation (zero iff it holds).
Poly master_equation_residual(const Cdga& A, const PairingScheme& s, const Poly& H);

/// Hamiltonian-induced internal differential:
///   d|A0 = 0,  dx_j^{-i} = rho_i dH/dy_j^{k+i},  dy_j^{k+i} = dH/dx_j^{-i},
///   dz_j = (1/2) dH/dz_j,
/// with rho_i = 1 for k odd and (-1)^(i+1) for k even (the sign that makes
/// dH = 2 * master-equation-sum in every parity case, hence d^2 = 0 for
/// master-equation Hamiltonians).
Derivation differential_from_hamiltonian(const Cdga& A, const PairingScheme& s, const Poly& H);

/// Virtual dimension: sum over i of (-1)^i m_i, adjoined inverse symbols
/// excluded from m_0.
long long vdim(const Cdga& A);

/// Inverts a degree-0 element: marks the generator invertible when g is a
/// single generator, otherwise adjoins a fresh invertible symbol u encoding
/// g^{-1} (relation-free), with du = -u^2 dg (identically zero here since
/// d vanishes on degree 0).
Cdga localize(const Cdga& A, const Poly& g, const std::string& inverse_name = "");

/// Minimality at p: for every negative-degree generator v, the pure-base
/// component of dv and the base coefficient of every single-negative-linear
/// monomial of dv vanish at p.
Report check_minimal_at(const Cdga& A, const Point& p);

} // namespace sctk

#endif
