#ifndef SCTK_CONTACT_HPP
#define SCTK_CONTACT_HPP

#include "sctk/complexes.hpp"

namespace sctk {

/// ker(alpha) inside the restricted tangent complex, with basis matrices in
/// tangent coordinates (per degree, columns are kernel vectors).
struct KernelData {
    FreeComplex tangent;
    FreeComplex complex;          // the kernel subcomplex
    std::vector<QMatrix> bases;   // indexed by tangent degree - tangent.lo
    std::vector<std::vector<int>> tangent_vars; // var ids per tangent degree
};

struct ContactReport {
    KernelData kernel;
    std::vector<std::pair<int, int>> cokernel_ranks; // degree -> rank of T/ker
    std::string cokernel_witness;                     // basis direction of the line
    Report pairing;                                   // quasi-iso of K -> K^v[k]
    std::string degenerate_direction;                 // set on pairing failure
    std::string reeb_description;
    bool reeb_unique = false;
    bool verdict = false;

    Report report() const; // CHECK-line view
};

/// Kernel of the evaluated row map v -> alpha-coefficient of D(v) at p,
/// with induced differentials. Rejects non-d-closed alpha.
KernelData kernel_of_form(const Form& alpha, const Cdga& A, const Point& p);

/// Full local contact verification: kernel, cokernel-line in degree -k,
/// non-degeneracy of d_dR alpha on the kernel, Reeb solution set.
ContactReport check_contact(const Form& alpha, const Cdga& A, const Point& p);

/// Solution set of iota_R alpha = 1, iota_R d_dR alpha = 0 over the
/// degree-(-k) tangent component at p.
Report reeb_solutions(const Form& alpha, const Cdga& A, const Point& p);

/// ker(alpha) = ker(g alpha) and matching verdicts, for a unit g at p.
Report check_scale_invariance(const Form& alpha, const Poly& g, const Cdga& A, const Point& p);

/// Evaluated pairing iota_{d/dw} iota_{d/dv} omega at p (v inserted first).
Rat pairing_value(const Form& omega, const Cdga& A, const Point& p, int v, int w);

} // namespace sctk

#endif
