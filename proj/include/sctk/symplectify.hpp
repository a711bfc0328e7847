#ifndef SCTK_SYMPLECTIFY_HPP
#define SCTK_SYMPLECTIFY_HPP

#include "sctk/contact.hpp"

namespace sctk {

/// Contact model extended by the invertible weight-1 fiber variable f with
/// df = 0, carrying lambda = f * alpha and omega = (d_dR lambda, 0, ...).
struct SymplectifiedModel {
    Cdga base;     // the contact model's algebra
    Cdga extended; // base tensor Q[f, f^{-1}]
    Form alpha;    // over the extended algebra
    Form lambda;   // f * alpha
    Form omega0;   // d_dR lambda
    Report build_report; // contact precondition, d-lambda, closed sequence
};

/// Builds the symplectification; the contact precondition is checked at the
/// given point and recorded (a failing contact model fails the report).
SymplectifiedModel symplectify(const Cdga& A, const Form& alpha, const Point& p);

/// Non-degeneracy of omega0 on the extended tangent complex at a point
/// (which must assign f a nonzero value), with the three-case certificate:
/// each basis direction of ker(alpha) (+) Rest (+) <d/df> is certified by a
/// partner direction and the case that pairs them.
Report check_symplectic(const SymplectifiedModel& M, const Point& p_with_f);
/// Same check for an arbitrary 2-form over the extended algebra (negative
/// testing hook).
Report check_symplectic_form(const Cdga& ext, const Form& omega0, const Point& p_with_f);

/// Fiber grading: f has weight 1, every other generator weight 0; passes
/// iff the form is homogeneous of the expected weight.
Report weight_grading(const SymplectifiedModel& M);
Report form_fiber_weight(const Form& w, const std::string& fiber_name, int expected);

/// Exact identity iota_eta iota_sigma omega0 =
///   iota_eta iota_sigma (D(f) ^ alpha) + iota_eta iota_sigma (f d_dR alpha)
/// checked term-for-term on every pair of tangent basis directions.
Report pairing_certificate(const SymplectifiedModel& M);

} // namespace sctk

#endif
