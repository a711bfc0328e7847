#ifndef SCTK_DARBOUX_HPP
#define SCTK_DARBOUX_HPP

#include "sctk/derham.hpp"

namespace sctk {

/// Parameters of the explicit local models. The variable lists per parity
/// case:
///   k odd (k = -2l-1):     pairs (x_j^{-i}, y_j^{k+i}) for i = 0..l;
///   k = -4l   (mod4-0):    pairs for i = 0..2l (the i = 2l pair is the
///                          antisymmetric middle-degree block);
///   k = -4l-2 (mod4-2):    pairs for i = 0..2l plus m_{2l+1} generators
///                          z_j^{-2l-1} with the symmetric D(z)D(z) block.
/// Generator names: x0_j (base), x{i}_j, y{i}_j, z{j}; the contact z is "z"
/// and spectators are xt_j.
struct DarbouxScheme {
    enum class Case { odd, mod4_0, mod4_2 };
    enum class ZMode { generator, element };

    int k = -1;
    Case parity_case = Case::odd;
    std::vector<int> m; // m_0..m_I (plus the z-count as the last entry for mod4-2)
    bool contact = false;
    ZMode z_mode = ZMode::generator;
    int spectators = 0;

    static Case case_for(int k);
    int pair_index_max() const; // I: pairs run i = 0..I
    int z_count() const;        // mod4-2 only
    void validate() const;
};

struct SymplecticModel {
    Cdga A;
    PairingScheme pairing;
    Form omega0;
    Poly hamiltonian;
    Report build_report; // master-equation, d-squared, d-omega0, ddr-omega0
};

struct PhiData {
    Form phi;    // simplified normal form: k sum sigma_i y dx + k sum z dz
    Poly theta;  // the normalizing shift
    Poly h_norm; // H + d(theta): the Hamiltonian paired with phi
    Report build_report; // ddr-phi-is-k-omega0, ddr-H-plus-d-phi
};

struct ContactModel {
    Cdga A;
    PairingScheme pairing;
    Form alpha0;
    Form omega0; // d_dR(alpha0)
    Poly hamiltonian;
    Poly h_norm;
    Poly z_element; // the element whose d_dR enters alpha0 (generator z or user z)
    Report build_report;
};

/// Builds the symplectic local model: generators per the case's list, d
/// induced by H, omega^0 per the case. The master equation and the
/// postconditions d^2 = 0, d omega0 = 0, d_dR omega0 = 0 are run into the
/// report (a failing Hamiltonian yields a failing report, not an error).
SymplecticModel build_symplectic_darboux(const DarbouxScheme& s, const Poly& H);
/// Variant over a prebuilt variable set (used by the contact constructor).
Cdga build_scheme_algebra(const DarbouxScheme& s, PairingScheme& pairing_out,
                          std::vector<std::string>* spectator_names = nullptr,
                          bool with_contact_z = false);

/// The degree-k weight-1 primitive with d_dR phi = k omega0 and
/// d_dR h_norm + d phi = 0 (verified; see PhiData).
PhiData build_phi(const SymplecticModel& model);
PhiData build_phi(const Cdga& A, const PairingScheme& s, const Poly& H);

/// Contact local model alpha0 = -d_dR z + (1/k) phi. Generator mode adjoins
/// z with dz = h_norm / k; element mode takes an existing degree-k element
/// and checks H := k dz. Postconditions: d-closedness of alpha0 and
/// d_dR alpha0 = omega0.
ContactModel build_contact_darboux(const DarbouxScheme& s, const Poly& H);
ContactModel build_contact_darboux_element(const Cdga& A, const DarbouxScheme& s,
                                           const PairingScheme& pairing, const Poly& z,
                                           const Poly* explicit_H = nullptr);

enum class VdimRole { symplectic, contact };

/// Computes vdim, states the parity claim for the role (even for symplectic
/// models, odd for contact models) and marks agreement; the magnitude is
/// reported, not judged.
Report vdim_report(const Cdga& A, VdimRole role);

/// omega^0 of the scheme over the given algebra.
Form scheme_omega0(const Cdga& A, const PairingScheme& s);

} // namespace sctk

#endif
