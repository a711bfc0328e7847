#include "sctk/darboux.hpp"

#include <sstream>

namespace sctk {

DarbouxScheme::Case DarbouxScheme::case_for(int k) {
    if (k >= 0) throw Error("degree-violation", "Darboux schemes need k < 0");
    if ((-k) % 2 == 1) return Case::odd;
    return ((-k) % 4 == 0) ? Case::mod4_0 : Case::mod4_2;
}

int DarbouxScheme::pair_index_max() const {
    switch (parity_case) {
    case Case::odd: return (-k - 1) / 2;    // l
    case Case::mod4_0: return -k / 2;       // 2l
    case Case::mod4_2: return -k / 2 - 1;   // 2l
    }
    return 0;
}

int DarbouxScheme::z_count() const {
    if (parity_case != Case::mod4_2) return 0;
    return m.at(static_cast<size_t>(pair_index_max()) + 1);
}

void DarbouxScheme::validate() const {
    if (k >= 0) throw Error("degree-violation", "Darboux schemes need k < 0");
    if (case_for(k) != parity_case)
        throw Error("scheme-mismatch", "parity case inconsistent with k = " + std::to_string(k));
    size_t expected = static_cast<size_t>(pair_index_max()) + 1;
    if (parity_case == Case::mod4_2) ++expected; // trailing z-count
    if (m.size() != expected)
        throw Error("scheme-mismatch", "expected " + std::to_string(expected) +
                                           " generator counts, got " + std::to_string(m.size()));
    for (int c : m)
        if (c < 0) throw Error("scheme-mismatch", "negative generator count");
    if (spectators < 0) throw Error("scheme-mismatch", "negative spectator count");
}

Cdga build_scheme_algebra(const DarbouxScheme& s, PairingScheme& pairing_out,
                          std::vector<std::string>* spectator_names, bool with_contact_z) {
    s.validate();
    std::vector<GradedVar> base, neg;
    struct NamedPair { int i; std::string x, y; };
    std::vector<NamedPair> pairs;
    const int imax = s.pair_index_max();
    for (int i = 0; i <= imax; ++i) {
        for (int j = 1; j <= s.m[static_cast<size_t>(i)]; ++j) {
            std::string xn = "x" + std::to_string(i) + "_" + std::to_string(j);
            std::string yn = "y" + std::to_string(i) + "_" + std::to_string(j);
            if (i == 0) base.push_back({xn, 0, false, true});
            else neg.push_back({xn, -i, false, true});
            neg.push_back({yn, s.k + i, false, true});
            pairs.push_back({i, xn, yn});
        }
    }
    std::vector<std::string> zs;
    for (int j = 1; j <= s.z_count(); ++j) {
        std::string zn = "z" + std::to_string(j);
        neg.push_back({zn, s.k / 2, false, true});
        zs.push_back(zn);
    }
    for (int j = 1; j <= s.spectators; ++j) {
        std::string tn = "xt" + (s.spectators == 1 ? std::string() : "_" + std::to_string(j));
        base.push_back({tn, 0, false, true});
        if (spectator_names) spectator_names->push_back(tn);
    }
    if (with_contact_z) neg.push_back({"z", s.k, false, true});

    CdgaSpec spec{std::move(base), std::move(neg), {}};
    Cdga A = build_tower(spec);
    pairing_out = PairingScheme{};
    pairing_out.k = s.k;
    for (const auto& p : pairs)
        pairing_out.pairs.push_back({p.i, A.alg->id_of(p.x), A.alg->id_of(p.y)});
    for (const auto& zn : zs) pairing_out.z_vars.push_back(A.alg->id_of(zn));
    pairing_out.validate(*A.alg);
    return A;
}

Form scheme_omega0(const Cdga& A, const PairingScheme& s) {
    Form w(A.alg, 2, s.k);
    Poly one = Poly::constant(A.alg, 1);
    for (const auto& p : s.pairs) w.add_term(one, {p.x, p.y});
    for (int z : s.z_vars) w.add_term(one, {z, z});
    return w;
}

SymplecticModel build_symplectic_darboux(const DarbouxScheme& s, const Poly& H) {
    if (s.contact)
        throw Error("scheme-mismatch", "symplectic constructor on a contact scheme");
    SymplecticModel model;
    model.A = build_scheme_algebra(s, model.pairing);
    Poly h = H.is_zero() ? Poly::zero(model.A.alg) : H.transport(model.A.alg);
    model.hamiltonian = h;

    Report r = check_master_equation(model.A, model.pairing, h);
    model.A.d = differential_from_hamiltonian(model.A, model.pairing, h);
    model.omega0 = scheme_omega0(model.A, model.pairing);

    r.append(check_d_squared(model.A));
    Form dw = d_int(model.A, model.omega0);
    r.add("d-omega0", dw.is_zero(), dw.is_zero() ? "" : "residual " + dw.str());
    Form ddrw = ddr(model.omega0);
    r.add("ddr-omega0", ddrw.is_zero(), ddrw.is_zero() ? "" : "residual " + ddrw.str());
    model.build_report = std::move(r);
    return model;
}

PhiData build_phi(const Cdga& A, const PairingScheme& s, const Poly& H) {
    const Algebra& alg = *A.alg;
    const int k = s.k;
    PhiData out;
    Form phi(A.alg, 1, k);
    Poly theta = Poly::zero(A.alg);
    for (const auto& p : s.pairs) {
        // sigma is the reorder sign of D(y)D(x) against D(x)D(y); with it
        // d_dR(sigma y dx) = omega0's pair term. +1 whenever k is odd.
        int tx = alg.degree(p.x) + 1, ty = alg.degree(p.y) + 1;
        int sigma = parity_sign(tx, ty);
        Poly y = Poly::generator(A.alg, p.y);
        phi.add_term(y * Rat(k * sigma), {p.x});
        if (p.i > 0) {
            // per-pair normalizing shift c x y with
            // c = -sigma i (-1)^(k(1-i)): subtracting its d_dR turns the
            // two-term primitive -i x dy + sigma (k+i) y dx into k sigma y dx
            int c = -sigma * p.i * parity_sign(k, 1 - p.i);
            Poly xy = mul(Poly::generator(A.alg, p.x), y);
            theta = theta + xy * Rat(c);
        }
    }
    for (int z : s.z_vars) {
        Poly zp = Poly::generator(A.alg, z);
        phi.add_term(zp * Rat(k), {z});
    }
    out.phi = phi;
    out.theta = theta;
    out.h_norm = H.is_zero() ? Poly::zero(A.alg) : H.transport(A.alg);
    out.h_norm = out.h_norm + A.diff(theta);

    Report r;
    Form lhs = ddr(phi) - scheme_omega0(A, s) * Rat(k);
    r.add("ddr-phi-is-k-omega0", lhs.is_zero(), lhs.is_zero() ? "" : "residual " + lhs.str());
    Form rel = ddr(Form::from_poly(out.h_norm)) + d_int(A, phi);
    r.add("ddr-H-plus-d-phi", rel.is_zero(), rel.is_zero() ? "" : "residual " + rel.str());
    out.build_report = std::move(r);
    return out;
}

PhiData build_phi(const SymplecticModel& model) {
    return build_phi(model.A, model.pairing, model.hamiltonian);
}

static ContactModel finish_contact(Cdga A, PairingScheme pairing, const DarbouxScheme& s,
                                   const Poly& H, const Poly& z_elem, Report r) {
    ContactModel model;
    model.A = std::move(A);
    model.pairing = std::move(pairing);
    model.hamiltonian = H;
    model.z_element = z_elem;

    PhiData phi = build_phi(model.A, model.pairing, H);
    model.h_norm = phi.h_norm;
    r.append(phi.build_report);

    Form dz = ddr(Form::from_poly(z_elem));
    model.alpha0 = -dz + phi.phi * Rat(1, s.k);
    model.omega0 = ddr(model.alpha0);

    r.append(check_d_squared(model.A));
    Form resid = d_int(model.A, model.alpha0);
    r.add("alpha0-d-closed", resid.is_zero(), resid.is_zero() ? "" : "residual " + resid.str());
    Form wres = model.omega0 - scheme_omega0(model.A, model.pairing);
    r.add("ddr-alpha0-is-omega0", wres.is_zero(), wres.is_zero() ? "" : "residual " + wres.str());
    model.build_report = std::move(r);
    return model;
}

ContactModel build_contact_darboux(const DarbouxScheme& s, const Poly& H) {
    if (!s.contact)
        throw Error("scheme-mismatch", "contact constructor on a non-contact scheme");
    if (s.z_mode != DarbouxScheme::ZMode::generator)
        throw Error("scheme-mismatch", "element mode needs an explicit algebra and z element");
    PairingScheme pairing;
    Cdga A = build_scheme_algebra(s, pairing, nullptr, /*with_contact_z=*/true);
    Poly h = H.is_zero() ? Poly::zero(A.alg) : H.transport(A.alg);

    Report r = check_master_equation(A, pairing, h);
    A.d = differential_from_hamiltonian(A, pairing, h);
    // z is adjoined with dz = h_norm / k, the normalized Hamiltonian that
    // pairs with the simplified phi; d(h_norm) = d(H), so d^2 z = 0 is the
    // master equation again.
    PhiData phi_pre = build_phi(A, pairing, h);
    Poly dz = phi_pre.h_norm * Rat(1, s.k);
    if (!dz.is_zero()) A.d.set_image(A.alg->id_of("z"), dz);
    Poly z_gen = Poly::generator(A.alg, "z");
    return finish_contact(std::move(A), std::move(pairing), s, h, z_gen, std::move(r));
}

ContactModel build_contact_darboux_element(const Cdga& A, const DarbouxScheme& s,
                                           const PairingScheme& pairing, const Poly& z,
                                           const Poly* explicit_H) {
    if (!s.contact)
        throw Error("scheme-mismatch", "contact constructor on a non-contact scheme");
    auto zd = z.degree();
    if (z.is_zero() || !zd || *zd != s.k)
        throw Error("degree-violation", "z element must be homogeneous of degree " +
                                            std::to_string(s.k));
    Poly H = A.diff(z) * Rat(s.k); // H := k dz
    if (explicit_H && *explicit_H != H)
        throw Error("scheme-mismatch", "element mode requires dz = H/k; supplied H differs from " +
                                           H.str());
    Report r = check_master_equation(A, pairing, H);
    return finish_contact(A, pairing, s, H, z, std::move(r));
}

Report vdim_report(const Cdga& A, VdimRole role) {
    Report r;
    long long v = vdim(A);
    bool even = (v % 2) == 0;
    bool claim_even = (role == VdimRole::symplectic);
    bool agrees = (even == claim_even);
    std::ostringstream os;
    os << "computed " << v << " (" << (even ? "even" : "odd") << "), stated parity "
       << (claim_even ? "even" : "odd");
    r.add("vdim-parity", agrees, os.str());
    return r;
}

} // namespace sctk
