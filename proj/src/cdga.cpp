#include "sctk/cdga.hpp"

#include <algorithm>

namespace sctk {

std::vector<int> Cdga::gen_counts() const {
    std::vector<int> m;
    for (int id = 0; id < alg->size(); ++id) {
        const GradedVar& v = alg->var(id);
        if (!v.counts_for_vdim) continue;
        int i = -v.degree;
        if (static_cast<size_t>(i) >= m.size()) m.resize(static_cast<size_t>(i) + 1, 0);
        ++m[static_cast<size_t>(i)];
    }
    return m;
}

int Cdga::max_depth() const {
    int n = 0;
    for (int id = 0; id < alg->size(); ++id) n = std::max(n, -alg->degree(id));
    return n;
}

Cdga build_tower(const CdgaSpec& spec) {
    std::vector<GradedVar> vars;
    for (const auto& v : spec.base_vars) {
        if (v.degree != 0)
            throw Error("degree-violation", "base generator '" + v.name + "' not in degree 0");
        vars.push_back(v);
    }
    for (const auto& v : spec.neg_vars) {
        if (v.degree >= 0)
            throw Error("degree-violation",
                        "adjoined generator '" + v.name + "' must have negative degree");
        vars.push_back(v);
    }
    AlgebraPtr alg = Algebra::make(vars);

    Derivation d = Derivation::zero(alg, +1);
    for (const auto& [name, img] : spec.differential_exprs) {
        int id = alg->id_of(name);
        Poly image = img.algebra() == alg ? img : img.transport(alg);
        if (!image.is_zero() && alg->degree(id) == 0)
            throw Error("degree-violation",
                        "differential must vanish on degree-0 generator '" + name + "'");
        d.set_image(id, std::move(image));
    }
    d.validate();
    return Cdga{alg, std::move(d)};
}

Report check_d_squared(const Cdga& A) {
    Report r;
    // Leibniz makes generators sufficient; recorded as a lemma in the tests.
    bool all_ok = true;
    std::string witness;
    for (int id = 0; id < A.alg->size(); ++id) {
        Poly ddv = A.diff(A.d.image(id));
        if (!ddv.is_zero()) {
            all_ok = false;
            if (!witness.empty()) witness += "; ";
            witness += "d^2(" + A.alg->name(id) + ") = " + ddv.str();
        }
    }
    r.add("d-squared", all_ok, all_ok ? "" : witness);
    return r;
}

void PairingScheme::validate(const Algebra& alg) const {
    for (const auto& p : pairs) {
        if (p.x < 0 || p.x >= alg.size() || p.y < 0 || p.y >= alg.size())
            throw Error("scheme-mismatch", "pairing scheme names a non-generator");
        if (alg.degree(p.x) != -p.i)
            throw Error("scheme-mismatch",
                        "scheme pair x '" + alg.name(p.x) + "' not in degree " + std::to_string(-p.i));
        if (alg.degree(p.y) != k + p.i)
            throw Error("scheme-mismatch",
                        "scheme pair y '" + alg.name(p.y) + "' not in degree " +
                            std::to_string(k + p.i));
    }
    if (!z_vars.empty()) {
        if (!(k < 0 && ((-k) % 4) == 2))
            throw Error("scheme-mismatch", "z-block only exists for k = 2 mod 4");
        int zdeg = k / 2; // -2l-1 for k = -4l-2
        for (int z : z_vars)
            if (z < 0 || z >= alg.size() || alg.degree(z) != zdeg)
                throw Error("scheme-mismatch", "scheme z generator not in degree " +
                                                   std::to_string(zdeg));
    }
}

static void require_hamiltonian_degree(const PairingScheme& s, const Poly& H) {
    if (H.is_zero()) return;
    auto d = H.degree();
    if (!d || *d != s.k + 1)
        throw Error("degree-violation",
                    "Hamiltonian must be homogeneous of degree " + std::to_string(s.k + 1));
}

Poly master_equation_residual(const Cdga& A, const PairingScheme& s, const Poly& H) {
    s.validate(*A.alg);
    require_hamiltonian_degree(s, H);
    Poly sum = Poly::zero(A.alg);
    for (const auto& p : s.pairs) {
        if (p.i < 1) continue; // i = 0 pairs a base variable; d|A0 = 0
        sum = sum + mul(partial(H, p.x), partial(H, p.y));
    }
    for (int z : s.z_vars) {
        Poly dz = partial(H, z);
        sum = sum + mul(dz, dz) * Rat(1, 4);
    }
    return sum;
}

Report check_master_equation(const Cdga& A, const PairingScheme& s, const Poly& H) {
    Report r;
    Poly res = master_equation_residual(A, s, H);
    r.add("master-equation", res.is_zero(), res.is_zero() ? "" : "residual " + res.str());
    return r;
}

Derivation differential_from_hamiltonian(const Cdga& A, const PairingScheme& s, const Poly& H) {
    s.validate(*A.alg);
    require_hamiltonian_degree(s, H);
    const bool k_even = (s.k % 2) == 0;
    Derivation d = Derivation::zero(A.alg, +1);
    for (const auto& p : s.pairs) {
        Poly dy = partial(H, p.x);
        if (!dy.is_zero()) d.set_image(p.y, dy);
        if (p.i >= 1) {
            int rho = (k_even && p.i % 2 == 0) ? -1 : 1;
            Poly dx = partial(H, p.y) * Rat(rho);
            if (!dx.is_zero()) d.set_image(p.x, dx);
        }
    }
    for (int z : s.z_vars) {
        Poly dz = partial(H, z) * Rat(1, 2);
        if (!dz.is_zero()) d.set_image(z, dz);
    }
    d.validate();
    return d;
}

long long vdim(const Cdga& A) {
    long long v = 0;
    std::vector<int> m = A.gen_counts();
    for (size_t i = 0; i < m.size(); ++i) v += (i % 2 == 0 ? 1 : -1) * m[i];
    return v;
}

Cdga localize(const Cdga& A, const Poly& g, const std::string& inverse_name) {
    auto gd = g.degree();
    if (g.is_zero() || (gd && *gd != 0))
        throw Error("degree-violation", "can only invert a nonzero element of degree 0");
    if (!gd && !g.is_zero())
        throw Error("degree-violation", "can only invert a homogeneous degree-0 element");

    // A single generator inverts in place: exponents range over Z afterwards.
    if (g.terms().size() == 1) {
        const auto& [m, c] = *g.terms().begin();
        if (m.factors.size() == 1 && m.factors[0].second == 1 && c == 1) {
            int id = m.factors[0].first;
            std::vector<GradedVar> vars;
            for (int i = 0; i < A.alg->size(); ++i) vars.push_back(A.alg->var(i));
            vars[static_cast<size_t>(id)].invertible = true;
            AlgebraPtr alg2 = Algebra::make(vars);
            Derivation d2 = Derivation::zero(alg2, +1);
            for (const auto& [vid, img] : A.d.images) d2.set_image(vid, img.transport(alg2));
            return Cdga{alg2, std::move(d2)};
        }
    }

    std::string uname = inverse_name.empty() ? "u" : inverse_name;
    while (A.alg->has(uname)) uname += "_";
    AlgebraPtr alg2 = A.alg->extended({GradedVar{uname, 0, true, /*counts_for_vdim=*/false}});
    Derivation d2 = Derivation::zero(alg2, +1);
    for (const auto& [vid, img] : A.d.images) d2.set_image(vid, img.transport(alg2));
    // du = -u^2 dg, forced by d(ug) = 0; dg = 0 in degree 0, so du = 0.
    Poly u = Poly::generator(alg2, uname);
    Poly dg = apply_derivation(d2, g.transport(alg2));
    Poly du = -mul(mul(u, u), dg);
    if (!du.is_zero()) d2.set_image(alg2->id_of(uname), du);
    return Cdga{alg2, std::move(d2)};
}

Report check_minimal_at(const Cdga& A, const Point& p) {
    p.validate(*A.alg);
    Report r;
    bool ok = true;
    std::string witness;
    for (int id = 0; id < A.alg->size(); ++id) {
        if (A.alg->degree(id) >= 0) continue;
        Poly dv = A.d.image(id);
        for (const auto& [m, c] : dv.terms()) {
            // Keep the pure-base component and the base-coefficient of each
            // single-negative-linear monomial; deeper monomials restrict to 0.
            int neg_count = 0;
            std::vector<std::pair<int, int>> base;
            int neg_var = -1;
            for (const auto& [vid, e] : m.factors) {
                if (A.alg->degree(vid) < 0) { neg_count += e; neg_var = vid; }
                else base.push_back({vid, e});
            }
            if (neg_count > 1) continue;
            Poly coeff(A.alg);
            coeff.add_term(base, c);
            Rat value = evaluate(coeff, p);
            if (value != 0) {
                ok = false;
                if (!witness.empty()) witness += "; ";
                witness += "d(" + A.alg->name(id) + ") has ";
                witness += (neg_count == 0)
                               ? "constant part " + rat_to_string(value)
                               : "entry " + rat_to_string(value) + " at " + A.alg->name(neg_var);
            }
        }
    }
    r.add("minimal-at-point", ok, ok ? "" : witness);
    return r;
}

} // namespace sctk
