#include "sctk/symplectify.hpp"

#include <sstream>

namespace sctk {

namespace {
constexpr const char* kFiber = "f";

std::string d_dv(const std::string& name) { return "∂/∂" + name; }
} // namespace

SymplectifiedModel symplectify(const Cdga& A, const Form& alpha, const Point& p) {
    SymplectifiedModel M;
    M.base = A;
    Report r;

    ContactReport pre = check_contact(alpha, A, p);
    r.add("contact-precondition", pre.verdict,
          pre.verdict ? "" : "contact check fails at the working point");

    if (A.alg->has(kFiber))
        throw Error("duplicate-name", "algebra already has a generator named 'f'");
    AlgebraPtr ext_alg = A.alg->extended({GradedVar{kFiber, 0, true, true}});
    Derivation d2 = Derivation::zero(ext_alg, +1);
    for (const auto& [vid, img] : A.d.images) d2.set_image(vid, img.transport(ext_alg));
    M.extended = Cdga{ext_alg, std::move(d2)}; // df = 0

    M.alpha = alpha.transport(ext_alg);
    Poly f = Poly::generator(ext_alg, kFiber);
    M.lambda = M.alpha.scaled_by(f);
    M.omega0 = ddr(M.lambda);

    Form dl = d_int(M.extended, M.lambda);
    r.add("lambda-d-closed", dl.is_zero(), dl.is_zero() ? "" : "residual " + dl.str());
    Report closed = is_closed_sequence(M.extended, {M.omega0});
    r.append(closed);

    long long v0 = vdim(A), v1 = vdim(M.extended);
    std::ostringstream os;
    os << "vdim " << v0 << " -> " << v1 << (v1 % 2 == 0 ? " (even)" : " (odd)");
    r.add("vdim-increment", v1 == v0 + 1 && v1 % 2 == 0, os.str());

    M.build_report = std::move(r);
    return M;
}

Report check_symplectic_form(const Cdga& ext, const Form& omega0, const Point& p_with_f) {
    if (ext.alg->has(kFiber)) {
        const Rat& fv = p_with_f.value(kFiber);
        if (fv == 0) throw Error("point-not-unit", "f must be assigned a nonzero value");
    }
    FreeComplex t = restrict_tangent(ext, p_with_f);
    FreeComplex cot = restrict_cotangent(ext, p_with_f);
    const int k = omega0.degree();

    // variable table matching the tangent/cotangent basis order
    std::vector<std::vector<int>> tvars(t.basis.size());
    for (int n = t.lo; n <= t.hi(); ++n)
        for (int id : ext.alg->sorted_ids()) {
            if (!ext.alg->var(id).counts_for_vdim) continue;
            if (-ext.alg->degree(id) == n) tvars[static_cast<size_t>(n - t.lo)].push_back(id);
        }
    std::vector<std::vector<int>> cvars(cot.basis.size());
    for (int n = cot.lo; n <= cot.hi(); ++n)
        for (int id : ext.alg->sorted_ids()) {
            if (!ext.alg->var(id).counts_for_vdim) continue;
            if (ext.alg->degree(id) == n) cvars[static_cast<size_t>(n - cot.lo)].push_back(id);
        }

    // the pairing map T -> L[k]: column d/dv, row D(w), entry the evaluated
    // coefficient of D(w) in iota_{d/dv} omega0
    ComplexMap chi;
    chi.source = t;
    chi.target = cot.shifted(k);
    chi.shift = 0;
    for (int n = t.lo; n <= t.hi(); ++n) {
        const auto& cols = tvars[static_cast<size_t>(n - t.lo)];
        int target_deg = n + k; // in cot grading
        QMatrix m(chi.target.dim(n), static_cast<int>(cols.size()));
        if (cot.in_range(target_deg)) {
            const auto& rows = cvars[static_cast<size_t>(target_deg - cot.lo)];
            for (size_t c = 0; c < cols.size(); ++c) {
                Form ic = contract(VectorField::basis(ext.alg, cols[c]), omega0);
                for (size_t rr = 0; rr < rows.size(); ++rr) {
                    Poly coeff = ic.coefficient(Wedge{{{rows[rr], 1}}});
                    if (!coeff.is_zero())
                        m.at(static_cast<int>(rr), static_cast<int>(c)) = evaluate(coeff, p_with_f);
                }
            }
        }
        chi.blocks.push_back(std::move(m));
    }
    return is_quasi_iso(chi);
}

Report check_symplectic(const SymplectifiedModel& M, const Point& p_with_f) {
    Report r = check_symplectic_form(M.extended, M.omega0, p_with_f);
    const CheckResult* q = r.find("quasi-iso");
    bool qi = q && q->passed;
    Report out;
    out.add("symplectic-quasi-iso", qi, q ? q->detail : "");

    // Case table: split the extended tangent basis into ker(alpha), Rest and
    // the fiber direction; certify each direction by an explicit partner.
    const Cdga& ext = M.extended;
    const int k = M.omega0.degree();
    std::ostringstream table;
    bool table_ok = true;
    std::vector<int> all_vars;
    for (int id : ext.alg->sorted_ids())
        if (ext.alg->var(id).counts_for_vdim) all_vars.push_back(id);
    const int fid = ext.alg->id_of(kFiber);

    auto alpha_val = [&](int v) {
        Form c = contract(VectorField::basis(ext.alg, v), M.alpha);
        Poly cv = c.coefficient(Wedge{});
        return cv.is_zero() ? Rat(0) : evaluate(cv, p_with_f);
    };

    for (int sigma : all_vars) {
        std::string scase;
        if (sigma == fid) scase = "3";
        else if (alpha_val(sigma) == 0) scase = "1";
        else scase = "2";
        // find eta with nonzero evaluated pairing
        int eta = -1;
        Rat val;
        for (int cand : all_vars) {
            Rat pv = pairing_value(M.omega0, ext, p_with_f, sigma, cand);
            if (pv != 0) { eta = cand; val = pv; break; }
        }
        if (table.tellp() > 0) table << "; ";
        if (eta < 0) {
            table_ok = false;
            table << d_dv(ext.alg->name(sigma)) << " case " << scase << " UNPAIRED";
        } else {
            table << d_dv(ext.alg->name(sigma)) << " case " << scase << " via "
                  << d_dv(ext.alg->name(eta)) << " = " << rat_to_string(val);
        }
    }
    out.add("case-table", table_ok, table.str());
    (void)k;
    return out;
}

Report form_fiber_weight(const Form& w, const std::string& fiber_name, int expected) {
    Report r;
    const Algebra& alg = *w.algebra();
    if (!alg.has(fiber_name)) {
        r.fail("fiber-weight", "no fiber variable " + fiber_name);
        return r;
    }
    int fid = alg.id_of(fiber_name);
    bool uniform = true;
    int seen = expected;
    bool first = true;
    for (const auto& [wd, coeff] : w.terms()) {
        int base = 0;
        for (const auto& [v, mlt] : wd.factors)
            if (v == fid) base += mlt;
        for (const auto& [mono, c] : coeff.terms()) {
            (void)c;
            int weight = base;
            for (const auto& [v, e] : mono.factors)
                if (v == fid) weight += e;
            if (first) { seen = weight; first = false; }
            else if (weight != seen) uniform = false;
        }
    }
    bool ok = uniform && (first || seen == expected);
    std::ostringstream os;
    if (!uniform) os << "mixed fiber weights";
    else if (!first && seen != expected) os << "weight " << seen << ", expected " << expected;
    else os << "weight " << expected;
    r.add("fiber-weight", ok, os.str());
    return r;
}

Report weight_grading(const SymplectifiedModel& M) {
    Report r;
    Report l = form_fiber_weight(M.lambda, kFiber, 1);
    r.add("lambda-weight-1", l.ok(), l.checks.front().detail);
    Report w = form_fiber_weight(M.omega0, kFiber, 1);
    r.add("omega0-weight-1", w.ok(), w.checks.front().detail);
    return r;
}

Report pairing_certificate(const SymplectifiedModel& M) {
    Report r;
    const Cdga& ext = M.extended;
    Poly f = Poly::generator(ext.alg, kFiber);
    Form df_part(ext.alg, 2, M.omega0.degree());
    {
        // D(f) ^ alpha assembled term by term
        Form df(ext.alg, 1, 0);
        df.add_term(Poly::constant(ext.alg, 1), {ext.alg->id_of(kFiber)});
        df_part = wedge(df, M.alpha);
    }
    Form f_ddr = ddr(M.alpha).scaled_by(f);
    Form split_residual = M.omega0 - (df_part + f_ddr);
    r.add("leibniz-split", split_residual.is_zero(),
          split_residual.is_zero() ? "" : "residual " + split_residual.str());

    bool all = true;
    std::string witness;
    for (int s = 0; s < ext.alg->size(); ++s) {
        if (!ext.alg->var(s).counts_for_vdim) continue;
        VectorField vs = VectorField::basis(ext.alg, s);
        Form is_direct = contract(vs, M.omega0);
        Form is_split = contract(vs, df_part) + contract(vs, f_ddr);
        for (int e = 0; e < ext.alg->size(); ++e) {
            if (!ext.alg->var(e).counts_for_vdim) continue;
            VectorField ve = VectorField::basis(ext.alg, e);
            Form lhs = contract(ve, is_direct);
            Form rhs = contract(ve, is_split);
            if (!(lhs == rhs)) {
                all = false;
                if (witness.empty())
                    witness = "mismatch at (" + ext.alg->name(s) + ", " + ext.alg->name(e) + ")";
            }
        }
    }
    r.add("pairing-certificate", all, all ? "" : witness);
    return r;
}

} // namespace sctk
