#include "sctk/contact.hpp"

#include <algorithm>
#include <sstream>

namespace sctk {

namespace {

std::string d_dv(const std::string& name) { return "∂/∂" + name; }

/// Variable ids per tangent degree (tangent degree n holds d/dv, |v| = -n),
/// name-sorted, matching restrict_tangent's basis order.
std::vector<std::vector<int>> tangent_var_table(const Cdga& A, const FreeComplex& t) {
    std::vector<std::vector<int>> table(t.basis.size());
    for (int n = t.lo; n <= t.hi(); ++n) {
        for (int id : A.alg->sorted_ids()) {
            if (!A.alg->var(id).counts_for_vdim) continue;
            if (-A.alg->degree(id) == n) table[static_cast<size_t>(n - t.lo)].push_back(id);
        }
    }
    return table;
}

std::string combo_name(const Cdga& A, const std::vector<int>& vars, const QMatrix& col_matrix,
                       int col) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < vars.size(); ++i) {
        const Rat& c = col_matrix.at(static_cast<int>(i), col);
        if (c == 0) continue;
        if (first) {
            if (c == -1) os << "-";
            else if (c != 1) os << rat_to_string(c) << "*";
        } else {
            os << (c < 0 ? " - " : " + ");
            Rat a = c < 0 ? Rat(-c) : c;
            if (a != 1) os << rat_to_string(a) << "*";
        }
        first = false;
        os << d_dv(A.alg->name(vars[i]));
    }
    if (first) os << "0";
    return os.str();
}

} // namespace

Rat pairing_value(const Form& omega, const Cdga& A, const Point& p, int v, int w) {
    Form first = contract(VectorField::basis(A.alg, v), omega);
    Form second = contract(VectorField::basis(A.alg, w), first);
    // weight 0; nonzero only when degrees balance to 0
    Poly val = second.coefficient(Wedge{});
    return val.is_zero() ? Rat(0) : evaluate(val, p);
}

KernelData kernel_of_form(const Form& alpha, const Cdga& A, const Point& p) {
    if (alpha.weight() != 1)
        throw Error("weight-violation", "contact form must have weight 1");
    Form resid = d_int(A, alpha);
    if (!resid.is_zero())
        throw Error("not-d-closed", "form is not d-closed: residual " + resid.str());

    KernelData K;
    K.tangent = restrict_tangent(A, p);
    K.tangent_vars = tangent_var_table(A, K.tangent);
    const int k = alpha.degree();

    // evaluated row map per degree: d/dv -> alpha-coefficient of D(v) at p
    std::vector<QMatrix> rows;
    for (int n = K.tangent.lo; n <= K.tangent.hi(); ++n) {
        const auto& vars = K.tangent_vars[static_cast<size_t>(n - K.tangent.lo)];
        QMatrix row(n == -k ? 1 : 0, static_cast<int>(vars.size()));
        if (n == -k) {
            for (size_t j = 0; j < vars.size(); ++j) {
                Form c = contract(VectorField::basis(A.alg, vars[j]), alpha);
                Poly cv = c.coefficient(Wedge{});
                row.at(0, static_cast<int>(j)) = cv.is_zero() ? Rat(0) : evaluate(cv, p);
            }
        }
        rows.push_back(std::move(row));
    }

    // kernel bases and induced differentials
    std::vector<QMatrix> kb;
    std::vector<std::vector<std::string>> basis;
    for (int n = K.tangent.lo; n <= K.tangent.hi(); ++n) {
        const QMatrix& row = rows[static_cast<size_t>(n - K.tangent.lo)];
        QMatrix kbase = row.rows() == 0
                            ? QMatrix::identity(row.cols())
                            : row.kernel_basis();
        std::vector<std::string> names;
        const auto& vars = K.tangent_vars[static_cast<size_t>(n - K.tangent.lo)];
        for (int j = 0; j < kbase.cols(); ++j) names.push_back(combo_name(A, vars, kbase, j));
        kb.push_back(std::move(kbase));
        basis.push_back(std::move(names));
    }
    std::vector<QMatrix> diff;
    for (int n = K.tangent.lo; n < K.tangent.hi(); ++n) {
        const QMatrix& kn = kb[static_cast<size_t>(n - K.tangent.lo)];
        const QMatrix& kn1 = kb[static_cast<size_t>(n + 1 - K.tangent.lo)];
        QMatrix rhs = K.tangent.d(n) * kn;
        diff.push_back(kn1.solve(rhs));
    }
    K.bases = kb;
    FreeComplex kc{K.tangent.lo, std::move(basis), std::move(diff)};
    kc.validate();
    K.complex = std::move(kc);
    return K;
}

ContactReport check_contact(const Form& alpha, const Cdga& A, const Point& p) {
    ContactReport out;
    out.kernel = kernel_of_form(alpha, A, p);
    const KernelData& K = out.kernel;
    const int k = alpha.degree();

    // cokernel = T/ker per degree; the contact condition asks for a single
    // line in degree -k (Cone(kappa) of the form O[k])
    bool coker_ok = true;
    for (int n = K.tangent.lo; n <= K.tangent.hi(); ++n) {
        int rank = K.tangent.dim(n) - K.complex.dim(n);
        out.cokernel_ranks.push_back({n, rank});
        if (rank != (n == -k ? 1 : 0)) coker_ok = false;
    }
    if (coker_ok) {
        // name the complementary direction: a tangent variable whose alpha
        // row entry is nonzero
        const auto& vars = K.tangent_vars[static_cast<size_t>(-k - K.tangent.lo)];
        for (int v : vars) {
            Form c = contract(VectorField::basis(A.alg, v), alpha);
            Poly cv = c.coefficient(Wedge{});
            if (!cv.is_zero() && evaluate(cv, p) != 0) {
                out.cokernel_witness = d_dv(A.alg->name(v));
                break;
            }
        }
    }

    // restrict d_dR alpha to the kernel and test K -> K^v[k]
    Form omega = ddr(alpha);
    ComplexMap chi;
    chi.source = K.complex;
    chi.target = K.complex.dualized().shifted(k);
    chi.shift = 0;
    for (int n = K.complex.lo; n <= K.complex.hi(); ++n) {
        int dual_deg = -k - n; // pairing partner degree in K
        const QMatrix& kn = K.bases[static_cast<size_t>(n - K.tangent.lo)];
        QMatrix m(K.complex.dim(dual_deg), K.complex.dim(n));
        if (m.rows() > 0 && m.cols() > 0) {
            const QMatrix& kd = K.bases[static_cast<size_t>(dual_deg - K.tangent.lo)];
            const auto& vars_n = K.tangent_vars[static_cast<size_t>(n - K.tangent.lo)];
            const auto& vars_d = K.tangent_vars[static_cast<size_t>(dual_deg - K.tangent.lo)];
            QMatrix P(static_cast<int>(vars_d.size()), static_cast<int>(vars_n.size()));
            for (size_t r = 0; r < vars_d.size(); ++r)
                for (size_t c = 0; c < vars_n.size(); ++c)
                    P.at(static_cast<int>(r), static_cast<int>(c)) =
                        pairing_value(omega, A, p, vars_n[c], vars_d[r]);
            m = kd.transposed() * (P * kn);
        }
        chi.blocks.push_back(std::move(m));
    }
    if (K.complex.basis.empty()) chi.blocks.clear();
    Report pr = is_quasi_iso(chi);
    out.pairing = pr;

    if (!pr.ok()) {
        // witness a degenerate direction when a per-degree pairing block has
        // a kernel vector (always the case at minimal points)
        for (int n = K.complex.lo; n <= K.complex.hi() && out.degenerate_direction.empty(); ++n) {
            QMatrix kern = chi.block(n).kernel_basis();
            if (kern.cols() == 0) continue;
            // expand to tangent coordinates
            const QMatrix& kn = K.bases[static_cast<size_t>(n - K.tangent.lo)];
            QMatrix vec(kn.rows(), 1);
            for (int i = 0; i < kn.rows(); ++i)
                for (int j = 0; j < kn.cols(); ++j) vec.at(i, 0) += kn.at(i, j) * kern.at(j, 0);
            const auto& vars = K.tangent_vars[static_cast<size_t>(n - K.tangent.lo)];
            out.degenerate_direction = combo_name(A, vars, vec, 0);
        }
    }

    Report reeb = reeb_solutions(alpha, A, p);
    out.reeb_description = reeb.checks.empty() ? "" : reeb.checks.front().detail;
    out.reeb_unique = !reeb.checks.empty() && reeb.checks.front().passed;
    out.verdict = coker_ok && pr.ok();
    return out;
}

Report ContactReport::report() const {
    Report r;
    int total = 0;
    for (int n = kernel.complex.lo; n <= kernel.complex.hi(); ++n) total += kernel.complex.dim(n);
    r.pass("kernel-rank", std::to_string(total));

    int lines = 0, other = 0;
    std::ostringstream cd;
    for (const auto& [deg, rank] : cokernel_ranks) {
        if (rank == 0) continue;
        if (rank == 1) ++lines;
        else ++other;
        if (cd.tellp() > 0) cd << ", ";
        cd << "degree " << deg << " rank " << rank;
    }
    bool line_ok = (lines == 1 && other == 0);
    std::string detail = cd.str();
    if (line_ok && !cokernel_witness.empty()) detail += " basis " + cokernel_witness;
    r.add("cokernel-line", line_ok, detail);

    const CheckResult* q = pairing.find("quasi-iso");
    std::string pd = q && !q->passed ? q->detail : "";
    if (!degenerate_direction.empty()) pd = "degenerate-direction " + degenerate_direction;
    r.add("pairing-quasi-iso", q ? q->passed : false, pd);

    r.add("reeb", reeb_unique, reeb_description);
    return r;
}

Report reeb_solutions(const Form& alpha, const Cdga& A, const Point& p) {
    Report r;
    const int k = alpha.degree();
    Form omega = ddr(alpha);
    FreeComplex t = restrict_tangent(A, p);
    auto table = tangent_var_table(A, t);
    std::vector<int> vars;
    if (t.in_range(-k)) vars = table[static_cast<size_t>(-k - t.lo)];
    if (vars.empty()) {
        r.fail("reeb", "empty solution set (no degree " + std::to_string(-k) +
                           " tangent directions)");
        return r;
    }
    // rows: the alpha equation, then one omega equation per tangent variable
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    {
        std::vector<Rat> row;
        for (int v : vars) {
            Form c = contract(VectorField::basis(A.alg, v), alpha);
            Poly cv = c.coefficient(Wedge{});
            row.push_back(cv.is_zero() ? Rat(0) : evaluate(cv, p));
        }
        rows.push_back(std::move(row));
        rhs.push_back(1);
    }
    for (int w = 0; w < A.alg->size(); ++w) {
        if (!A.alg->var(w).counts_for_vdim) continue;
        std::vector<Rat> row;
        bool nonzero = false;
        for (int v : vars) {
            Rat val = pairing_value(omega, A, p, v, w);
            if (val != 0) nonzero = true;
            row.push_back(val);
        }
        if (nonzero) {
            rows.push_back(std::move(row));
            rhs.push_back(0);
        }
    }
    QMatrix M(static_cast<int>(rows.size()), static_cast<int>(vars.size()));
    QMatrix b(static_cast<int>(rows.size()), 1);
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < vars.size(); ++j)
            M.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
        b.at(static_cast<int>(i), 0) = rhs[i];
    }
    QMatrix sol;
    try {
        sol = M.solve(b);
    } catch (const Error&) {
        r.fail("reeb", "empty solution set");
        return r;
    }
    int freedom = static_cast<int>(vars.size()) - M.rank();
    if (freedom > 0) {
        r.fail("reeb", "affine solution set of dimension " + std::to_string(freedom));
        return r;
    }
    std::ostringstream os;
    os << "unique ";
    QMatrix vec(static_cast<int>(vars.size()), 1);
    for (size_t i = 0; i < vars.size(); ++i) vec.at(static_cast<int>(i), 0) = sol.at(static_cast<int>(i), 0);
    os << combo_name(A, vars, vec, 0);
    r.pass("reeb", os.str());
    return r;
}

Report check_scale_invariance(const Form& alpha, const Poly& g, const Cdga& A, const Point& p) {
    auto gd = g.degree();
    if (g.is_zero() || !gd || *gd != 0)
        throw Error("degree-violation", "scaling element must be homogeneous of degree 0");
    if (evaluate(g, p) == 0)
        throw Error("point-not-unit", "scaling element vanishes at the point");

    Report r;
    KernelData ka = kernel_of_form(alpha, A, p);
    KernelData kg = kernel_of_form(alpha.scaled_by(g), A, p);
    bool same = true;
    for (int n = ka.tangent.lo; n <= ka.tangent.hi() && same; ++n) {
        const QMatrix& ba = ka.bases[static_cast<size_t>(n - ka.tangent.lo)];
        const QMatrix& bg = kg.bases[static_cast<size_t>(n - kg.tangent.lo)];
        // identical spans: equal rref of the transposed bases
        if (!(ba.transposed().rref() == bg.transposed().rref())) same = false;
    }
    r.add("scale-kernels-identical", same);
    ContactReport ca = check_contact(alpha, A, p);
    ContactReport cg = check_contact(alpha.scaled_by(g), A, p);
    r.add("scale-verdicts-agree", ca.verdict == cg.verdict,
          std::string(ca.verdict ? "pass" : "fail") + " vs " + (cg.verdict ? "pass" : "fail"));
    return r;
}

} // namespace sctk
