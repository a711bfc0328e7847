#include "sctk/commands.hpp"

#include <sstream>

namespace sctk {

namespace {

struct Context {
    Manifest manifest;
    CommandOptions opts;
    Report report;
    std::ostringstream notes; // extra human-readable lines
};

DarbouxScheme effective_scheme(const Context& ctx) {
    if (!ctx.manifest.scheme) throw Error("missing-section", "manifest has no [scheme] section");
    DarbouxScheme s = ctx.manifest.scheme->scheme;
    if (!ctx.opts.case_override.empty()) {
        if (ctx.opts.case_override == "odd") s.parity_case = DarbouxScheme::Case::odd;
        else if (ctx.opts.case_override == "mod4-0") s.parity_case = DarbouxScheme::Case::mod4_0;
        else if (ctx.opts.case_override == "mod4-2") s.parity_case = DarbouxScheme::Case::mod4_2;
        else throw Error("bad-option", "unknown --case '" + ctx.opts.case_override + "'");
        s.validate();
    }
    if (!ctx.opts.z_mode_override.empty()) {
        if (ctx.opts.z_mode_override == "generator") s.z_mode = DarbouxScheme::ZMode::generator;
        else if (ctx.opts.z_mode_override == "element") s.z_mode = DarbouxScheme::ZMode::element;
        else throw Error("bad-option", "unknown --z-mode '" + ctx.opts.z_mode_override + "'");
    }
    return s;
}

Point select_point(const Context& ctx, const Cdga& A) {
    Point p;
    if (!ctx.opts.point_name.empty()) {
        const Point* found = ctx.manifest.point(ctx.opts.point_name);
        if (!found) throw Error("unknown-point", "no point named '" + ctx.opts.point_name + "'");
        p = *found;
    } else if (!ctx.manifest.points.empty()) {
        p = ctx.manifest.points.front().second;
    }
    // default every unassigned degree-0 generator to 0 (1 for invertibles)
    for (int id = 0; id < A.alg->size(); ++id) {
        const GradedVar& v = A.alg->var(id);
        if (v.degree != 0 || p.assignment.count(v.name)) continue;
        p.assignment[v.name] = v.invertible ? 1 : 0;
    }
    return p;
}

Form select_form(const Context& ctx, const std::map<std::string, Form>& forms) {
    std::string name = ctx.opts.form_name;
    if (name.empty()) {
        if (forms.count("alpha0")) name = "alpha0";
        else if (!forms.empty()) name = forms.begin()->first;
        else throw Error("missing-section", "manifest defines no forms");
    }
    auto it = forms.find(name);
    if (it == forms.end()) throw Error("unknown-form", "no form named '" + name + "'");
    return it->second;
}

/// Contact model from either the explicit algebra + form or the scheme.
struct ContactInput {
    Cdga A;
    Form alpha;
    Report build_report; // construction checks when scheme-built
    bool from_scheme = false;
};

PairingScheme named_pairing(const Cdga& A, const SchemeSection& sec) {
    PairingScheme p;
    p.k = sec.scheme.k;
    for (const auto& [xn, yn] : sec.pair_names) {
        int x = A.alg->id_of(xn), y = A.alg->id_of(yn);
        p.pairs.push_back({-A.alg->degree(x), x, y});
    }
    for (const auto& zn : sec.z_names) p.z_vars.push_back(A.alg->id_of(zn));
    p.validate(*A.alg);
    return p;
}

ContactInput contact_input(const Context& ctx) {
    ContactInput in;
    if (ctx.manifest.scheme) {
        DarbouxScheme s = effective_scheme(ctx);
        const SchemeSection& sec = *ctx.manifest.scheme;
        if (s.z_mode == DarbouxScheme::ZMode::element) {
            Cdga A = build_manifest_cdga(ctx.manifest);
            PairingScheme pairing = named_pairing(A, sec);
            if (sec.z_src.empty())
                throw Error("missing-key", "element mode needs a z expression in [scheme]");
            Poly z = parse_poly(sec.z_src, A.alg);
            Poly explicit_H;
            bool has_H = !sec.hamiltonian_src.empty();
            if (has_H) explicit_H = parse_poly(sec.hamiltonian_src, A.alg);
            ContactModel model = build_contact_darboux_element(A, s, pairing, z,
                                                               has_H ? &explicit_H : nullptr);
            in.A = model.A;
            in.alpha = model.alpha0;
            in.build_report = model.build_report;
            in.from_scheme = true;
            return in;
        }
        // generator mode: parse H over the scheme algebra
        PairingScheme pairing;
        Cdga bare = build_scheme_algebra(s, pairing, nullptr, true);
        Poly H = sec.hamiltonian_src.empty() ? Poly::zero(bare.alg)
                                             : parse_poly(sec.hamiltonian_src, bare.alg);
        ContactModel model = build_contact_darboux(s, H);
        in.A = model.A;
        in.alpha = model.alpha0;
        in.build_report = model.build_report;
        in.from_scheme = true;
        return in;
    }
    in.A = build_manifest_cdga(ctx.manifest);
    auto forms = build_manifest_forms(ctx.manifest, in.A.alg);
    in.alpha = select_form(ctx, forms);
    return in;
}

// ------------------------------------------------------------- commands --

void cmd_verify_cdga(Context& ctx) {
    Cdga A = build_manifest_cdga(ctx.manifest);
    ctx.report.append(check_d_squared(A));
    if (ctx.manifest.scheme && !ctx.manifest.scheme->pair_names.empty()) {
        PairingScheme pairing = named_pairing(A, *ctx.manifest.scheme);
        Poly H = ctx.manifest.scheme->hamiltonian_src.empty()
                     ? Poly::zero(A.alg)
                     : parse_poly(ctx.manifest.scheme->hamiltonian_src, A.alg);
        ctx.report.append(check_master_equation(A, pairing, H));
    }
    for (const auto& [name, pt] : ctx.manifest.points) {
        Point p = pt;
        for (int id = 0; id < A.alg->size(); ++id) {
            const GradedVar& v = A.alg->var(id);
            if (v.degree == 0 && !p.assignment.count(v.name))
                p.assignment[v.name] = v.invertible ? 1 : 0;
        }
        Report r = check_minimal_at(A, p);
        ctx.report.add("minimal-at-" + name, r.ok(),
                       r.ok() ? "" : r.checks.front().detail);
    }
    ctx.report.pass("vdim", std::to_string(vdim(A)));
}

void cmd_verify_form(Context& ctx) {
    Cdga A = build_manifest_cdga(ctx.manifest);
    auto forms = build_manifest_forms(ctx.manifest, A.alg);
    Form w = select_form(ctx, forms);
    ctx.report.append(is_shifted_pform(A, w));
    if (w.weight() == 2) ctx.report.append(is_closed_sequence(A, {w}));
}

void cmd_darboux_symplectic(Context& ctx) {
    DarbouxScheme s = effective_scheme(ctx);
    if (s.contact) throw Error("scheme-mismatch", "scheme is contact; use darboux-contact");
    PairingScheme pairing;
    Cdga bare = build_scheme_algebra(s, pairing);
    Poly H = ctx.manifest.scheme->hamiltonian_src.empty()
                 ? Poly::zero(bare.alg)
                 : parse_poly(ctx.manifest.scheme->hamiltonian_src, bare.alg);
    SymplecticModel model = build_symplectic_darboux(s, H);
    ctx.report.append(model.build_report);
    PhiData phi = build_phi(model);
    ctx.report.append(phi.build_report);
    ctx.report.append(vdim_report(model.A, VdimRole::symplectic));
    ctx.notes << "omega0 = " << model.omega0.str() << "\n";
    ctx.notes << "phi = " << phi.phi.str() << "\n";
}

void cmd_darboux_contact(Context& ctx) {
    ContactInput in = contact_input(ctx);
    if (!in.from_scheme)
        throw Error("missing-section", "darboux-contact needs a [scheme] section");
    ctx.report.append(in.build_report);
    ctx.report.append(vdim_report(in.A, VdimRole::contact));
    ctx.notes << "alpha0 = " << in.alpha.str() << "\n";
}

void cmd_contact_check(Context& ctx) {
    ContactInput in = contact_input(ctx);
    Point p = select_point(ctx, in.A);
    ContactReport cr = check_contact(in.alpha, in.A, p);
    ctx.report.append(cr.report());
    for (int n = cr.kernel.complex.lo; n <= cr.kernel.complex.hi(); ++n) {
        if (cr.kernel.complex.dim(n) == 0) continue;
        ctx.notes << "ker alpha degree " << n << ":";
        for (const auto& b : cr.kernel.complex.names(n)) ctx.notes << " " << b;
        ctx.notes << "\n";
    }
    auto it = ctx.manifest.options.find("scale_unit");
    if (it != ctx.manifest.options.end()) {
        Poly g = parse_poly(it->second, in.A.alg);
        ctx.report.append(check_scale_invariance(in.alpha, g, in.A, p));
    }
}

void cmd_reeb(Context& ctx) {
    ContactInput in = contact_input(ctx);
    Point p = select_point(ctx, in.A);
    ctx.report.append(reeb_solutions(in.alpha, in.A, p));
}

void cmd_symplectify(Context& ctx) {
    ContactInput in = contact_input(ctx);
    Point p = select_point(ctx, in.A);
    SymplectifiedModel M = symplectify(in.A, in.alpha, p);
    ctx.report.append(M.build_report);
    ctx.report.append(weight_grading(M));
    Point pf = p;
    pf.assignment["f"] = ctx.opts.f_value;
    ctx.report.append(check_symplectic(M, pf));
    ctx.report.append(pairing_certificate(M));
    ctx.notes << "lambda = " << M.lambda.str() << "\n";
    ctx.notes << "omega0 = " << M.omega0.str() << "\n";
}

void cmd_report(Context& ctx) {
    if (ctx.manifest.has_algebra()) {
        cmd_verify_cdga(ctx);
        Cdga A = build_manifest_cdga(ctx.manifest);
        auto forms = build_manifest_forms(ctx.manifest, A.alg);
        for (const auto& [name, w] : forms) {
            Report r = is_shifted_pform(A, w);
            ctx.report.add("form-" + name + "-d-closed", r.ok(),
                           r.ok() ? "" : r.checks.front().detail);
        }
    }
    if (ctx.manifest.scheme) {
        if (ctx.manifest.scheme->scheme.contact) cmd_darboux_contact(ctx);
        else cmd_darboux_symplectic(ctx);
    }
}

} // namespace

CommandResult run_command(const std::string& cmd, const Manifest& manifest,
                          const CommandOptions& options) {
    Context ctx{manifest, options, {}, {}};
    CommandResult out;
    try {
        if (cmd == "verify-cdga") cmd_verify_cdga(ctx);
        else if (cmd == "verify-form") cmd_verify_form(ctx);
        else if (cmd == "darboux-symplectic") cmd_darboux_symplectic(ctx);
        else if (cmd == "darboux-contact") cmd_darboux_contact(ctx);
        else if (cmd == "contact-check") cmd_contact_check(ctx);
        else if (cmd == "reeb") cmd_reeb(ctx);
        else if (cmd == "symplectify") cmd_symplectify(ctx);
        else if (cmd == "report") cmd_report(ctx);
        else throw Error("unknown-command", "unknown command '" + cmd + "'");
    } catch (const Error& e) {
        out.exit_code = 2;
        out.diagnostic = std::string("error[") + e.code() + "] " + e.what();
        return out;
    }
    out.machine = ctx.report.machine_text();
    std::ostringstream human;
    human << "== sctk " << cmd << " : " << manifest.name << " ==\n";
    for (const auto& c : ctx.report.checks) {
        human << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name;
        if (!c.detail.empty()) human << ": " << c.detail;
        human << "\n";
    }
    std::string extra = ctx.notes.str();
    if (!extra.empty()) human << extra;
    out.human = human.str();
    out.exit_code = ctx.report.ok() ? 0 : 1;
    return out;
}

CommandResult run_command_on_file(const std::string& cmd, const std::string& path,
                                  const CommandOptions& options) {
    Manifest m;
    try {
        m = load_manifest(path);
    } catch (const Error& e) {
        CommandResult out;
        out.exit_code = 2;
        out.diagnostic = std::string("error[") + e.code() + "] " + e.what();
        return out;
    }
    return run_command(cmd, m, options);
}

} // namespace sctk
