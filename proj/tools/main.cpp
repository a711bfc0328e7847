#include "sctk/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"sctk: symbolic verification of shifted symplectic and contact local models"};
    app.require_subcommand(1);

    std::string manifest_path;
    sctk::CommandOptions opts;
    std::string f_value = "1";

    const char* commands[] = {"verify-cdga",   "verify-form", "darboux-symplectic",
                              "darboux-contact", "contact-check", "reeb",
                              "symplectify",   "report"};
    std::vector<CLI::App*> subs;
    for (const char* name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("manifest", manifest_path, "manifest file")->required();
        sub->add_option("--point", opts.point_name, "point name from [points]");
        sub->add_option("--form", opts.form_name, "form name from [forms]");
        sub->add_option("--case", opts.case_override, "odd|mod4-0|mod4-2");
        sub->add_option("--z-mode", opts.z_mode_override, "generator|element");
        sub->add_option("--f-value", f_value, "fiber value p/q for check_symplectic");
        sub->add_flag("--machine", opts.machine, "machine-readable CHECK lines only");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    std::string cmd;
    for (size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) cmd = commands[i];

    try {
        opts.f_value = sctk::parse_rational(f_value);
    } catch (const sctk::Error& e) {
        std::cerr << "error[" << e.code() << "] " << e.what() << "\n";
        return 2;
    }

    sctk::CommandResult result = sctk::run_command_on_file(cmd, manifest_path, opts);
    if (result.exit_code == 2) {
        std::cerr << result.diagnostic << "\n";
        return 2;
    }
    std::cout << (opts.machine ? result.machine : result.human);
    return result.exit_code;
}
