#ifndef SCTK_COMMANDS_HPP
#define SCTK_COMMANDS_HPP

#include "sctk/manifest.hpp"
#include "sctk/symplectify.hpp"

namespace sctk {

struct CommandOptions {
    std::string point_name; // default: the manifest's first point
    std::string form_name;  // default: "alpha0", else the first form
    std::string case_override;
    std::string z_mode_override;
    Rat f_value = 1;
    bool machine = false;
};

struct CommandResult {
    int exit_code = 0;      // 0 all pass, 1 check failed, 2 input error
    std::string machine;    // CHECK lines only
    std::string human;      // prose rendering
    std::string diagnostic; // set when exit_code == 2
};

/// cmd in {verify-cdga, verify-form, darboux-symplectic, darboux-contact,
/// contact-check, reeb, symplectify, report}. Input errors never emit CHECK
/// lines; verdict failures always do.
CommandResult run_command(const std::string& cmd, const Manifest& manifest,
                          const CommandOptions& options);

CommandResult run_command_on_file(const std::string& cmd, const std::string& path,
                                  const CommandOptions& options);

} // namespace sctk

#endif
