#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gammak/report.hpp"

namespace gammak {

struct RunParams {
    int max_len = 2;
    int max_dim = 2;
    std::int64_t budget = 200'000;
    std::uint64_t seed = 0;
    bool check_universal_property = true;
};

/* Commands: validate, gamma, axioms, split, k0, quillen-a, oplax,
 * adjunction, homology, report-all. Throws SpecError on input problems. */
Report run_command(const std::string& command, const std::string& spec_path,
                   const RunParams& params);

extern const std::vector<std::string> kCommands;

/* Exit status: 0 clean, 1 findings, 2 input/usage error. */
int cli_main(int argc, char** argv);

}  // namespace gammak
