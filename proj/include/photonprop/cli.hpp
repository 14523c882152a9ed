#pragma once

namespace photonprop {

/// Exit codes: 0 ok, 1 config/usage error, 2 validation error, 3 numerical non-convergence.
int cli_main(int argc, char** argv);

}  // namespace photonprop
