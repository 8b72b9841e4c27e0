#pragma once

namespace troph {

// Entry point shared by the installed binary and the CLI tests. Returns the
// process exit code: 0 success, 2 domain error, 3 unsupported request,
// 4 budget exhaustion, 5 malformed input.
int run_command(int argc, char** argv);

}
