#pragma once

namespace vpatch {

// Parses argv and runs one subcommand. Exit status 0 on success, 2 when the
// requested mathematical check failed (report still written), 1 on usage or
// evaluation errors.
int dispatch(int argc, char** argv);

} // namespace vpatch
