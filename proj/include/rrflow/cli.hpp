#pragma once

namespace rrflow {

// Dispatches a full command line; returns the process exit code
// (0 ok, 1 negative decision, 2 usage or IO error).
int run(int argc, const char* const* argv);

} // namespace rrflow
