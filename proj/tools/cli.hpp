#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selberg::cli {

// args excludes the program name. Returns the process exit code:
// 0 all cases pass, 1 a verification failed, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace selberg::cli
