#ifndef MVSF_CLI_HPP
#define MVSF_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace mvsf {
namespace cli {

/// Run the command-line surface on the given arguments (without argv[0]).
/// Exit codes: 0 pass, 1 tolerance failure, 2 usage, 3 exceptional
/// parameter, 4 reference-table mismatch.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace mvsf

#endif  // MVSF_CLI_HPP
