#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcl::cli {

// Exit codes: 0 success, 1 domain error, 2 parse or configuration error,
// 3 resource limit.
enum ExitCode { kOk = 0, kDomain = 1, kConfig = 2, kResource = 3 };

inline constexpr const char *kSchema = "pcl.report/1";

// One command; args exclude the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// One command per input line; each report is a single JSON line, emitted in
// input order. Returns the largest exit code seen.
int run_batch(std::istream &in, std::ostream &out, std::ostream &err, unsigned parallel = 1);

} // namespace pcl::cli
