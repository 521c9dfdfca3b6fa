#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace d4walk::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

struct InfoOptions {
  std::string params_file;
};

struct ScanOptions {
  std::string params_file;
  int path = 0;  // oracle-only path graph on this many vertices
  std::string pair;
  std::string vertices;
  double t0 = 0.0;
  double t1 = 10.0;
  int steps = 100;
  std::string format = "csv";
  bool any_pair = false;
};

struct ScheduleOptions {
  std::string params_file;
  std::string family;
  std::string n_range;
  std::string ell_range;
  std::optional<long long> k, k2, k3, q3, q, q2;
  double epsilon = 0.1;
  long long r_max = 10000;
  std::string format = "json";
};

struct VerifyOptions {
  std::string scope = "quick";
  std::string inject_fault;
  std::string format = "text";
};

int run_info(const InfoOptions& opt, std::ostream& out);
int run_scan(const ScanOptions& opt, std::ostream& out);
int run_schedule(const ScheduleOptions& opt, std::ostream& out);
int run_verify(const VerifyOptions& opt, std::ostream& out);

// "7", "1..9", "1..9:2" or "1,3,5".
std::vector<int> parse_range(const std::string& text);

}  // namespace d4walk::cli
