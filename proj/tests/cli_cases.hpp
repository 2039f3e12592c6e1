#pragma once

// Command-line invocations with checked-in expected output, shared by the
// golden tests and the acceptance runner.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cli_cases {

struct Case {
  const char* name;
  int exit_code;
  std::vector<std::string> args;
};

inline const std::vector<Case>& cases() {
  static const std::vector<Case> all = {
      {"find_ade_exp", 0, {"find-ade", "--def", "f=exp(z)", "--subject", "f", "--max-order", "1", "--max-degree", "1"}},
      {"find_ade_exp_json", 0,
       {"find-ade", "--def", "f=exp(z)", "--subject", "f", "--max-order", "1", "--max-degree", "1", "--format", "json"}},
      {"find_ade_sin_none", 1, {"find-ade", "--subject", "sin(z)", "--max-order", "1", "--max-degree", "1"}},
      {"find_ade_series_file", 0,
       {"find-ade", "--series-file", GOLDEN_DIR "/exp.series", "--max-order", "1", "--max-degree", "1"}},
      {"find_ade_exp_exp", 0, {"find-ade", "--subject", "exp(exp(z))", "--max-order", "2", "--max-degree", "2"}},
      {"check_permutable_pair", 0,
       {"check-permutable", "--def", "f=z+exp(z)", "--def", "g=z+exp(z)+2*pi*i", "--subject", "f,g", "--order", "16"}},
      {"check_permutable_numeric", 0,
       {"check-permutable", "--def", "f=z+exp(z)", "--def", "g=z+exp(z)+2*pi*i", "--subject", "f,g", "--order", "16",
        "--mode", "numeric", "--format", "json"}},
      {"check_permutable_false", 1, {"check-permutable", "--subject", "exp(z),sin(z)", "--order", "8"}},
      {"transfer_pair", 0,
       {"transfer-ade", "--def", "f=z+exp(z)", "--def", "g=z+exp(z)+2*pi*i", "--ade", "y2-y1+1", "--subject", "f,g",
        "--no-timing"}},
      {"transfer_iterate_json", 0,
       {"transfer-ade", "--def", "f=exp(z)", "--def", "g=iter(f,2)", "--ade", "y1-y0", "--subject", "f,g", "--format",
        "json", "--no-timing"}},
      {"transfer_iterate_fixed_q", 1,
       {"transfer-ade", "--def", "f=exp(z)", "--def", "g=iter(f,2)", "--ade", "y1-y0", "--subject", "f,g",
        "--no-escalate", "--no-timing"}},
      {"transfer_invalid_ade", 3,
       {"transfer-ade", "--def", "f=exp(z)", "--ade", "y1+y0", "--subject", "f,f", "--no-timing"}},
      {"series_exp_center_1", 0, {"series", "--subject", "exp(z)", "--center", "1", "--order", "4"}},
      {"series_sin_numeric", 0, {"series", "--subject", "sin(z)", "--order", "7", "--mode", "numeric"}},
      {"diff_iterate", 0, {"diff", "--def", "f=exp(z)", "--subject", "iter(f,3)"}},
      {"diff_twice_json", 0, {"diff", "--subject", "sin(z)*exp(z)", "--times", "2", "--format", "json"}},
      {"rewrite_chain_k2", 0, {"rewrite-chain", "--k", "2"}},
      {"rewrite_chain_verified", 0,
       {"rewrite-chain", "--ade", "y2-y1+1", "--def", "f=z+exp(z)", "--def", "g=z+exp(z)+2*pi*i", "--subject", "f,g",
        "--format", "json"}},
      {"compose_exp_square", 0,
       {"compose-ade", "--subject", "exp(z),z^2", "--ade", "y1-y0", "--ade-g", "y2-2"}},
      {"iterate_translation", 0,
       {"iterate-ade", "--def", "f=z+exp(z)", "--subject", "f", "--ade", "y2-y1+1", "--times", "2"}},
      {"growth_characteristic", 0, {"growth", "characteristic", "--subject", "exp(z)", "--radii", "1,5,10"}},
      {"growth_max_modulus_json", 0,
       {"growth", "max-modulus", "--def", "f=exp(z)", "--subject", "iter(f,3)", "--radii", "2,4", "--format", "json"}},
      {"growth_baker", 0,
       {"growth", "baker-scan", "--def", "f=exp(z)", "--subject", "f,iter(f,2)", "--radii", "2,3,4"}},
      {"growth_inequalities", 0,
       {"growth", "inequalities", "--subject", "exp(z),exp(z)", "--radii", "1,2,4,10", "--samples", "256"}},
      {"error_parse", 2, {"find-ade", "--subject", "exp("}},
      {"error_unknown_flag", 2, {"find-ade", "--subject", "exp(z)", "--nope"}},
      {"error_polynomial_baker", 2, {"growth", "baker-scan", "--subject", "z^2,z^3", "--radii", "1,2"}},
      {"error_undefined_name", 2, {"series", "--subject", "h(z)"}},
  };
  return all;
}

inline std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

/// stdout and exit status; exit status -1 when the process did not exit.
inline std::pair<std::string, int> run(const Case& c) {
  std::string cmd = quote(ADEQ_CLI);
  for (const std::string& a : c.args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {"", -1};
  std::string out;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

inline std::string golden_path(const Case& c) { return std::string(GOLDEN_DIR) + "/" + c.name + ".out"; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace cli_cases
