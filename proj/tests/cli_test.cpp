// Golden-file tests for the command-line tool. Each case runs twice and must
// print byte-identical output. Set UPDATE_GOLDEN=1 to rewrite the files.

#include <doctest.h>

#include <cstdlib>

#include "cli_cases.hpp"

using namespace cli_cases;

TEST_CASE("command-line golden outputs") {
  const bool update = std::getenv("UPDATE_GOLDEN") != nullptr;
  for (const Case& c : cases()) {
    SUBCASE(c.name) {
      const auto [out, code] = run(c);
      CHECK(code == c.exit_code);
      if (update) std::ofstream(golden_path(c), std::ios::binary) << out;
      CHECK(out == read_file(golden_path(c)));
      const auto [again, code2] = run(c);
      CHECK(again == out);
      CHECK(code2 == code);
    }
  }
}
