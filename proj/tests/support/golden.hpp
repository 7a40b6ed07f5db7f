#ifndef SKEWFORMS_TESTS_GOLDEN_HPP
#define SKEWFORMS_TESTS_GOLDEN_HPP

// Golden CLI runs. Each line of cases.txt is "<name> <arguments...>"; the
// token @CORPUS@ expands to the corpus directory. The expected output of a
// case lives in <golden dir>/<name>.out and holds stdout and stderr followed
// by an "[exit N]" line.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace golden {

struct Case {
  std::string name;
  std::string args;
};

inline std::vector<Case> load_cases(const std::string& path) {
  std::vector<Case> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto space = line.find(' ');
    out.push_back({line.substr(0, space), space == std::string::npos ? "" : line.substr(space + 1)});
  }
  return out;
}

inline std::string expand(std::string args, const std::string& corpus) {
  const std::string token = "@CORPUS@";
  for (auto pos = args.find(token); pos != std::string::npos; pos = args.find(token, pos)) {
    args.replace(pos, token.size(), corpus);
    pos += corpus.size();
  }
  return args;
}

/// Runs the CLI from the corpus directory so paths in messages stay relative.
inline std::string run(const std::string& cli, const std::string& corpus, const Case& c) {
  const std::string cmd = "cd '" + corpus + "' && '" + cli + "' " + expand(c.args, ".") + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "[popen failed]\n";
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out + "[exit " + std::to_string(code) + "]\n";
}

inline bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

struct Outcome {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Compares every case with its golden file; with update set, rewrites them.
inline std::vector<Outcome> check_all(const std::string& cli, const std::string& corpus, const std::string& dir,
                                      bool update = false) {
  std::vector<Outcome> out;
  for (const auto& c : load_cases(dir + "/cases.txt")) {
    const std::string actual = run(cli, corpus, c);
    const std::string path = dir + "/" + c.name + ".out";
    if (update) {
      std::ofstream(path, std::ios::binary) << actual;
      out.push_back({c.name, true, "updated"});
      continue;
    }
    std::string expected;
    if (!read_file(path, expected)) {
      out.push_back({c.name, false, "missing " + path});
    } else if (expected != actual) {
      out.push_back({c.name, false, "output differs:\n--- expected\n" + expected + "--- actual\n" + actual});
    } else {
      // Byte stability: a second run must agree exactly.
      const std::string again = run(cli, corpus, c);
      out.push_back({c.name, again == actual, again == actual ? "" : "second run differs"});
    }
  }
  return out;
}

}  // namespace golden

#endif  // SKEWFORMS_TESTS_GOLDEN_HPP
