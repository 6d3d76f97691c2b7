#pragma once

// Helpers for driving the command-line binary from tests.

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef PTQ_CLI_PATH
#error "PTQ_CLI_PATH must point at the ptq executable"
#endif

namespace clitest {

namespace fs = std::filesystem;

/// Runs `ptq <args>` and returns its exit status.
inline int run(const std::string& args, const std::string& log = "/dev/null") {
  const std::string cmd = std::string(PTQ_CLI_PATH) + " " + args + " >" + log + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ptq_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Files in `dir` whose names start with `prefix` and end with `suffix`.
inline std::vector<fs::path> find(const fs::path& dir, const std::string& prefix, const std::string& suffix) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string n = e.path().filename().string();
    if (n.rfind(prefix, 0) == 0 && n.size() >= suffix.size() && n.compare(n.size() - suffix.size(), suffix.size(), suffix) == 0) {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] != name) continue;
      std::vector<double> v;
      for (const auto& r : rows) v.push_back(r[c]);
      return v;
    }
    throw std::out_of_range("no column " + name);
  }
};

inline Table read_csv(const fs::path& p) {
  std::istringstream in(slurp(p));
  Table t;
  std::string line, cell;
  if (std::getline(in, line)) {
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace clitest
