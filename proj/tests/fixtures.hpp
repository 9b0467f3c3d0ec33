#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bnh/diagram.hpp"

// Helpers for loading the shipped PD corpus in tests.  BNH_DATA_DIR is set
// by the build to <repo>/data.

#ifndef BNH_DATA_DIR
#define BNH_DATA_DIR "data"
#endif

namespace fixtures {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bnh::Diagram pd(const std::string& name) {
  return bnh::parse_pd(read_file(std::string(BNH_DATA_DIR) + "/pd/" + name + ".pd"));
}

inline std::string movie_text(const std::string& name) {
  return read_file(std::string(BNH_DATA_DIR) + "/movies/" + name + ".movie");
}

/// The small-diagram corpus used by the oracle and invariance suites.
inline std::vector<std::string> corpus_names() {
  return {"unknot",        "unknot_kink_plus", "unknot_kink_minus",
          "unknot_two_kinks", "unknot_three_kinks", "hopf_plus",
          "hopf_minus",    "trefoil_left",     "trefoil_right",
          "figure8",       "unlink2"};
}

}  // namespace fixtures
