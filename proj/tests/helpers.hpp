#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "uniserial/presentation.hpp"

inline std::string fixture_text(const std::string& name) {
  std::string path = std::string(FIXTURES_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline uniserial::Presentation fixture(const std::string& name) {
  return uniserial::parse_presentation(fixture_text(name));
}
