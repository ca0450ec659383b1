#pragma once
#include "zft/triangulation.hpp"
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

inline std::string fixture_text(const std::string& name) {
    std::ifstream f(std::string(FIXTURE_DIR) + "/" + name);
    if (!f) throw std::runtime_error("missing fixture " + name);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline zft::Triangulation load_fixture(const std::string& name) {
    return zft::parse_triangulation(fixture_text(name));
}
