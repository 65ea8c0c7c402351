#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

inline std::string fixture_path(const std::string& rel) {
    return std::string(ROSS_FIXTURE_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::vector<std::string> fixture_files(const std::vector<std::string>& rels) {
    std::vector<std::string> out;
    for (const auto& r : rels) out.push_back(fixture_path(r));
    return out;
}
