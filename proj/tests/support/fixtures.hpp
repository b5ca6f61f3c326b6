#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "futs/textio.hpp"

namespace futs::fixtures {

inline std::string data_path(const std::string& name) { return std::string(FUTS_TEST_DATA) + "/" + name; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Futs parse_or_throw(const std::string& text) {
    auto r = parse_system(text);
    if (!r.value) throw std::runtime_error(r.report());
    return std::move(*r.value);
}

inline Futs load_path(const std::string& path) { return parse_or_throw(read_text(path)); }

inline Futs load(const std::string& name) { return load_path(data_path(name)); }

inline Formula formula(const std::string& text, const FutsSignature& sig) {
    auto r = parse_formula(text, sig);
    if (!r.value) throw std::runtime_error(r.report());
    return std::move(*r.value);
}

}  // namespace futs::fixtures
