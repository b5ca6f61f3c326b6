#pragma once

#include <string>
#include <string_view>

namespace futs {

// Plain identifiers are [A-Za-z_][A-Za-z0-9_']*; anything else is written in backticks.
inline bool is_plain_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    if (!alpha(s.front())) return false;
    for (char c : s.substr(1)) {
        if (!alpha(c) && !(c >= '0' && c <= '9') && c != '\'') return false;
    }
    return true;
}

inline std::string quote_id(std::string_view s) {
    if (is_plain_identifier(s)) return std::string(s);
    std::string out = "`";
    for (char c : s) {
        if (c == '`' || c == '\\') out += '\\';
        out += c;
    }
    return out + "`";
}

}  // namespace futs
