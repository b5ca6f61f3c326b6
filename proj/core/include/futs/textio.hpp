#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "futs/logic.hpp"
#include "futs/monoid.hpp"
#include "futs/system.hpp"

namespace futs {

struct Diagnostic {
    enum class Severity { Error, Warning };

    std::size_t line = 1;    // 1-based
    std::size_t column = 1;  // 1-based, in bytes
    std::string message;
    Severity severity = Severity::Error;

    // `3:14: error: message`
    [[nodiscard]] std::string to_string() const;
};

template <typename T>
struct ParseResult {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] bool ok() const { return value.has_value(); }
    // All diagnostics, one per line.
    [[nodiscard]] std::string report() const {
        std::string out;
        for (const auto& d : diagnostics) out += d.to_string() + "\n";
        return out;
    }
};

/// System file:
///
///     futs
///     labels A0 = {a, b}
///     monoids M0 = [bool-or, rat-plus]
///     states {s0, s1}
///     trans 0 s0 a -> {{s0: 1/2, s1: 1/2}: tt}
///
/// `#` starts a comment. The value is present iff there are no errors; the
/// result always passes validate().
[[nodiscard]] ParseResult<Futs> parse_system(std::string_view text);

/// Canonical text; parse_system(write_system(s)) reproduces s exactly.
[[nodiscard]] std::string write_system(const Futs& s);

/// `bool-or`, `nat-plus`, `nat-max`, `rat-plus`, `prod(M, ...)`, `pow({a, ...}, M)`.
[[nodiscard]] ParseResult<MonoidDesc> parse_monoid(std::string_view text);

/// `T`, `phi & phi` (left-associative, weakest), `( phi )` and `<i|a|m0, ..., ml> phi`.
/// `i|` may be left out when the signature has one component, `a|` when A_i is a singleton.
/// Bounds are read against the monoid row of component i.
[[nodiscard]] ParseResult<Formula> parse_formula(std::string_view text, const FutsSignature& sig);

/// One formula per non-blank line; `#` comments allowed.
[[nodiscard]] ParseResult<std::vector<Formula>> parse_formulas(std::string_view text, const FutsSignature& sig);

/// Always writes the component index; with a signature, the label is left out for singleton label sets.
[[nodiscard]] std::string write_formula(const Formula& phi, const FutsSignature* sig = nullptr);

}  // namespace futs
