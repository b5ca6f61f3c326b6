#include "futs_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "futs/bisim.hpp"
#include "futs/ident.hpp"
#include "futs/logic.hpp"
#include "futs/reduce.hpp"
#include "futs/textio.hpp"

namespace futs::cli {

namespace {

// Aborts the running subcommand; an empty message means diagnostics were already printed.
struct Exit {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Exit{kUsage, "cannot read '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Exit{kUsage, "cannot write '" + path + "'"};
    out << text;
    if (!out.flush()) throw Exit{kUsage, "cannot write '" + path + "'"};
}

void print_diagnostics(const std::string& source, const std::vector<Diagnostic>& diags, std::ostream& err) {
    for (const auto& d : diags) err << source << ":" << d.to_string() << "\n";
}

Futs load_system(const std::string& path, std::ostream& err) {
    auto r = parse_system(read_file(path));
    print_diagnostics(path, r.diagnostics, err);
    if (!r.value) throw Exit{kUsage, ""};
    return std::move(*r.value);
}

std::vector<Formula> load_formulas(const std::optional<std::string>& inline_text,
                                   const std::optional<std::string>& file, const FutsSignature& sig,
                                   std::ostream& err) {
    if (inline_text) {
        auto r = parse_formula(*inline_text, sig);
        print_diagnostics("formula", r.diagnostics, err);
        if (!r.value) throw Exit{kUsage, ""};
        return {std::move(*r.value)};
    }
    auto r = parse_formulas(read_file(*file), sig);
    print_diagnostics(*file, r.diagnostics, err);
    if (!r.value) throw Exit{kUsage, ""};
    if (r.value->empty()) throw Exit{kUsage, "'" + *file + "' contains no formulas"};
    return std::move(*r.value);
}

// nullopt stands for the composite reduction to a WTS.
using Target = std::optional<Stage>;

const std::map<std::string, Target>& target_names() {
    static const std::map<std::string, Target> names{
        {"unlabelled", Stage::Unlabel}, {"tabular", Stage::Tabularize}, {"homogeneous", Stage::Homogenize},
        {"nested", Stage::Nest},        {"flattened", Stage::Flatten},  {"wts", std::nullopt},
    };
    return names;
}

ReductionResult reduce_to(const Futs& s, const Target& target) {
    return target ? apply_stage(*target, s) : to_wts(s);
}

void require_state(const Futs& s, const std::string& x) {
    if (!s.has_state(x)) throw Exit{kUsage, "unknown state " + quote_id(x)};
}

std::string map_text(const CarrierMap& f) {
    std::string out;
    for (const auto& [x, y] : f.mapping) out += quote_id(x) + " -> " + quote_id(y) + "\n";
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bisimulation, reductions and modal logic for finite FuTSs", "futs"};
    app.require_subcommand(1, 1);

    auto stage_check = CLI::IsMember([] {
        std::vector<std::string> v;
        for (const auto& [name, _] : target_names()) v.push_back(name);
        return v;
    }());

    std::string file, x, x2, to, output;
    std::optional<std::string> quotient_out, map_out, formula, formula_file, state;
    std::optional<std::size_t> depth;
    bool logic = false, exhaustive = false;
    std::uint64_t seed = 0;
    std::size_t samples = 64;

    auto* bisim = app.add_subcommand("bisim", "Print the largest bisimulation");
    bisim->add_option("file", file, "System file")->required();
    bisim->add_option("--quotient", quotient_out, "Write the quotient system here");

    auto* reduce = app.add_subcommand("reduce", "Apply a reduction stage or the full reduction to a WTS");
    reduce->add_option("file", file, "System file")->required();
    reduce->add_option("--to", to, "unlabelled, tabular, homogeneous, nested, flattened or wts")
        ->required()
        ->check(stage_check);
    reduce->add_option("-o,--output", output, "Reduced system file")->required();
    reduce->add_option("--map", map_out, "Write the carrier map here");

    auto* check = app.add_subcommand("check", "Evaluate formulas at every state");
    check->add_option("file", file, "System file")->required();
    auto* f_opt = check->add_option("--formula", formula, "Formula text");
    auto* ff_opt = check->add_option("--formula-file", formula_file, "File with one formula per line");
    f_opt->excludes(ff_opt);
    check->add_option("--state", state, "Only report this state; exit 0 iff every formula holds there");

    auto* equiv = app.add_subcommand("equiv", "Decide whether two states are equivalent");
    equiv->add_option("file", file, "System file")->required();
    equiv->add_option("x", x, "First state")->required();
    equiv->add_option("y", x2, "Second state")->required();
    equiv->add_flag("--logic", logic, "Compare by bounded logical equivalence");
    equiv->add_option("--depth", depth, "Modal depth bound for --logic");

    auto* verify = app.add_subcommand("verify", "Check the reduction condition over equivalence relations");
    verify->alias("verify-reduction");
    verify->add_option("file", file, "System file")->required();
    verify->add_option("--to", to, "Stage or wts")->required()->check(stage_check);
    verify->add_flag("--exhaustive", exhaustive, "Check every equivalence relation (at most 5 states)");
    verify->add_option("--seed", seed, "Seed for sampled relations");
    verify->add_option("--samples", samples, "Number of sampled relations");

    auto* translate_cmd = app.add_subcommand("translate", "Translate a formula along a reduction");
    translate_cmd->add_option("--formula", formula, "Formula text")->required();
    translate_cmd->add_option("--sig", file, "System file providing the signature")->required();
    translate_cmd->add_option("--to", to, "Stage or wts")->required()->check(stage_check);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (bisim->parsed()) {
            const Futs s = load_system(file, err);
            const Partition p = largest_bisimulation(s);
            out << p.to_string() << "\n";
            if (quotient_out) write_file(*quotient_out, write_system(quotient_system(s, p)));
            return kOk;
        }

        if (reduce->parsed()) {
            const Futs s = load_system(file, err);
            const ReductionResult r = reduce_to(s, target_names().at(to));
            write_file(output, write_system(r.target));
            if (map_out) write_file(*map_out, map_text(r.carrier_map));
            out << to << ": " << r.target.states().size() << " states";
            const std::size_t hidden = r.target.states().size() - s.states().size();
            if (hidden) out << " (" << s.states().size() << " original, " << hidden << " intermediate)";
            out << "\n";
            return kOk;
        }

        if (check->parsed()) {
            if (!formula && !formula_file) throw Exit{kUsage, "check needs --formula or --formula-file"};
            const Futs s = load_system(file, err);
            if (state) require_state(s, *state);
            const auto formulas = load_formulas(formula, formula_file, s.signature(), err);
            bool all = true;
            for (const auto& phi : formulas) {
                if (formulas.size() > 1) out << "formula: " << write_formula(phi, &s.signature()) << "\n";
                const auto sat = sat_set(s, phi);
                for (const auto& y : s.states()) {
                    if (state && y != *state) continue;
                    const bool holds = std::binary_search(sat.begin(), sat.end(), y);
                    all = all && holds;
                    out << quote_id(y) << ": " << (holds ? "true" : "false") << "\n";
                }
            }
            return (state && !all) ? kFails : kOk;
        }

        if (equiv->parsed()) {
            const Futs s = load_system(file, err);
            require_state(s, x);
            require_state(s, x2);
            if (!logic) {
                if (depth) throw Exit{kUsage, "--depth needs --logic"};
                const bool same = largest_bisimulation(s).related(x, x2);
                out << (same ? "equivalent" : "distinguished") << "\n";
                return same ? kOk : kFails;
            }
            if (s.signature().simple()) {
                const bool same = bounded_logical_equiv(s, depth).related(x, x2);
                out << (same ? "equivalent" : "distinguished") << "\n";
                if (same) return kOk;
                const auto phi = find_distinguishing_formula(s, x, x2, depth);
                if (phi) out << "formula: " << write_formula(*phi, &s.signature()) << "\n";
                return kFails;
            }
            // Decided on the WTS reduction; one modal level of s spans max_depth levels there.
            const ReductionResult r = to_wts(s);
            const std::string y = r.carrier_map(x), y2 = r.carrier_map(x2);
            std::optional<std::size_t> wts_depth;
            if (depth) wts_depth = *depth * s.signature().max_depth();
            const bool same = bounded_logical_equiv(r.target, wts_depth).related(y, y2);
            out << (same ? "equivalent" : "distinguished") << "\n";
            if (same) return kOk;
            const auto phi = find_distinguishing_formula(r.target, y, y2, wts_depth);
            if (phi) out << "formula over the wts reduction: " << write_formula(*phi, &r.target.signature()) << "\n";
            return kFails;
        }

        if (verify->parsed()) {
            const Futs s = load_system(file, err);
            const ReductionResult r = reduce_to(s, target_names().at(to));
            VerifyOptions options;
            options.exhaustive = exhaustive;
            options.seed = seed;
            options.samples = samples;
            const VerificationReport report = verify_reduction(r, options);
            for (const auto& v : report.violations) out << "violation: " << v.relation << ": " << v.message << "\n";
            out << report.summary() << "\n";
            return report.ok() ? kOk : kFails;
        }

        if (translate_cmd->parsed()) {
            const Futs s = load_system(file, err);
            const auto phi = load_formulas(formula, std::nullopt, s.signature(), err).front();
            const Target target = target_names().at(to);
            const Formula result = target ? translate(*target, s.signature(), phi) : translate_to_wts(s.signature(), phi);
            FutsSignature sig = s.signature();
            if (target) {
                sig = reduced_signature(*target, sig);
            } else {
                for (auto st : wts_plan(s.signature())) sig = reduced_signature(st, sig);
            }
            out << write_formula(result, &sig) << "\n";
            return kOk;
        }
    } catch (const Exit& e) {
        if (!e.message.empty()) err << "error: " << e.message << "\n";
        return e.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace futs::cli
