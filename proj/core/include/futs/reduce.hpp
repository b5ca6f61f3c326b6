#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "futs/partition.hpp"
#include "futs/system.hpp"

namespace futs {

enum class Stage { Unlabel, Tabularize, Homogenize, Nest, Flatten };

enum class ReductionKind { Identity, Unlabel, Tabularize, Homogenize, Nest, Flatten, Composite };

[[nodiscard]] std::string_view stage_name(Stage s);
[[nodiscard]] std::string_view kind_name(ReductionKind k);

// The single label of every unlabelled component.
inline constexpr std::string_view kUnitLabel = "*";

// The fused label (i,a) produced by nest().
[[nodiscard]] std::string fused_label(std::size_t component, const std::string& label);

// Level-1+ terms that flatten() turns into states are named `#<depth>:<term>`.
[[nodiscard]] std::string hidden_state_id(const WeightTerm& t);

/// Outcome of a reduction σ: the reduced system, the injective carrier map σ^c,
/// and what is needed to transport bisimulations back and forth.
struct ReductionResult {
    std::shared_ptr<const Futs> source;
    Futs target;
    CarrierMap carrier_map;
    ReductionKind kind = ReductionKind::Identity;
    bool full = true;
    // Composite reductions keep their steps in order.
    std::vector<ReductionResult> stages;
    // flatten(): each intermediate state with the term it stands for.
    std::map<std::string, WeightTerm> hidden;
};

/// The signature a stage produces, or PreconditionError when the stage does not apply.
[[nodiscard]] FutsSignature reduced_signature(Stage stage, const FutsSignature& sig);

/// Stages applied by to_wts() to a system of signature `sig`.
[[nodiscard]] std::vector<Stage> wts_plan(const FutsSignature& sig);

[[nodiscard]] ReductionResult identity_reduction(const Futs& s);
[[nodiscard]] ReductionResult unlabel(const Futs& s);
[[nodiscard]] ReductionResult tabularize(const Futs& s);
[[nodiscard]] ReductionResult homogenize(const Futs& s);
[[nodiscard]] ReductionResult nest(const Futs& s);
[[nodiscard]] ReductionResult flatten(const Futs& s);
[[nodiscard]] ReductionResult apply_stage(Stage stage, const Futs& s);
[[nodiscard]] ReductionResult to_wts(const Futs& s);

/// first, then second. Throws PreconditionError when second does not start where first ends.
[[nodiscard]] ReductionResult compose(const ReductionResult& first, const ReductionResult& second);

/// Pulls a target bisimulation back along σ^c.
[[nodiscard]] Partition restrict_bisim(const ReductionResult& r, const Partition& target_partition);

/// The target bisimulation corresponding to a source bisimulation.
[[nodiscard]] Partition extend_bisim(const ReductionResult& r, const Partition& source_partition);

struct VerifyOptions {
    bool exhaustive = true;
    std::size_t max_exhaustive_states = 5;
    std::size_t samples = 64;
    std::uint64_t seed = 0;
};

struct Violation {
    std::string relation;
    std::string message;
};

struct VerificationReport {
    std::size_t checked = 0;
    std::size_t total = 0;  // Bell(|source|) in exhaustive mode, the sample count otherwise
    std::size_t bisimulations = 0;
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }
    // "15/15 relations checked, 0 violations"
    [[nodiscard]] std::string summary() const;
};

/// Checks the reduction condition for every (or a sample of) equivalence relation R on the source:
/// bisimulations are transported to target bisimulations that restrict back to R and relate exactly
/// the images of R-related states; non-bisimulations are not turned into target bisimulations.
/// Also checks the carrier map and the transport of the largest bisimulation.
[[nodiscard]] VerificationReport verify_reduction(const ReductionResult& r, const VerifyOptions& options = {});

}  // namespace futs
