#pragma once

#include "futs/partition.hpp"
#include "futs/system.hpp"
#include "futs/weight_term.hpp"

namespace futs {

/// t R^T t' : the two terms have equal images under the quotient map of R.
[[nodiscard]] bool ext_related(const Partition& p, const WeightTerm& t, const WeightTerm& u);

/// Every pair related by `p` has R^T-related transitions for every component and label.
[[nodiscard]] bool is_bisimulation(const Futs& s, const Partition& p);

/// The coarsest bisimulation, by signature refinement from the one-block partition.
[[nodiscard]] Partition largest_bisimulation(const Futs& s);

/// The system on block ids whose transitions are the quotiented transitions of
/// each block's least member. Throws PreconditionError unless `p` is a bisimulation.
[[nodiscard]] Futs quotient_system(const Futs& s, const Partition& p);

/// `p` is the kernel of a homomorphism: building the candidate quotient from
/// block representatives and checking the quotient map is a homomorphism into it.
[[nodiscard]] bool is_kernel_bisimulation(const Futs& s, const Partition& p);

/// Brute force: the join of all equivalences on the carrier passing is_bisimulation.
/// Exponential; meant as an oracle for carriers of a handful of states.
[[nodiscard]] Partition largest_bisimulation_by_enumeration(const Futs& s);

}  // namespace futs
