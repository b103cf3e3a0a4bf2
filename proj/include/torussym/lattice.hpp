#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "torussym/moments.hpp"
#include "torussym/multi_index.hpp"
#include "torussym/torus_action.hpp"

namespace torussym {

/// Confirmed-nonzero multi-index differences with witnesses. Differences are
/// stored once, sign-canonically (Hermitian symmetry pairs them up); the
/// zero difference never appears.
struct DifferenceSet {
    int n = 0;
    std::map<DifferenceVector, std::vector<std::pair<MultiIndex, MultiIndex>>> provenance;
    int inconclusive_count = 0;
    std::vector<std::pair<MultiIndex, MultiIndex>> inconclusive_pairs;  // capped at 32

    std::vector<DifferenceVector> diffs() const {
        std::vector<DifferenceVector> out;
        out.reserve(provenance.size());
        for (const auto& [d, w] : provenance) out.push_back(d);
        return out;
    }
};

/// Extracts {alpha - beta : entry decided nonzero, alpha != beta}.
DifferenceSet difference_set(const GramData& gram, const DecisionPolicy& policy);

/// Primitive basis of {m in Z^n : m . d = 0 for all d}, by exact
/// arbitrary-precision column elimination. The kernel of an integer matrix
/// is saturated, so the returned action is always a primitive basis;
/// rank = n - rank(diffs).
TorusAction integer_kernel(const std::vector<DifferenceVector>& diffs, int n);
TorusAction integer_kernel(const DifferenceSet& diffs);

/// True iff v is an integer combination of the columns of A (exact HNF solve).
bool lattice_membership(const TorusAction& A, const std::vector<std::int64_t>& v);

/// Lattice(B) subseteq Lattice(A).
bool lattice_contains(const TorusAction& A, const TorusAction& B);
bool lattice_equal(const TorusAction& A, const TorusAction& B);

struct SymmetryClassification {
    bool is_reinhardt = false;
    bool is_circular = false;
    std::vector<int> hartogs_coords;  // 1-based
    std::optional<std::vector<std::int64_t>> quasi_circular_weights;
    TorusAction detected_action;
    std::vector<std::string> caveats;
};

/// Reads the domain-class labels off the detected lattice: Reinhardt iff the
/// lattice is all of Z^n, circular iff it contains (1,...,1), Hartogs in j
/// iff it contains e_j, quasi-circular weights from a bounded search for a
/// strictly positive primitive lattice vector.
SymmetryClassification classify(const TorusAction& A);

nlohmann::ordered_json torus_action_to_json(const TorusAction& A);
TorusAction torus_action_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json classification_to_json(const SymmetryClassification& c);

}  // namespace torussym
