#pragma once

#include "projposet/maps.hpp"
#include "projposet/projection_poset.hpp"
#include "projposet/report.hpp"
#include "projposet/search_control.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace projposet {

/// (a, b) -> (f(a), f(b)). Throws InvalidArgument on a direction mismatch and
/// Falsification if some image pair is missing from P or, with verify, if the
/// result is not an automorphism commuting with the orthocomplement.
PosetMap even_from_lattice_automorphism(const LatticeMap & f, const ProjectionPoset & poset, bool verify = true);
/// (a, b) -> (g(b), g(a)).
PosetMap odd_from_anti_automorphism(const LatticeMap & g, const ProjectionPoset & poset, bool verify = true);

/// Order preserved both ways and, with require_ortho, phi(p^perp) = phi(p)^perp.
bool is_poset_automorphism(const ProjectionPoset & poset, const Permutation & phi, bool require_ortho = true);

struct ParityVerdict {
    Parity parity = Parity::unknown;
    /// Every image-sharing pair agreed with the verdict.
    bool consistent = false;
    std::uint64_t pairs_checked = 0;
    /// First disagreeing pair, if any.
    nlohmann::json witness;
};

/// Reads the parity off one image-sharing pair and re-checks it on every
/// image-sharing pair. Throws HypothesisNotMet when P has no such pair (n < 2).
ParityVerdict check_parity(const Permutation & phi, const ProjectionPoset & poset);
/// As check_parity, but throws Falsification on an inconsistent verdict.
Parity classify_parity(const PosetMap & phi, const ProjectionPoset & poset);

/// The lattice map behind phi read off image (even) or kernel (odd) components,
/// checked single-valued, total, of the right kind, and reproducing phi exactly.
/// Throws Falsification otherwise. Does not check the length of L.
LatticeMap recover_lattice_map(const Permutation & phi, Parity parity, const ProjectionPoset & poset);

/// classify_parity followed by recover_lattice_map. Throws HypothesisNotMet when
/// L has length < 4.
LatticeMap decompose_poset_automorphism(const PosetMap & phi, const ProjectionPoset & poset);

struct PosetSearchOptions {
    SearchLimits limits;
    /// Restrict to maps commuting with the orthocomplement.
    bool require_ortho = true;
    /// JSON Lines file; completed top-level branches are appended and skipped on resume.
    std::string checkpoint;
};

struct PosetSearchResult {
    /// Sorted by permutation; parity left unknown.
    std::vector<PosetMap> maps;
    std::uint64_t nodes = 0;
    std::size_t branches = 0;
    std::size_t branches_resumed = 0;
};

/// Every order automorphism of P (commuting with the orthocomplement if asked),
/// by backtracking on the images of the atoms of P. Candidates are pruned by a
/// pairwise signature (orthogonality, common upper bounds per height, existence of
/// the join); complete assignments are extended through atom sets, which is exact
/// because P is checked atomistic up front. At most 256 atoms.
/// Throws BudgetExceeded when the node budget runs out; finished branches stay in
/// the checkpoint.
PosetSearchResult enumerate_poset_automorphisms(const ProjectionPoset & poset, const PosetSearchOptions & options = {});

struct SemidirectOptions {
    std::uint64_t seed = 1;
    /// Pairs checked for closure when the even group is too large for all pairs.
    std::size_t closure_samples = 2000;
    /// Twist of the standard form defining the duality; must be involutory.
    FieldAutomorphism twist{};
};

/// With gamma the odd map of the duality from the standard form: even maps form a
/// subgroup, gamma normalizes it, every odd map is e o gamma for exactly one even e,
/// and gamma^2 = 1. Odd maps come from the separately enumerated anti-automorphisms.
CheckReport verify_semidirect_structure(const ProjectionPoset & poset, const SemidirectOptions & options = {});

struct MainTheoremOptions {
    PosetSearchOptions search;
    std::uint64_t seed = 1;
    /// Constructed maps fully re-verified as P-automorphisms.
    std::size_t samples = 200;
};

struct MainTheoremResult {
    CheckReport report;
    std::size_t poset_size = 0;
    std::size_t lattice_automorphisms = 0;
    std::size_t enumerated = 0;
    std::size_t even = 0;
    std::size_t odd = 0;
    std::uint64_t nodes = 0;
};

/// Compares the brute-force automorphism group of P with the maps built from
/// Aut(L) and one duality, decomposing every enumerated map. Throws HypothesisNotMet
/// for length < 4.
MainTheoremResult verify_main_theorem(const ProjectionPoset & poset, const MainTheoremOptions & options = {});

/// {kind: "poset", parity, permutation}
nlohmann::json poset_map_to_json(const PosetMap & phi);
PosetMap poset_map_from_json(const nlohmann::json & j);

struct PermutationHash {
    std::size_t operator()(const Permutation & p) const;
};

} // namespace projposet
