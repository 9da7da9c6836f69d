#pragma once

#include "projposet/lattice_frame.hpp"
#include "projposet/maps.hpp"
#include "projposet/search_control.hpp"
#include "projposet/semilinear.hpp"
#include "projposet/subspace_lattice.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace projposet {

struct LatticeSearchResult {
    /// Sorted by permutation.
    std::vector<LatticeMap> maps;
    std::uint64_t nodes = 0;
};

/// Every order automorphism of L, by backtracking on atom images. Three atoms under
/// a common 2-dimensional element must go to three such atoms and vice versa; the
/// number of lines through an atom prunes the initial candidates. Each complete
/// atom assignment is extended through atom sets and checked on the whole order.
/// At most 64 atoms. Throws BudgetExceeded when limits.node_budget runs out.
LatticeSearchResult enumerate_lattice_automorphisms(const Lattice & lattice, const SearchLimits & limits = {});

/// Same search into the order dual: atoms go to coatoms and lines to
/// (n-2)-dimensional elements.
LatticeSearchResult enumerate_lattice_anti_automorphisms(const Lattice & lattice, const SearchLimits & limits = {});

struct SemilinearGeneration {
    /// Distinct induced maps, sorted by permutation.
    std::vector<LatticeMap> maps;
    /// (normalized matrix, twist) pairs tried.
    std::size_t pairs = 0;
    /// Pairs whose induced map failed the order check (expected 0).
    std::size_t failures = 0;
};

/// Aut(L) by the other route: every normalized invertible matrix with every field
/// automorphism, pushed through the lattice.
SemilinearGeneration semilinear_lattice_automorphisms(const Lattice & lattice);

/// A semilinear s with induced map f, built from the images of the coordinate lines
/// and the unit point. With no twist given, the twist is read off the image of
/// span{e1 + g e2} for a primitive g; with a twist given only that twist is tried.
/// The answer is checked on every element. Needs n >= 2.
std::optional<SemilinearMap> match_semilinear_with_twist(const LatticeMap & f, const Lattice & lattice,
                                                         std::optional<FieldAutomorphism> twist,
                                                         const LatticeFrame * frame = nullptr);

/// Throws HypothesisNotMet for n < 3 and Falsification if no witness exists.
SemilinearMap match_semilinear(const LatticeMap & f, const Lattice & lattice, const LatticeFrame * frame = nullptr);

nlohmann::json semilinear_to_json(const SemilinearMap & s);
SemilinearMap semilinear_from_json(const nlohmann::json & j);

/// {kind: "lattice", direction, permutation, witness?}
nlohmann::json lattice_map_to_json(const LatticeMap & f, const SemilinearMap * witness = nullptr);
LatticeMap lattice_map_from_json(const nlohmann::json & j);

} // namespace projposet
