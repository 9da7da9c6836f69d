#pragma once

#include "projposet/maps.hpp"
#include "projposet/semilinear.hpp"
#include "projposet/subspace_lattice.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace projposet {

/// Lookup tables for pushing vectors through semilinear maps in bulk: atom index
/// of any nonzero vector, and for every element the atoms spanned by its basis rows.
class LatticeFrame {
public:
    explicit LatticeFrame(const Lattice & lattice);

    /// Lattice index of span{v}; v must be nonzero.
    std::size_t atom_of(std::span<const Elem> v) const;

    /// X -> s(X) via atom images and joins. Not verified.
    Permutation induced(const SemilinearMap & s) const;

private:
    std::uint32_t code_of(std::span<const Elem> v) const;

    const Lattice * lattice_;
    std::vector<std::uint16_t> atom_by_code_;
    std::vector<std::vector<std::uint16_t>> basis_atoms_;
};

} // namespace projposet
