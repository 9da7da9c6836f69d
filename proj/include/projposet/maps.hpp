#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace projposet {

/// A map on indexed elements, stored as the image of each index.
using Permutation = std::vector<std::uint16_t>;

enum class Direction { automorphism, anti_automorphism };
enum class Parity { even, odd, unknown };

std::string to_string(Direction d);
std::string to_string(Parity p);

Permutation identity_permutation(std::size_t n);
/// (outer o inner)[i] = outer[inner[i]]
Permutation compose(const Permutation & outer, const Permutation & inner);
Permutation inverse(const Permutation & p);
bool is_bijection(const Permutation & p);

/// A total map on the indexed lattice L.
struct LatticeMap {
    Permutation perm;
    Direction direction = Direction::automorphism;

    friend bool operator==(const LatticeMap &, const LatticeMap &) = default;
};

/// A total map on the indexed projection poset P(L).
struct PosetMap {
    Permutation perm;
    Parity parity = Parity::unknown;

    friend bool operator==(const PosetMap &, const PosetMap &) = default;
};

Direction compose(Direction outer, Direction inner);
Parity compose(Parity outer, Parity inner);

LatticeMap compose(const LatticeMap & outer, const LatticeMap & inner);
LatticeMap inverse(const LatticeMap & f);
PosetMap compose(const PosetMap & outer, const PosetMap & inner);
PosetMap inverse(const PosetMap & f);

} // namespace projposet
