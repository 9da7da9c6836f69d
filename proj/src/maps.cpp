#include "projposet/maps.hpp"

#include "projposet/error.hpp"

#include <numeric>

namespace projposet {

std::string to_string(Direction d)
{
    return d == Direction::automorphism ? "automorphism" : "anti-automorphism";
}

std::string to_string(Parity p)
{
    switch (p) {
    case Parity::even:
        return "even";
    case Parity::odd:
        return "odd";
    default:
        return "unknown";
    }
}

Permutation identity_permutation(std::size_t n)
{
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Permutation compose(const Permutation & outer, const Permutation & inner)
{
    if (outer.size() != inner.size())
        throw InvalidArgument("composing maps on different sets");
    Permutation r(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i)
        r[i] = outer[inner[i]];
    return r;
}

Permutation inverse(const Permutation & p)
{
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[p[i]] = static_cast<std::uint16_t>(i);
    return r;
}

bool is_bijection(const Permutation & p)
{
    std::vector<bool> seen(p.size(), false);
    for (auto x : p) {
        if (x >= p.size() || seen[x])
            return false;
        seen[x] = true;
    }
    return true;
}

Direction compose(Direction outer, Direction inner)
{
    return outer == inner ? Direction::automorphism : Direction::anti_automorphism;
}

Parity compose(Parity outer, Parity inner)
{
    if (outer == Parity::unknown || inner == Parity::unknown)
        return Parity::unknown;
    return outer == inner ? Parity::even : Parity::odd;
}

LatticeMap compose(const LatticeMap & outer, const LatticeMap & inner)
{
    return {compose(outer.perm, inner.perm), compose(outer.direction, inner.direction)};
}

LatticeMap inverse(const LatticeMap & f)
{
    return {inverse(f.perm), f.direction};
}

PosetMap compose(const PosetMap & outer, const PosetMap & inner)
{
    return {compose(outer.perm, inner.perm), compose(outer.parity, inner.parity)};
}

PosetMap inverse(const PosetMap & f)
{
    return {inverse(f.perm), f.parity};
}

} // namespace projposet
