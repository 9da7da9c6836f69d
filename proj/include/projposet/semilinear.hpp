#pragma once

#include "projposet/maps.hpp"
#include "projposet/matrix.hpp"
#include "projposet/subspace_lattice.hpp"

#include <span>
#include <vector>

namespace projposet {

/// A bijective semilinear map s(v) = twist(v) * M on row vectors. Two pairs that
/// differ by a nonzero scalar on M induce the same lattice map; normalized() picks
/// the representative whose first nonzero entry (first row) is 1.
class SemilinearMap {
public:
    /// Throws SingularMatrix if M is not invertible.
    SemilinearMap(Matrix m, FieldAutomorphism twist);

    static SemilinearMap identity(FieldPtr field, std::size_t n);

    const Matrix & matrix() const { return m_; }
    FieldAutomorphism twist() const { return twist_; }
    const FieldPtr & field() const { return m_.field(); }
    std::size_t n() const { return m_.rows(); }

    std::vector<Elem> apply(std::span<const Elem> v) const;
    /// Row space of twist(rows) * M.
    Matrix apply_rows(const Matrix & rows) const;
    Subspace apply(const Subspace & s) const;

    SemilinearMap inverse() const;
    SemilinearMap normalized() const;

    friend bool operator==(const SemilinearMap & a, const SemilinearMap & b)
    {
        return a.twist_ == b.twist_ && a.m_ == b.m_;
    }

private:
    Matrix m_;
    FieldAutomorphism twist_;
};

/// (outer o inner)(v) = outer(inner(v)), i.e. (outer.twist(inner.M) * outer.M, outer.twist * inner.twist).
SemilinearMap compose(const SemilinearMap & outer, const SemilinearMap & inner);

/// The lattice map X -> s(X), computed subspace by subspace and checked to be an
/// order automorphism. Throws Falsification if the check fails.
LatticeMap induced_lattice_map(const SemilinearMap & s, const Lattice & lattice);

/// Fast path through the atoms only; the result is not verified. Intended for bulk
/// enumeration where the caller verifies separately.
Permutation induced_permutation_via_atoms(const SemilinearMap & s, const Lattice & lattice);

/// <x, y> = x * G * twist(y)^T. Nondegenerate when G is invertible.
struct BilinearForm {
    Matrix gram;
    FieldAutomorphism twist;

    /// Identity Gram matrix with the given twist.
    static BilinearForm standard(FieldPtr field, std::size_t n, FieldAutomorphism twist = {});

    Elem pair(std::span<const Elem> x, std::span<const Elem> y) const;
    bool non_degenerate() const { return is_invertible(gram); }
};

/// X^perp = {x : <x, y> = 0 for all y in X}.
Subspace dual_complement(const Subspace & x, const BilinearForm & form);

/// X -> X^perp as a lattice map, verified to be an anti-automorphism. Throws
/// InvalidArgument on a degenerate form.
LatticeMap make_duality(const BilinearForm & form, const Lattice & lattice);

/// f(f(x)) = x for every x.
bool is_involutory(const LatticeMap & f);

/// Exhaustive order checks. An automorphism preserves the order both ways; an
/// anti-automorphism reverses it both ways.
bool is_lattice_automorphism(const Lattice & lattice, const Permutation & f);
bool is_lattice_anti_automorphism(const Lattice & lattice, const Permutation & f);
bool is_lattice_map_of_kind(const Lattice & lattice, const LatticeMap & f);

} // namespace projposet
