#pragma once

#include "projposet/matrix.hpp"
#include "projposet/report.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

namespace projposet {

/// A subspace of GF(q)^n, held as the RREF of a basis with no zero rows. Equal
/// subspaces have identical representations.
class Subspace {
public:
    /// Row space of `rows` (any shape with n columns).
    static Subspace span(const Matrix & rows);
    static Subspace zero(FieldPtr field, std::size_t n);
    static Subspace whole(FieldPtr field, std::size_t n);
    /// span{e_i}
    static Subspace coordinate_line(FieldPtr field, std::size_t n, std::size_t i);

    std::size_t dim() const { return basis_.rows(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    const FieldPtr & field() const { return basis_.field(); }
    const Matrix & basis() const { return basis_; }

    bool contains(std::span<const Elem> v) const;

    friend bool operator==(const Subspace & a, const Subspace & b) { return a.basis_ == b.basis_; }
    /// Dimension first, then canonical basis entries.
    friend bool operator<(const Subspace & a, const Subspace & b);

private:
    explicit Subspace(Matrix basis) : basis_(std::move(basis)) { }
    Matrix basis_;
};

struct SubspaceHash {
    std::size_t operator()(const Subspace & s) const;
};

/// Intersection, via the kernel of the stacked annihilator constraints.
Subspace meet(const Subspace & a, const Subspace & b);
/// Sum, via the row space of the stacked bases.
Subspace join(const Subspace & a, const Subspace & b);
bool leq(const Subspace & a, const Subspace & b);
/// {y : x . y = 0 for all x in a} under the standard dot product.
Subspace annihilator(const Subspace & a);

/// Gaussian binomial [n choose k]_q.
std::uint64_t gaussian_binomial(std::size_t n, std::size_t k, std::uint64_t q);

/// The lattice of all subspaces of GF(q)^n with elements indexed 0..size-1 in the
/// order (dimension, canonical basis). Index 0 is the zero subspace and the last
/// index the whole space. Immutable once built; meet/join/order are tabulated.
class Lattice {
public:
    using Index = std::uint16_t;

    /// Largest lattice the tables are built for.
    static constexpr std::size_t max_elements = 4096;

    /// n >= 1. Throws InvalidArgument when the ambient is too large for exhaustive work.
    static std::shared_ptr<const Lattice> enumerate(FieldPtr field, std::size_t n);

    const FieldPtr & field() const { return field_; }
    std::size_t n() const { return n_; }
    std::size_t size() const { return elements_.size(); }
    /// Length of the lattice (= n).
    std::size_t length() const { return n_; }

    const Subspace & element(std::size_t i) const { return elements_[i]; }
    std::size_t dim(std::size_t i) const { return elements_[i].dim(); }
    /// Throws InvalidArgument if the subspace is not in this lattice's ambient.
    std::size_t index_of(const Subspace & s) const;

    std::size_t bottom() const { return 0; }
    std::size_t top() const { return elements_.size() - 1; }

    std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
    std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
    bool leq(std::size_t a, std::size_t b) const { return join(a, b) == b; }
    bool covers(std::size_t a, std::size_t b) const { return leq(a, b) && dim(b) == dim(a) + 1; }

    const std::vector<std::size_t> & atoms() const { return by_dim_[1]; }
    const std::vector<std::size_t> & coatoms() const { return by_dim_[n_ - 1]; }
    const std::vector<std::size_t> & of_dim(std::size_t k) const { return by_dim_[k]; }

    /// The interval [0, b].
    const std::vector<std::size_t> & down_set(std::size_t b) const { return down_[b]; }
    /// The interval [b, 1].
    const std::vector<std::size_t> & up_set(std::size_t b) const { return up_[b]; }

    /// (a,b)M: (x v a) ^ b = x v (a ^ b) for every x <= b.
    bool is_modular_pair(std::size_t a, std::size_t b) const;
    /// (a,b)M*: (x ^ a) v b = x ^ (a v b) for every x >= b.
    bool is_dual_modular_pair(std::size_t a, std::size_t b) const;

    /// Every b with a ^ b = 0 and a v b = 1, increasing index order.
    std::vector<std::size_t> complements(std::size_t a) const;

    /// A lattice of length < 2 is constructible but degenerate.
    bool degenerate() const { return n_ < 2; }

private:
    Lattice() = default;

    FieldPtr field_;
    std::size_t n_ = 0;
    std::vector<Subspace> elements_;
    std::unordered_map<Subspace, std::size_t, SubspaceHash> index_;
    std::vector<Index> meet_;
    std::vector<Index> join_;
    std::vector<std::vector<std::size_t>> by_dim_;
    std::vector<std::vector<std::size_t>> down_;
    std::vector<std::vector<std::size_t>> up_;
};

using LatticePtr = std::shared_ptr<const Lattice>;

/// Throws HypothesisNotMet on length < 4.
void require_length_at_least_four(const Lattice & lattice);

/// The three atom/complement properties shared by irreducible complemented
/// modular lattices of length >= 4:
///  - every atom has more than one complement;
///  - a covered by b implies two different atoms p1, p2 with a v p1 = a v p2 = b;
///  - two different atoms have a common complement.
CheckReport check_g_lattice_properties(const Lattice & lattice);

/// Modularity of every pair, covering property in L and L*, and the dimension law.
CheckReport check_lattice_invariants(const Lattice & lattice);

/// JSON export: elements (index, dim, basis) and the cover relation.
nlohmann::json lattice_to_json(const Lattice & lattice);
/// Hasse diagram, nodes labelled "index:dim".
std::string lattice_to_dot(const Lattice & lattice);

} // namespace projposet
