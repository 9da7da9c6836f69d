#pragma once

#include "projposet/matrix.hpp"
#include "projposet/report.hpp"
#include "projposet/subspace_lattice.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace projposet {

/// (image, kernel), both as lattice indices.
struct ProjectionPair {
    std::size_t image = 0;
    std::size_t kernel = 0;

    friend bool operator==(const ProjectionPair &, const ProjectionPair &) = default;
};

/// P(L): all pairs (a, b) of L x L with a v b = 1, a ^ b = 0, (a,b)M and (a,b)M*,
/// ordered by (a,b) <= (c,d) iff a <= c and d <= b, with (a,b)^perp = (b,a).
///
/// Elements are indexed by increasing (image, kernel); index 0 is (0, 1) and the
/// last index is (1, 0).
class ProjectionPoset {
public:
    using Bitset = boost::dynamic_bitset<std::uint64_t>;

    static std::shared_ptr<const ProjectionPoset> build(LatticePtr lattice);

    const Lattice & lattice() const { return *lattice_; }
    const LatticePtr & lattice_ptr() const { return lattice_; }

    std::size_t size() const { return elements_.size(); }
    const ProjectionPair & pair(std::size_t i) const { return elements_[i]; }
    std::optional<std::size_t> index_of(std::size_t image, std::size_t kernel) const;
    std::optional<std::size_t> index_of(const ProjectionPair & p) const { return index_of(p.image, p.kernel); }

    std::size_t bottom() const { return 0; }
    std::size_t top() const { return elements_.size() - 1; }
    std::size_t ortho(std::size_t i) const { return ortho_[i]; }
    bool leq(std::size_t i, std::size_t j) const { return up_[i].test(j); }
    /// dim of the image; equals the height in P.
    std::size_t height(std::size_t i) const { return lattice_->dim(elements_[i].image); }

    const Bitset & up_set(std::size_t i) const { return up_[i]; }
    const Bitset & down_set(std::size_t i) const { return down_[i]; }

    /// Least upper bound of a set of elements, if it exists in P.
    std::optional<std::size_t> least_upper_bound(const Bitset & members) const;
    std::optional<std::size_t> greatest_lower_bound(const Bitset & members) const;
    std::optional<std::size_t> join(std::size_t i, std::size_t j) const;
    std::optional<std::size_t> meet(std::size_t i, std::size_t j) const;

    /// Elements covering (0,1): pairs (atom, complementary coatom).
    const std::vector<std::size_t> & atoms() const { return atoms_; }
    /// Elements grouped by image (resp. kernel), each group in index order.
    const std::vector<std::vector<std::size_t>> & image_classes() const { return image_classes_; }
    const std::vector<std::vector<std::size_t>> & kernel_classes() const { return kernel_classes_; }

    /// Complement pairs that failed the M/M* filter (none for a modular lattice).
    std::size_t rejected_complement_pairs() const { return rejected_; }

    Bitset empty_set() const { return Bitset(size()); }

private:
    ProjectionPoset() = default;

    LatticePtr lattice_;
    std::vector<ProjectionPair> elements_;
    std::unordered_map<std::size_t, std::size_t> index_;
    std::vector<std::size_t> ortho_;
    std::vector<Bitset> up_;
    std::vector<Bitset> down_;
    std::vector<std::size_t> atoms_;
    std::vector<std::vector<std::size_t>> image_classes_;
    std::vector<std::vector<std::size_t>> kernel_classes_;
    std::size_t rejected_ = 0;
};

using PosetPtr = std::shared_ptr<const ProjectionPoset>;

/// Partial order, bounds, order-reversing involution, p ^ p' = 0 and p v p' = 1,
/// existence of orthogonal joins, and the orthomodular law, all exhaustively.
CheckReport verify_omp_axioms(const ProjectionPoset & poset);

/// Every element is the join of the atoms below it.
Check check_atomistic(const ProjectionPoset & poset);

/// The unique idempotent with the given image and kernel (row convention: rows of
/// the image basis are fixed, rows of the kernel basis go to zero).
Matrix pair_to_idempotent(const Lattice & lattice, const ProjectionPair & p);
/// (row space, {v : v M = 0}). Throws InvalidArgument if M is not idempotent.
ProjectionPair idempotent_to_pair(const Lattice & lattice, const Matrix & m);

/// p <= q for idempotents: pq = qp = p.
bool idempotent_leq(const Matrix & p, const Matrix & q);

/// All idempotent n x n matrices by exhaustive scan of every matrix.
std::vector<Matrix> enumerate_idempotents(FieldPtr field, std::size_t n);

struct CorrespondenceResult {
    CheckReport report;
    std::size_t poset_size = 0;
    std::size_t idempotent_count = 0;
};

/// pair_to_idempotent is a bijection onto the idempotents, an order isomorphism
/// for pq = qp = p, and sends p^perp to 1 - p.
CorrespondenceResult verify_projection_correspondence(std::size_t n, FieldPtr field);
CorrespondenceResult verify_projection_correspondence(const ProjectionPoset & poset);

/// Elements as {image_index, kernel_index}, strict order pairs, ortho involution.
nlohmann::json poset_to_json(const ProjectionPoset & poset);
/// Hasse diagram of P(L).
std::string poset_to_dot(const ProjectionPoset & poset);

} // namespace projposet
