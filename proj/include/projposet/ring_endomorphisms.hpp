#pragma once

#include "projposet/maps.hpp"
#include "projposet/matrix.hpp"
#include "projposet/poset_automorphisms.hpp"
#include "projposet/projection_poset.hpp"
#include "projposet/report.hpp"
#include "projposet/semilinear.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <random>
#include <string>

namespace projposet {

/// A map on the ring of n x n matrices over GF(q), with T acting on row vectors
/// as v -> v T. A RingMap built from a semilinear s keeps s as its witness; one
/// built from a table or a bare function carries no witness and is opaque.
class RingMap {
public:
    using Fn = std::function<Matrix(const Matrix &)>;

    /// T -> s T s^-1, i.e. the matrix M^-1 twist(T) M for s = (M, twist).
    static RingMap conjugation(const SemilinearMap & s);
    /// T -> s T^t s^-1, i.e. M^-1 twist(T^t) M.
    static RingMap anti_conjugation(const SemilinearMap & s);
    static RingMap transpose(FieldPtr field, std::size_t n);
    static RingMap identity(FieldPtr field, std::size_t n);

    /// Opaque map; `direction` is a claim to be verified, not assumed.
    static RingMap from_function(FieldPtr field, std::size_t n, Direction direction, Fn fn);
    /// Full table indexed by matrix_code. Only for q^(n*n) <= max_table_size.
    static RingMap tabulate(const RingMap & map);
    static constexpr std::uint64_t max_table_size = 1 << 16;

    Matrix operator()(const Matrix & t) const;

    const FieldPtr & field() const { return field_; }
    std::size_t n() const { return n_; }
    Direction direction() const { return direction_; }
    const std::optional<SemilinearMap> & witness() const { return witness_; }
    bool extensional() const { return table_ != nullptr; }

private:
    RingMap(FieldPtr field, std::size_t n, Direction direction, Fn fn) :
        field_(std::move(field)), n_(n), direction_(direction), fn_(std::move(fn))
    {
    }

    FieldPtr field_;
    std::size_t n_;
    Direction direction_;
    Fn fn_;
    std::optional<SemilinearMap> witness_;
    std::shared_ptr<const std::vector<std::uint64_t>> table_;
};

/// (outer o inner)(T) = outer(inner(T)); keeps a witness when both have one.
RingMap compose(const RingMap & outer, const RingMap & inner);

Matrix random_matrix(FieldPtr field, std::size_t n, std::mt19937_64 & rng);
Matrix random_invertible_matrix(FieldPtr field, std::size_t n, std::mt19937_64 & rng);

/// The matrix units E_ij, every scalar matrix, and every product E_ij E_kl.
std::vector<Matrix> ring_generators(FieldPtr field, std::size_t n);

struct RingVerifyOptions {
    std::uint64_t seed = 1;
    std::size_t random_samples = 100;
};

/// Additive, unital, multiplicative (or multiplication-reversing for the
/// anti direction) and bijective. Pairs are exhaustive when q^(n*n) <= 81 and single
/// elements when q^(n*n) <= 4096; otherwise checks run on
/// the generators, all generator pairs, and random samples. Bijectivity without a
/// table is checked through the images of the E_ij being linearly independent.
CheckReport verify_ring_map(const RingMap & phi, const RingVerifyOptions & options = {});

/// {direction, S?: {matrix, twist}, verified_on: {generators, digest}}
nlohmann::json ring_map_to_json(const RingMap & phi);

struct ExtractionOptions {
    /// x0 = x0_scale * e1 spans the image of the rank-1 idempotent p = E_11.
    Elem x0_scale = 1;
    /// y0 = (y0_scale) * (first RREF basis row of Im Phi(p)).
    Elem y0_scale = 1;
    RingVerifyOptions verify;
};

struct ExtractionResult {
    /// Normalized: first nonzero entry of the first row is 1.
    SemilinearMap s;
    FieldAutomorphism sigma;
    CheckReport report;
};

/// Builds S(x) = y0 Phi(U_x) where U_x sends x0 to x and kills span{e2..en}, reads
/// sigma off Phi on scalar matrices, then checks additivity, sigma-semilinearity,
/// bijectivity and Phi(T) = S T S^-1. Throws InvalidArgument for an
/// anti-automorphism, and Falsification if Phi fails verification, the center is
/// not mapped by a field automorphism, or S is singular.
ExtractionResult extract_semilinear_from_ring_iso(const RingMap & phi, const ExtractionOptions & options = {});

/// Im P = Im Q iff QP = Q and PQ = P; Ker P = Ker Q iff QP = P and PQ = Q, over all
/// ordered pairs of idempotents (row convention: P then Q is the product PQ).
struct ImKerResult {
    CheckReport report;
    std::size_t idempotents = 0;
    std::uint64_t pairs = 0;
};
ImKerResult check_im_ker_lemma(std::size_t n, FieldPtr field);

/// The center of the matrix ring is the scalar matrices: by exhaustion when
/// q^(n*n) <= 6561, and always by solving T E_ij = E_ij T as a linear system.
CheckReport check_center(FieldPtr field, std::size_t n);

/// p -> Phi(p) on idempotents, read back as an index permutation of P. Verified to
/// be an automorphism of P with Phi(1 - p) = 1 - Phi(p); parity from classify_parity.
/// Throws Falsification when Phi(p) is not idempotent or the checks fail.
PosetMap restrict_to_projections(const RingMap & phi, const ProjectionPoset & poset);

/// Conjugation by the semilinear map behind an even phi. The lattice automorphism is
/// recovered by decompose_poset_automorphism (length >= 4) or, for shorter lattices,
/// must be supplied. Verifies restrict_to_projections(result) = phi.
RingMap extend_even_to_ring_automorphism(const PosetMap & phi, const ProjectionPoset & poset,
                                         const std::optional<LatticeMap> & f = std::nullopt);

struct OddExtensionOutcome {
    bool found = false;
    std::optional<SemilinearMap> witness;
    /// g recovered from the kernel components of psi.
    LatticeMap g;
    CheckReport report;
};

/// EXPERIMENT. Looks for S with T -> S T^t S^-1 restricting to the odd map psi:
/// recovers g, composes with the standard annihilator duality d (the restriction
/// of the transpose) to get the automorphism f = g o d, matches f to S and checks
/// the restriction. A finite outcome says nothing about infinite dimensions.
OddExtensionOutcome experiment_odd_extension(const PosetMap & psi, const ProjectionPoset & poset);

} // namespace projposet
