#include "helpers.hpp"

#include "projposet/error.hpp"
#include "projposet/lattice_frame.hpp"
#include "projposet/semilinear.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace projposet;
using testing_helpers::mat;

TEST(Semilinear, IdentityInducesIdentity)
{
    auto lat = Lattice::enumerate(Field::make(2, 1), 3);
    auto f = induced_lattice_map(SemilinearMap::identity(lat->field(), 3), *lat);
    EXPECT_EQ(f.perm, identity_permutation(lat->size()));
}

TEST(Semilinear, SwapOverGF2Squared)
{
    auto lat = Lattice::enumerate(Field::make(2, 1), 2);
    auto F = lat->field();
    SemilinearMap s(mat(F, {{0, 1}, {1, 0}}), {});
    auto f = induced_lattice_map(s, *lat);
    auto e1 = lat->index_of(Subspace::coordinate_line(F, 2, 0));
    auto e2 = lat->index_of(Subspace::coordinate_line(F, 2, 1));
    auto d = lat->index_of(Subspace::span(mat(F, {{1, 1}})));
    EXPECT_EQ(f.perm[e1], e2);
    EXPECT_EQ(f.perm[e2], e1);
    EXPECT_EQ(f.perm[d], d);
}

TEST(Semilinear, FrobeniusFixesExactlyTheSubspacesSpannedByGF2Vectors)
{
    auto lat = Lattice::enumerate(Field::make(2, 2), 3);
    auto F = lat->field();
    SemilinearMap frob(Matrix::identity(F, 3), {1});
    auto f = induced_lattice_map(frob, *lat);
    std::size_t fixed = 0;
    for (std::size_t i = 0; i < lat->size(); ++i) {
        // RREF bases are unique, so X has a GF(2) basis exactly when its RREF has
        // only 0/1 entries.
        bool binary = true;
        for (auto e : lat->element(i).basis().entries())
            binary = binary && e <= 1;
        EXPECT_EQ(f.perm[i] == i, binary) << i;
        fixed += f.perm[i] == i ? 1 : 0;
    }
    // The subspaces of GF(2)^3.
    EXPECT_EQ(fixed, 16u);
}

TEST(Semilinear, SingularRejected)
{
    auto F = Field::make(3, 1);
    EXPECT_THROW(SemilinearMap(mat(F, {{1, 1}, {1, 1}}), {}), SingularMatrix);
}

TEST(Semilinear, CompositionAndInverse)
{
    auto F = Field::make(2, 2);
    auto lat = Lattice::enumerate(F, 2);
    std::mt19937_64 rng(11);
    auto random_s = [&](unsigned twist) {
        for (;;) {
            Matrix m(F, 2, 2);
            for (std::size_t i = 0; i < 4; ++i)
                m(i / 2, i % 2) = static_cast<Elem>(rng() % 4);
            if (is_invertible(m))
                return SemilinearMap(m, {twist});
        }
    };
    for (int t = 0; t < 30; ++t) {
        auto a = random_s(t % 2), b = random_s((t / 2) % 2);
        auto ab = compose(a, b);
        std::vector<Elem> v{static_cast<Elem>(t % 4), static_cast<Elem>((t * 3 + 1) % 4)};
        EXPECT_EQ(ab.apply(v), a.apply(b.apply(v)));
        EXPECT_EQ(compose(a, a.inverse()).normalized(), SemilinearMap::identity(F, 2));
        EXPECT_EQ(induced_lattice_map(ab, *lat).perm,
                  compose(induced_lattice_map(a, *lat).perm, induced_lattice_map(b, *lat).perm));
    }
}

TEST(Semilinear, FrameAgreesWithSubspaceRoute)
{
    auto F = Field::make(3, 1);
    auto lat = Lattice::enumerate(F, 3);
    LatticeFrame frame(*lat);
    auto mats = normalized_invertible_matrices(F, 3);
    for (std::size_t i = 0; i < mats.size(); i += 97) {
        SemilinearMap s(mats[i], {});
        EXPECT_EQ(frame.induced(s), induced_lattice_map(s, *lat).perm);
        EXPECT_EQ(induced_permutation_via_atoms(s, *lat), frame.induced(s));
    }
}

TEST(BilinearForm, DualComplementExamples)
{
    auto F = Field::make(2, 1);
    auto form = BilinearForm::standard(F, 2);
    EXPECT_EQ(dual_complement(Subspace::zero(F, 2), form), Subspace::whole(F, 2));
    EXPECT_EQ(dual_complement(Subspace::whole(F, 2), form), Subspace::zero(F, 2));
    EXPECT_EQ(dual_complement(Subspace::coordinate_line(F, 2, 0), form), Subspace::coordinate_line(F, 2, 1));
}

TEST(BilinearForm, HermitianStyleFormOverGF4IsInvolutory)
{
    auto F = Field::make(2, 2);
    auto lat = Lattice::enumerate(F, 2);
    auto form = BilinearForm::standard(F, 2, {1});
    for (std::size_t i = 0; i < lat->size(); ++i)
        EXPECT_EQ(dual_complement(dual_complement(lat->element(i), form), form), lat->element(i));
    auto d = make_duality(form, *lat);
    EXPECT_TRUE(is_involutory(d));
    EXPECT_EQ(d.direction, Direction::anti_automorphism);
}

TEST(BilinearForm, StandardDualityIsInvolutoryAntiAutomorphism)
{
    auto lat = Lattice::enumerate(Field::make(2, 1), 3);
    auto d = make_duality(BilinearForm::standard(lat->field(), 3), *lat);
    EXPECT_TRUE(is_involutory(d));
    EXPECT_TRUE(is_lattice_anti_automorphism(*lat, d.perm));
    auto dd = compose(d, d);
    EXPECT_EQ(dd.direction, Direction::automorphism);
    EXPECT_TRUE(is_lattice_automorphism(*lat, dd.perm));
}

TEST(BilinearForm, DegenerateFormRejected)
{
    auto F = Field::make(2, 1);
    auto lat = Lattice::enumerate(F, 2);
    BilinearForm form{mat(F, {{1, 1}, {1, 1}}), {}};
    EXPECT_FALSE(form.non_degenerate());
    EXPECT_THROW(make_duality(form, *lat), InvalidArgument);
}
