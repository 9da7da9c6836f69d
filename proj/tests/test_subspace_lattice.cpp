#include "helpers.hpp"
#include "oracles.hpp"

#include "projposet/error.hpp"
#include "projposet/subspace_lattice.hpp"

#include <gtest/gtest.h>

using namespace projposet;
using testing_helpers::mat;

namespace {

Subspace line(FieldPtr f, std::initializer_list<int> v)
{
    return Subspace::span(mat(std::move(f), {v}));
}

} // namespace

TEST(SubspaceLattice, SizesMatchBruteForceSubspaceCounts)
{
    // Frozen from oracle::subspace_counts.
    const std::vector<std::tuple<int, int, std::vector<std::size_t>>> cases = {
        {2, 2, {1, 3, 1}},         {3, 2, {1, 7, 7, 1}},       {2, 3, {1, 4, 1}},
        {3, 3, {1, 13, 13, 1}},    {4, 2, {1, 15, 35, 15, 1}}, {3, 5, {1, 31, 31, 1}},
    };
    for (const auto & [n, p, counts] : cases) {
        auto lat = Lattice::enumerate(Field::make(p, 1), n);
        for (std::size_t k = 0; k < counts.size(); ++k) {
            EXPECT_EQ(lat->of_dim(k).size(), counts[k]) << n << " " << p << " " << k;
            EXPECT_EQ(gaussian_binomial(n, k, p), counts[k]);
        }
    }
    EXPECT_EQ(oracle::subspace_counts(2, 3), (std::vector<std::size_t>{1, 4, 1}));
}

TEST(SubspaceLattice, SpecSizes)
{
    EXPECT_EQ(Lattice::enumerate(Field::make(2, 1), 1)->size(), 2u);
    EXPECT_EQ(Lattice::enumerate(Field::make(2, 1), 3)->size(), 16u);
    EXPECT_EQ(Lattice::enumerate(Field::make(2, 1), 4)->size(), 67u);
    // GF(4)^3: 1 + 21 + 21 + 1
    EXPECT_EQ(Lattice::enumerate(Field::make(2, 2), 3)->size(), 44u);
}

TEST(SubspaceLattice, MeetJoinExamples)
{
    auto f = Field::make(2, 1);
    auto e1 = line(f, {1, 0}), e2 = line(f, {0, 1});
    EXPECT_EQ(meet(e1, e1), e1);
    EXPECT_EQ(join(e1, e1), e1);
    EXPECT_EQ(meet(e1, e2), Subspace::zero(f, 2));
    EXPECT_EQ(join(e1, e2), Subspace::whole(f, 2));
    auto j = join(line(f, {1, 0, 0}), line(f, {0, 1, 0}));
    EXPECT_EQ(j.dim(), 2u);
    std::vector<Elem> sum{1, 1, 0};
    EXPECT_TRUE(j.contains(sum));
}

TEST(SubspaceLattice, AtomsCoatomsCovers)
{
    auto lat = Lattice::enumerate(Field::make(2, 1), 3);
    EXPECT_EQ(lat->atoms().size(), 7u);
    EXPECT_EQ(lat->coatoms().size(), 7u);
    for (auto a : lat->atoms())
        EXPECT_TRUE(lat->covers(lat->bottom(), a));
    for (auto c : lat->of_dim(2))
        EXPECT_FALSE(lat->covers(lat->bottom(), c));
}

TEST(SubspaceLattice, ModularPairs)
{
    auto lat = Lattice::enumerate(Field::make(2, 1), 3);
    for (std::size_t a = 0; a < lat->size(); ++a)
        for (std::size_t b = 0; b < lat->size(); ++b) {
            EXPECT_TRUE(lat->is_modular_pair(a, b));
            EXPECT_TRUE(lat->is_dual_modular_pair(a, b));
            EXPECT_EQ(lat->is_modular_pair(a, b), lat->is_modular_pair(b, a));
        }
    for (std::size_t b = 0; b < lat->size(); ++b)
        EXPECT_TRUE(lat->is_modular_pair(lat->bottom(), b));
}

TEST(SubspaceLattice, Complements)
{
    auto l2 = Lattice::enumerate(Field::make(2, 1), 2);
    EXPECT_EQ(l2->complements(l2->bottom()), std::vector<std::size_t>{l2->top()});
    EXPECT_EQ(l2->complements(l2->top()), std::vector<std::size_t>{l2->bottom()});
    EXPECT_EQ(l2->complements(l2->atoms()[0]).size(), 2u);
    auto l4 = Lattice::enumerate(Field::make(2, 1), 4);
    EXPECT_EQ(l4->complements(l4->atoms()[0]).size(), 8u);
    for (std::size_t a = 0; a < l4->size(); ++a) {
        std::size_t d = l4->dim(a);
        std::size_t expected = std::size_t{1} << (d * (4 - d));
        EXPECT_EQ(l4->complements(a).size(), expected);
    }
}

TEST(SubspaceLattice, GLatticeProperties)
{
    EXPECT_TRUE(check_g_lattice_properties(*Lattice::enumerate(Field::make(2, 1), 3)).passed());
    EXPECT_TRUE(check_g_lattice_properties(*Lattice::enumerate(Field::make(3, 1), 2)).passed());
    EXPECT_TRUE(check_g_lattice_properties(*Lattice::enumerate(Field::make(2, 1), 4)).passed());
    auto degenerate = check_g_lattice_properties(*Lattice::enumerate(Field::make(2, 1), 1));
    EXPECT_FALSE(degenerate.find("atom_has_several_complements")->passed);
    EXPECT_TRUE(Lattice::enumerate(Field::make(2, 1), 1)->degenerate());
}

TEST(SubspaceLattice, InvariantsHold)
{
    for (auto [n, spec] : std::vector<std::pair<int, const char *>>{{2, "2"}, {3, "2"}, {3, "3"}, {2, "4"}, {3, "4"}})
        EXPECT_TRUE(check_lattice_invariants(*Lattice::enumerate(Field::parse(spec), n)).passed()) << n << spec;
}

TEST(SubspaceLattice, IndexOrderAndLookup)
{
    auto lat = Lattice::enumerate(Field::make(3, 1), 3);
    EXPECT_EQ(lat->dim(lat->bottom()), 0u);
    EXPECT_EQ(lat->dim(lat->top()), 3u);
    for (std::size_t i = 0; i < lat->size(); ++i) {
        EXPECT_EQ(lat->index_of(lat->element(i)), i);
        if (i > 0) {
            EXPECT_TRUE(lat->element(i - 1) < lat->element(i));
        }
    }
    EXPECT_THROW(lat->index_of(Subspace::whole(Field::make(3, 1), 2)), InvalidArgument);
}

TEST(SubspaceLattice, LengthGate)
{
    EXPECT_THROW(require_length_at_least_four(*Lattice::enumerate(Field::make(2, 1), 3)), HypothesisNotMet);
    EXPECT_NO_THROW(require_length_at_least_four(*Lattice::enumerate(Field::make(2, 1), 4)));
}

TEST(SubspaceLattice, Annihilator)
{
    auto lat = Lattice::enumerate(Field::make(3, 1), 3);
    for (std::size_t i = 0; i < lat->size(); ++i) {
        auto a = annihilator(lat->element(i));
        EXPECT_EQ(a.dim() + lat->dim(i), 3u);
        EXPECT_EQ(annihilator(a), lat->element(i));
    }
}

TEST(SubspaceLattice, ExportsCoverRelation)
{
    auto lat = Lattice::enumerate(Field::make(2, 1), 2);
    auto j = lattice_to_json(*lat);
    EXPECT_EQ(j["elements"].size(), 5u);
    auto dot = lattice_to_dot(*lat);
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("n0 -> n1"), std::string::npos);
}
