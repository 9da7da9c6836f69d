#include "helpers.hpp"
#include "oracles.hpp"

#include "projposet/error.hpp"
#include "projposet/projection_poset.hpp"

#include <gtest/gtest.h>

using namespace projposet;
using testing_helpers::mat;

namespace {

PosetPtr poset(const char * field, std::size_t n)
{
    return ProjectionPoset::build(Lattice::enumerate(Field::parse(field), n));
}

} // namespace

TEST(ProjectionPoset, SizesMatchIdempotentOracle)
{
    // Frozen from oracle::idempotents; 802 = 2 + 15*8 + 35*16 + 15*8.
    EXPECT_EQ(poset("2", 2)->size(), 8u);
    EXPECT_EQ(poset("2", 3)->size(), 58u);
    EXPECT_EQ(poset("3", 2)->size(), 14u);
    EXPECT_EQ(poset("3", 3)->size(), 236u);
    EXPECT_EQ(poset("2", 4)->size(), 802u);
}

TEST(ProjectionPoset, BoundsInvolutionAndIncomparableOrthocomplements)
{
    auto p = poset("2", 2);
    for (std::size_t i = 0; i < p->size(); ++i) {
        EXPECT_TRUE(p->leq(p->bottom(), i));
        EXPECT_TRUE(p->leq(i, p->top()));
        EXPECT_EQ(p->ortho(p->ortho(i)), i);
    }
    const auto & lat = p->lattice();
    auto f = lat.field();
    auto e1 = lat.index_of(Subspace::coordinate_line(f, 2, 0));
    auto e2 = lat.index_of(Subspace::coordinate_line(f, 2, 1));
    auto a = *p->index_of(e1, e2);
    auto b = *p->index_of(e2, e1);
    EXPECT_EQ(p->ortho(a), b);
    EXPECT_FALSE(p->leq(a, b));
    EXPECT_FALSE(p->leq(b, a));
    EXPECT_EQ(p->pair(p->bottom()), (ProjectionPair{lat.bottom(), lat.top()}));
    EXPECT_EQ(p->rejected_complement_pairs(), 0u);
}

TEST(ProjectionPoset, OmpAxioms)
{
    for (auto [f, n] : std::vector<std::pair<const char *, int>>{{"2", 2}, {"2", 3}, {"3", 2}, {"3", 3}, {"4", 2}}) {
        auto p = poset(f, n);
        EXPECT_TRUE(verify_omp_axioms(*p).passed()) << f << " " << n;
        EXPECT_TRUE(check_atomistic(*p).passed);
    }
}

TEST(ProjectionPoset, OrderAgreesWithIdempotentOracle)
{
    // The poset on 3x3 idempotents over GF(2), built independently, has the same
    // number of comparable pairs and of atoms.
    auto o = oracle::idempotent_poset(3, 2);
    std::size_t oracle_pairs = 0;
    for (const auto & row : o.leq)
        for (bool b : row)
            oracle_pairs += b ? 1 : 0;
    auto p = poset("2", 3);
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < p->size(); ++i)
        pairs += p->up_set(i).count();
    EXPECT_EQ(pairs, oracle_pairs);
    EXPECT_EQ(p->atoms().size(), 28u);
}

TEST(ProjectionPoset, PairIdempotentExamples)
{
    auto p = poset("2", 2);
    const auto & lat = p->lattice();
    auto f = lat.field();
    EXPECT_EQ(pair_to_idempotent(lat, {lat.top(), lat.bottom()}), Matrix::identity(f, 2));
    EXPECT_EQ(pair_to_idempotent(lat, {lat.bottom(), lat.top()}), Matrix::zero(f, 2, 2));
    auto e1 = lat.index_of(Subspace::coordinate_line(f, 2, 0));
    auto e2 = lat.index_of(Subspace::coordinate_line(f, 2, 1));
    EXPECT_EQ(pair_to_idempotent(lat, {e1, e2}), mat(f, {{1, 0}, {0, 0}}));
    EXPECT_EQ(idempotent_to_pair(lat, mat(f, {{1, 0}, {0, 0}})), (ProjectionPair{e1, e2}));
    EXPECT_EQ(idempotent_to_pair(lat, Matrix::identity(f, 2)), (ProjectionPair{lat.top(), lat.bottom()}));
    EXPECT_THROW(idempotent_to_pair(lat, mat(f, {{1, 1}, {0, 1}})), InvalidArgument);
}

TEST(ProjectionPoset, RoundTripOverAllIdempotents)
{
    auto p = poset("2", 3);
    const auto & lat = p->lattice();
    auto idem = enumerate_idempotents(lat.field(), 3);
    ASSERT_EQ(idem.size(), 58u);
    for (const auto & m : idem)
        EXPECT_EQ(pair_to_idempotent(lat, idempotent_to_pair(lat, m)), m);
}

TEST(ProjectionPoset, Correspondence)
{
    for (auto [f, n] : std::vector<std::pair<const char *, int>>{{"2", 2}, {"2", 3}, {"3", 2}, {"3", 3}}) {
        auto r = verify_projection_correspondence(n, Field::parse(f));
        EXPECT_TRUE(r.report.passed()) << f << " " << n;
        EXPECT_EQ(r.poset_size, r.idempotent_count);
    }
}

TEST(ProjectionPoset, JoinsOfOrthogonalElementsExist)
{
    auto p = poset("3", 2);
    for (std::size_t i = 0; i < p->size(); ++i)
        for (std::size_t j = 0; j < p->size(); ++j)
            if (p->leq(i, p->ortho(j))) {
                EXPECT_TRUE(p->join(i, j).has_value());
            }
}

TEST(ProjectionPoset, Exports)
{
    auto p = poset("2", 2);
    auto j = poset_to_json(*p);
    EXPECT_EQ(j["elements"].size(), 8u);
    EXPECT_NE(poset_to_dot(*p).find("digraph"), std::string::npos);
}
