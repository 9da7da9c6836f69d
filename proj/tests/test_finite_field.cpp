#include "projposet/error.hpp"
#include "projposet/finite_field.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace projposet;

TEST(FiniteField, PrimeFieldGF2)
{
    auto f = Field::make(2, 1);
    EXPECT_EQ(f->order(), 2u);
    EXPECT_EQ(f->add(1, 1), 0);
    EXPECT_EQ(f->mul(1, 1), 1);
    EXPECT_EQ(f->name(), "2^1");
}

TEST(FiniteField, GF4ModulusAndFrobeniusFixedPoints)
{
    auto f = Field::make(2, 2);
    EXPECT_EQ(f->modulus(), (std::vector<unsigned>{1, 1, 1}));
    std::set<Elem> fixed;
    for (unsigned a = 0; a < 4; ++a)
        if (f->apply({1}, a) == a)
            fixed.insert(a);
    EXPECT_EQ(fixed, (std::set<Elem>{0, 1}));
}

TEST(FiniteField, RejectsNonPrimeCharacteristic)
{
    EXPECT_THROW(Field::make(4, 1), InvalidArgument);
    EXPECT_THROW(Field::parse("6"), InvalidArgument);
    EXPECT_THROW(Field::parse("2^x"), InvalidArgument);
}

TEST(FiniteField, ParseForms)
{
    EXPECT_EQ(Field::parse("3")->order(), 3u);
    EXPECT_EQ(Field::parse("2^2")->order(), 4u);
    EXPECT_EQ(Field::parse("4")->degree(), 2u);
    EXPECT_EQ(Field::parse("9")->characteristic(), 3u);
}

TEST(FiniteField, AutomorphismGroups)
{
    EXPECT_EQ(field_automorphisms(*Field::make(2, 1)).size(), 1u);
    auto gf4 = field_automorphisms(*Field::make(2, 2));
    ASSERT_EQ(gf4.size(), 2u);
    EXPECT_EQ(gf4[0].power, 0u);
    EXPECT_EQ(gf4[1].power, 1u);
    auto gf9 = Field::make(3, 2);
    auto a9 = field_automorphisms(*gf9);
    ASSERT_EQ(a9.size(), 2u);
    EXPECT_TRUE(gf9->is_involutory(a9[1]));
    EXPECT_FALSE(Field::make(2, 3)->is_involutory({1}));
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<unsigned, unsigned>> { };

TEST_P(FieldAxioms, TablesAgreeWithPolynomialArithmeticAndFieldLaws)
{
    auto [p, k] = GetParam();
    auto f = Field::make(p, k);
    unsigned q = f->order();
    for (unsigned a = 0; a < q; ++a) {
        if (a != 0) {
            EXPECT_EQ(f->mul(a, f->inv(a)), 1);
        }
        EXPECT_EQ(f->add(a, f->neg(a)), 0);
        for (unsigned b = 0; b < q; ++b) {
            ASSERT_EQ(f->add(a, b), f->add_direct(a, b));
            ASSERT_EQ(f->mul(a, b), f->mul_direct(a, b));
            EXPECT_EQ(f->mul(a, b), f->mul(b, a));
            for (unsigned c = 0; c < q; c += 1 + q / 7)
                ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
        }
    }
    // The primitive element generates every nonzero element.
    std::set<Elem> powers;
    for (unsigned e = 0; e + 1 < q; ++e)
        powers.insert(f->pow(f->primitive_element(), e));
    EXPECT_EQ(powers.size(), q - 1);
    for (auto sigma : field_automorphisms(*f))
        for (unsigned a = 0; a < q; ++a)
            EXPECT_EQ(f->apply(f->inverse(sigma), f->apply(sigma, a)), a);
    EXPECT_TRUE(is_irreducible(f->modulus(), p));
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldAxioms,
                         ::testing::Values(std::pair{2u, 1u}, std::pair{3u, 1u}, std::pair{5u, 1u}, std::pair{2u, 2u},
                                           std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{2u, 4u}, std::pair{7u, 1u}),
                         [](const auto & info) {
                             return "GF" + std::to_string(info.param.first) + "_" + std::to_string(info.param.second);
                         });
