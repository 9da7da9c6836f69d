#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace projposet {

/// A field element is stored as its integer code sum(c_i * p^i), where c_i is the
/// coefficient of x^i in the polynomial representation. Ordering codes numerically
/// is the lexicographic order on (c_{k-1}, ..., c_0); every enumeration downstream
/// uses it as the tie-breaker.
using Elem = std::uint8_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// x -> x^(p^power), 0 <= power < k.
struct FieldAutomorphism {
    unsigned power = 0;

    friend bool operator==(FieldAutomorphism, FieldAutomorphism) = default;
    friend auto operator<=>(FieldAutomorphism, FieldAutomorphism) = default;
};

/// GF(p^k) with a fixed irreducible modulus. Immutable after construction; all
/// arithmetic goes through precomputed tables filled from the polynomial routines.
class Field {
public:
    /// Throws InvalidArgument if p is not prime, or k > 1 has no tabulated modulus.
    static FieldPtr make(unsigned p, unsigned k);

    /// Accepts "p^k" or a bare prime power "q".
    static FieldPtr parse(std::string_view spec);

    /// Largest supported order (codes must fit in Elem).
    static constexpr unsigned max_order = 256;

    unsigned characteristic() const { return p_; }
    unsigned degree() const { return k_; }
    unsigned order() const { return q_; }

    /// Monic modulus, coefficients from x^0 up to x^k.
    const std::vector<unsigned> & modulus() const { return modulus_; }

    /// "p^k"
    std::string name() const;

    Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
    /// Throws InvalidArgument on zero.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    /// Untabulated polynomial arithmetic, kept for cross-checking the tables.
    Elem add_direct(Elem a, Elem b) const;
    Elem mul_direct(Elem a, Elem b) const;

    std::vector<unsigned> coefficients(Elem a) const;
    Elem from_coefficients(std::span<const unsigned> coeffs) const;

    /// A generator of the multiplicative group.
    Elem primitive_element() const { return primitive_; }

    /// Frobenius power applied to one element.
    Elem apply(FieldAutomorphism sigma, Elem a) const { return frob_[sigma.power * q_ + a]; }

    FieldAutomorphism identity_automorphism() const { return {0}; }
    FieldAutomorphism inverse(FieldAutomorphism sigma) const { return {(k_ - sigma.power) % k_}; }
    /// (a * b)(x) = a(b(x))
    FieldAutomorphism compose(FieldAutomorphism a, FieldAutomorphism b) const { return {(a.power + b.power) % k_}; }
    bool is_involutory(FieldAutomorphism sigma) const { return (2 * sigma.power) % k_ == 0; }

    /// A field element from a JSON-ish integer in [0, q).
    Elem element(unsigned code) const;

    bool operator==(const Field & other) const { return p_ == other.p_ && k_ == other.k_; }

private:
    Field(unsigned p, unsigned k, std::vector<unsigned> modulus);

    unsigned p_;
    unsigned k_;
    unsigned q_;
    std::vector<unsigned> modulus_;
    std::vector<Elem> add_;
    std::vector<Elem> neg_;
    std::vector<Elem> mul_;
    std::vector<Elem> inv_;
    std::vector<Elem> frob_;
    Elem primitive_ = 1;
};

bool is_prime(unsigned n);

/// Irreducibility over GF(p) by trial division against every monic polynomial of
/// degree 1..deg-1. Coefficients from x^0 upward; the polynomial must be monic.
bool is_irreducible(std::span<const unsigned> poly, unsigned p);

/// All k automorphisms of GF(p^k), each checked additive and multiplicative on
/// every pair of elements.
std::vector<FieldAutomorphism> field_automorphisms(const Field & field);

bool same_field(const FieldPtr & a, const FieldPtr & b);

} // namespace projposet
