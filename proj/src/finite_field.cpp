#include "projposet/finite_field.hpp"

#include "projposet/error.hpp"

#include <charconv>
#include <map>
#include <utility>

namespace projposet {

namespace {

    // Fixed moduli, coefficients from x^0 upward.
    const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> & modulus_table()
    {
        static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> table {
            {{2, 2}, {1, 1, 1}},       // x^2 + x + 1
            {{2, 3}, {1, 1, 0, 1}},    // x^3 + x + 1
            {{2, 4}, {1, 1, 0, 0, 1}}, // x^4 + x + 1
            {{3, 2}, {1, 0, 1}},       // x^2 + 1
            {{3, 3}, {1, 2, 0, 1}},    // x^3 + 2x + 1
            {{5, 2}, {2, 0, 1}},       // x^2 + 2
            {{7, 2}, {1, 0, 1}},       // x^2 + 1
        };
        return table;
    }

    unsigned ipow(unsigned base, unsigned e)
    {
        unsigned r = 1;
        while (e--)
            r *= base;
        return r;
    }

    // Remainder of a modulo monic b over GF(p). Both low-to-high.
    std::vector<unsigned> poly_mod(std::vector<unsigned> a, std::span<const unsigned> b, unsigned p)
    {
        const std::size_t db = b.size() - 1;
        while (a.size() > db) {
            const unsigned lead = a.back() % p;
            if (lead != 0) {
                const std::size_t shift = a.size() - 1 - db;
                for (std::size_t i = 0; i <= db; ++i)
                    a[shift + i] = (a[shift + i] + p * p - (lead * b[i]) % p) % p;
            }
            a.pop_back();
        }
        return a;
    }
}

bool is_prime(unsigned n)
{
    if (n < 2)
        return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

bool is_irreducible(std::span<const unsigned> poly, unsigned p)
{
    if (poly.size() < 2 || poly.back() % p != 1)
        throw InvalidArgument("is_irreducible: polynomial must be monic of degree >= 1");
    const unsigned deg = static_cast<unsigned>(poly.size() - 1);
    std::vector<unsigned> a(poly.begin(), poly.end());
    for (unsigned d = 1; d < deg; ++d) {
        // every monic divisor candidate of degree d
        const unsigned count = ipow(p, d);
        for (unsigned code = 0; code < count; ++code) {
            std::vector<unsigned> divisor(d + 1);
            unsigned c = code;
            for (unsigned i = 0; i < d; ++i) {
                divisor[i] = c % p;
                c /= p;
            }
            divisor[d] = 1;
            auto r = poly_mod(a, divisor, p);
            bool zero = true;
            for (auto x : r)
                if (x % p != 0)
                    zero = false;
            if (zero)
                return false;
        }
    }
    return true;
}

Field::Field(unsigned p, unsigned k, std::vector<unsigned> modulus) :
    p_(p), k_(k), q_(ipow(p, k)), modulus_(std::move(modulus))
{
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a)
        for (unsigned b = 0; b < q_; ++b) {
            add_[a * q_ + b] = add_direct(static_cast<Elem>(a), static_cast<Elem>(b));
            mul_[a * q_ + b] = mul_direct(static_cast<Elem>(a), static_cast<Elem>(b));
        }
    for (unsigned a = 0; a < q_; ++a)
        for (unsigned b = 0; b < q_; ++b) {
            if (add_[a * q_ + b] == 0)
                neg_[a] = static_cast<Elem>(b);
            if (mul_[a * q_ + b] == 1)
                inv_[a] = static_cast<Elem>(b);
        }

    frob_.resize(k_ * q_);
    for (unsigned a = 0; a < q_; ++a) {
        Elem x = static_cast<Elem>(a);
        for (unsigned i = 0; i < k_; ++i) {
            frob_[i * q_ + a] = x;
            x = pow(x, p_);
        }
    }

    for (unsigned g = 1; g < q_; ++g) {
        unsigned order = 1;
        Elem x = static_cast<Elem>(g);
        while (x != 1) {
            x = mul(x, static_cast<Elem>(g));
            ++order;
        }
        if (order == q_ - 1) {
            primitive_ = static_cast<Elem>(g);
            break;
        }
    }
}

FieldPtr Field::make(unsigned p, unsigned k)
{
    if (!is_prime(p))
        throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    if (k == 0)
        throw InvalidArgument("field extension degree must be >= 1");
    if (ipow(p, k) > max_order || (k == 1 && p > max_order))
        throw InvalidArgument("field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds the supported range");

    std::vector<unsigned> modulus;
    if (k == 1)
        modulus = {0, 1}; // x
    else {
        auto it = modulus_table().find({p, k});
        if (it == modulus_table().end())
            throw InvalidArgument("no tabulated modulus for GF(" + std::to_string(p) + "^" + std::to_string(k) + ")");
        modulus = it->second;
        if (!is_irreducible(modulus, p))
            throw InvalidArgument("tabulated modulus is reducible");
    }
    return FieldPtr(new Field(p, k, std::move(modulus)));
}

FieldPtr Field::parse(std::string_view spec)
{
    auto parse_uint = [&](std::string_view s) {
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw InvalidArgument("bad field specification '" + std::string(spec) + "', expected p^k");
        return v;
    };
    auto caret = spec.find('^');
    if (caret == std::string_view::npos) {
        // a bare prime power q is read as p^k
        unsigned q = parse_uint(spec);
        for (unsigned p = 2; p <= q; ++p) {
            if (q % p != 0)
                continue;
            unsigned k = 0;
            while (q % p == 0) {
                q /= p;
                ++k;
            }
            if (q != 1)
                break;
            return make(p, k);
        }
        throw InvalidArgument("field order " + std::string(spec) + " is not a prime power");
    }
    return make(parse_uint(spec.substr(0, caret)), parse_uint(spec.substr(caret + 1)));
}

std::string Field::name() const
{
    return std::to_string(p_) + "^" + std::to_string(k_);
}

Elem Field::inv(Elem a) const
{
    if (a == 0)
        throw InvalidArgument("inverse of zero");
    return inv_[a];
}

Elem Field::pow(Elem a, std::uint64_t e) const
{
    Elem r = 1;
    Elem base = a;
    while (e) {
        if (e & 1)
            r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::vector<unsigned> Field::coefficients(Elem a) const
{
    std::vector<unsigned> c(k_);
    unsigned v = a;
    for (unsigned i = 0; i < k_; ++i) {
        c[i] = v % p_;
        v /= p_;
    }
    return c;
}

Elem Field::from_coefficients(std::span<const unsigned> coeffs) const
{
    if (coeffs.size() != k_)
        throw InvalidArgument("element of GF(" + name() + ") needs " + std::to_string(k_) + " coefficients");
    unsigned v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= p_)
            throw InvalidArgument("coefficient out of range for GF(" + name() + ")");
        v = v * p_ + coeffs[i];
    }
    return static_cast<Elem>(v);
}

Elem Field::element(unsigned code) const
{
    if (code >= q_)
        throw InvalidArgument("element code " + std::to_string(code) + " out of range for GF(" + name() + ")");
    return static_cast<Elem>(code);
}

Elem Field::add_direct(Elem a, Elem b) const
{
    auto ca = coefficients(a);
    auto cb = coefficients(b);
    for (unsigned i = 0; i < k_; ++i)
        ca[i] = (ca[i] + cb[i]) % p_;
    return from_coefficients(ca);
}

Elem Field::mul_direct(Elem a, Elem b) const
{
    auto ca = coefficients(a);
    auto cb = coefficients(b);
    std::vector<unsigned> prod(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i)
        for (unsigned j = 0; j < k_; ++j)
            prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    auto r = poly_mod(std::move(prod), modulus_, p_);
    r.resize(k_, 0);
    return from_coefficients(r);
}

std::vector<FieldAutomorphism> field_automorphisms(const Field & field)
{
    std::vector<FieldAutomorphism> result;
    const unsigned q = field.order();
    for (unsigned i = 0; i < field.degree(); ++i) {
        FieldAutomorphism sigma {i};
        for (unsigned a = 0; a < q; ++a)
            for (unsigned b = 0; b < q; ++b) {
                auto x = static_cast<Elem>(a), y = static_cast<Elem>(b);
                if (field.apply(sigma, field.add(x, y)) != field.add(field.apply(sigma, x), field.apply(sigma, y))
                    || field.apply(sigma, field.mul(x, y)) != field.mul(field.apply(sigma, x), field.apply(sigma, y)))
                    throw Falsification("Frobenius power " + std::to_string(i) + " is not a field automorphism");
            }
        result.push_back(sigma);
    }
    return result;
}

bool same_field(const FieldPtr & a, const FieldPtr & b)
{
    return a == b || (a && b && *a == *b);
}

} // namespace projposet
