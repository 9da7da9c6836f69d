#include "projposet/semilinear.hpp"

#include "projposet/error.hpp"
#include "projposet/lattice_frame.hpp"

namespace projposet {

SemilinearMap::SemilinearMap(Matrix m, FieldAutomorphism twist) : m_(std::move(m)), twist_(twist)
{
    if (!m_.square() || !is_invertible(m_))
        throw SingularMatrix("semilinear map needs an invertible square matrix");
    if (twist_.power >= m_.field()->degree())
        throw InvalidArgument("field automorphism out of range");
}

SemilinearMap SemilinearMap::identity(FieldPtr field, std::size_t n)
{
    return SemilinearMap(Matrix::identity(std::move(field), n), {});
}

std::vector<Elem> SemilinearMap::apply(std::span<const Elem> v) const
{
    std::vector<Elem> t(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        t[i] = field()->apply(twist_, v[i]);
    return row_times(t, m_);
}

Matrix SemilinearMap::apply_rows(const Matrix & rows) const
{
    return rows.twisted(twist_) * m_;
}

Subspace SemilinearMap::apply(const Subspace & s) const
{
    if (s.dim() == 0)
        return s;
    return Subspace::span(apply_rows(s.basis()));
}

SemilinearMap SemilinearMap::inverse() const
{
    // s^-1(w) = t^-1(w M^-1) = t^-1(w) t^-1(M^-1)
    auto ti = field()->inverse(twist_);
    return SemilinearMap(projposet::inverse(m_).twisted(ti), ti);
}

SemilinearMap SemilinearMap::normalized() const
{
    return SemilinearMap(normalize_first_nonzero(m_), twist_);
}

SemilinearMap compose(const SemilinearMap & outer, const SemilinearMap & inner)
{
    const auto & f = *outer.field();
    if (!same_field(outer.field(), inner.field()) || outer.n() != inner.n())
        throw InvalidArgument("composing semilinear maps of different shapes");
    // outer(inner(v)) = a(b(v) B) A = ab(v) a(B) A
    return SemilinearMap(inner.matrix().twisted(outer.twist()) * outer.matrix(),
                         f.compose(outer.twist(), inner.twist()));
}

LatticeMap induced_lattice_map(const SemilinearMap & s, const Lattice & lattice)
{
    if (!same_field(s.field(), lattice.field()) || s.n() != lattice.n())
        throw InvalidArgument("semilinear map does not act on this lattice");
    LatticeMap f;
    f.perm.resize(lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i)
        f.perm[i] = static_cast<std::uint16_t>(lattice.index_of(s.apply(lattice.element(i))));
    if (!is_lattice_automorphism(lattice, f.perm))
        throw Falsification("semilinear map did not induce a lattice automorphism");
    return f;
}

Permutation induced_permutation_via_atoms(const SemilinearMap & s, const Lattice & lattice)
{
    return LatticeFrame(lattice).induced(s);
}

BilinearForm BilinearForm::standard(FieldPtr field, std::size_t n, FieldAutomorphism twist)
{
    return {Matrix::identity(std::move(field), n), twist};
}

Elem BilinearForm::pair(std::span<const Elem> x, std::span<const Elem> y) const
{
    const auto & f = *gram.field();
    auto xg = row_times(x, gram);
    Elem acc = 0;
    for (std::size_t i = 0; i < xg.size(); ++i)
        acc = f.add(acc, f.mul(xg[i], f.apply(twist, y[i])));
    return acc;
}

Subspace dual_complement(const Subspace & x, const BilinearForm & form)
{
    const auto n = form.gram.rows();
    if (x.ambient_dim() != n)
        throw InvalidArgument("subspace and form have different ambient dimension");
    if (x.dim() == 0)
        return Subspace::whole(x.field(), n);
    // v in X^perp iff v * (G * t(Y)^T) = 0, i.e. v in the right null space of t(Y) * G^T
    return Subspace::span(kernel_basis(x.basis().twisted(form.twist) * form.gram.transposed()));
}

LatticeMap make_duality(const BilinearForm & form, const Lattice & lattice)
{
    if (!form.non_degenerate())
        throw InvalidArgument("degenerate bilinear form");
    LatticeMap g;
    g.direction = Direction::anti_automorphism;
    g.perm.resize(lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i)
        g.perm[i] = static_cast<std::uint16_t>(lattice.index_of(dual_complement(lattice.element(i), form)));
    if (!is_lattice_anti_automorphism(lattice, g.perm))
        throw Falsification("duality is not an anti-automorphism");
    return g;
}

bool is_involutory(const LatticeMap & f)
{
    for (std::size_t i = 0; i < f.perm.size(); ++i)
        if (f.perm[f.perm[i]] != i)
            return false;
    return true;
}

namespace {

bool order_check(const Lattice & lattice, const Permutation & f, bool reverse)
{
    if (f.size() != lattice.size() || !is_bijection(f))
        return false;
    for (std::size_t a = 0; a < lattice.size(); ++a)
        for (std::size_t b = 0; b < lattice.size(); ++b) {
            bool image = reverse ? lattice.leq(f[b], f[a]) : lattice.leq(f[a], f[b]);
            if (lattice.leq(a, b) != image)
                return false;
        }
    return true;
}

} // namespace

bool is_lattice_automorphism(const Lattice & lattice, const Permutation & f)
{
    return order_check(lattice, f, false);
}

bool is_lattice_anti_automorphism(const Lattice & lattice, const Permutation & f)
{
    return order_check(lattice, f, true);
}

bool is_lattice_map_of_kind(const Lattice & lattice, const LatticeMap & f)
{
    return order_check(lattice, f.perm, f.direction == Direction::anti_automorphism);
}

} // namespace projposet
