#include "projposet/lattice_frame.hpp"

#include "projposet/error.hpp"

namespace projposet {

LatticeFrame::LatticeFrame(const Lattice & lattice) : lattice_(&lattice)
{
    const auto & f = *lattice.field();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < lattice.n(); ++i)
        total *= f.order();
    atom_by_code_.assign(total, 0);
    for (auto a : lattice.atoms())
        atom_by_code_[code_of(lattice.element(a).basis().row(0))] = static_cast<std::uint16_t>(a);

    basis_atoms_.resize(lattice.size());
    for (std::size_t x = 0; x < lattice.size(); ++x) {
        const auto & b = lattice.element(x).basis();
        for (std::size_t r = 0; r < b.rows(); ++r)
            basis_atoms_[x].push_back(static_cast<std::uint16_t>(atom_by_code_[code_of(b.row(r))]));
    }
}

std::uint32_t LatticeFrame::code_of(std::span<const Elem> v) const
{
    const auto & f = *lattice_->field();
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0)
        ++lead;
    if (lead == v.size())
        throw InvalidArgument("zero vector has no atom");
    Elem s = f.inv(v[lead]);
    std::uint32_t code = 0;
    for (auto c : v)
        code = code * f.order() + f.mul(c, s);
    return code;
}

std::size_t LatticeFrame::atom_of(std::span<const Elem> v) const
{
    return atom_by_code_[code_of(v)];
}

Permutation LatticeFrame::induced(const SemilinearMap & s) const
{
    const auto & lat = *lattice_;
    std::vector<std::uint16_t> atom_image(lat.size(), 0);
    for (auto a : lat.atoms())
        atom_image[a] = static_cast<std::uint16_t>(atom_of(s.apply(lat.element(a).basis().row(0))));

    Permutation perm(lat.size(), 0);
    for (std::size_t x = 1; x < lat.size(); ++x) {
        std::size_t acc = lat.bottom();
        for (auto a : basis_atoms_[x])
            acc = lat.join(acc, atom_image[a]);
        perm[x] = static_cast<std::uint16_t>(acc);
    }
    return perm;
}

} // namespace projposet
