#include "projposet/subspace_lattice.hpp"

#include "projposet/error.hpp"
#include "projposet/json_io.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace projposet {

Subspace Subspace::span(const Matrix & rows)
{
    return Subspace(image_basis(rows));
}

Subspace Subspace::zero(FieldPtr field, std::size_t n)
{
    return Subspace(Matrix(std::move(field), 0, n));
}

Subspace Subspace::whole(FieldPtr field, std::size_t n)
{
    return Subspace(Matrix::identity(std::move(field), n));
}

Subspace Subspace::coordinate_line(FieldPtr field, std::size_t n, std::size_t i)
{
    Matrix m(std::move(field), 1, n);
    m(0, i) = 1;
    return Subspace(std::move(m));
}

bool Subspace::contains(std::span<const Elem> v) const
{
    Matrix row(field(), 1, ambient_dim(), std::vector<Elem>(v.begin(), v.end()));
    return rank(vstack(basis_, row)) == dim();
}

bool operator<(const Subspace & a, const Subspace & b)
{
    if (a.dim() != b.dim())
        return a.dim() < b.dim();
    return a.basis_ < b.basis_;
}

std::size_t SubspaceHash::operator()(const Subspace & s) const
{
    std::size_t h = 1469598103934665603ull ^ s.dim();
    for (auto x : s.basis().entries())
        h = (h ^ x) * 1099511628211ull;
    return h;
}

static void require_same_ambient(const Subspace & a, const Subspace & b)
{
    if (a.ambient_dim() != b.ambient_dim() || !same_field(a.field(), b.field()))
        throw InvalidArgument("subspaces live in different ambient spaces");
}

Subspace annihilator(const Subspace & a)
{
    return Subspace::span(kernel_basis(a.basis()));
}

Subspace meet(const Subspace & a, const Subspace & b)
{
    require_same_ambient(a, b);
    // x in a ^ b  <=>  x . h = 0 for every h annihilating a or b
    Matrix constraints = vstack(kernel_basis(a.basis()), kernel_basis(b.basis()));
    return Subspace::span(kernel_basis(constraints));
}

Subspace join(const Subspace & a, const Subspace & b)
{
    require_same_ambient(a, b);
    return Subspace::span(vstack(a.basis(), b.basis()));
}

bool leq(const Subspace & a, const Subspace & b)
{
    require_same_ambient(a, b);
    return join(a, b) == b;
}

std::uint64_t gaussian_binomial(std::size_t n, std::size_t k, std::uint64_t q)
{
    if (k > n)
        return 0;
    std::uint64_t num = 1, den = 1;
    for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t qa = 1, qb = 1;
        for (std::size_t t = 0; t < n - i; ++t)
            qa *= q;
        for (std::size_t t = 0; t < i + 1; ++t)
            qb *= q;
        num *= qa - 1;
        den *= qb - 1;
    }
    return num / den;
}

namespace {

    // Every RREF k x n matrix of full rank, by pivot set and free entries.
    void enumerate_rref(const FieldPtr & field, std::size_t n, std::size_t k, std::vector<Subspace> & out)
    {
        const unsigned q = field->order();
        std::vector<std::size_t> pivots(k);
        std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t i, std::size_t start) {
            if (i == k) {
                // free positions: row r, column c > pivots[r], c not a pivot
                std::vector<std::pair<std::size_t, std::size_t>> free;
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t c = pivots[r] + 1; c < n; ++c)
                        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
                            free.emplace_back(r, c);
                std::uint64_t total = 1;
                for (std::size_t t = 0; t < free.size(); ++t)
                    total *= q;
                for (std::uint64_t code = 0; code < total; ++code) {
                    Matrix m(field, k, n);
                    for (std::size_t r = 0; r < k; ++r)
                        m(r, pivots[r]) = 1;
                    std::uint64_t c = code;
                    for (auto [r, col] : free) {
                        m(r, col) = static_cast<Elem>(c % q);
                        c /= q;
                    }
                    out.push_back(Subspace::span(m));
                }
                return;
            }
            for (std::size_t c = start; c + (k - i) <= n; ++c) {
                pivots[i] = c;
                choose(i + 1, c + 1);
            }
        };
        choose(0, 0);
    }
}

std::shared_ptr<const Lattice> Lattice::enumerate(FieldPtr field, std::size_t n)
{
    if (n == 0)
        throw InvalidArgument("ambient dimension must be >= 1");
    std::uint64_t vectors = 1;
    for (std::size_t i = 0; i < n; ++i) {
        vectors *= field->order();
        if (vectors > (1u << 20))
            throw InvalidArgument("ambient GF(" + field->name() + ")^" + std::to_string(n) + " is too large for exhaustive enumeration");
    }
    std::uint64_t expected = 0;
    for (std::size_t k = 0; k <= n; ++k)
        expected += gaussian_binomial(n, k, field->order());
    if (expected > max_elements)
        throw InvalidArgument("ambient GF(" + field->name() + ")^" + std::to_string(n) + " has " + std::to_string(expected)
            + " subspaces, above the exhaustive limit of " + std::to_string(max_elements));

    std::shared_ptr<Lattice> lat(new Lattice());
    lat->field_ = field;
    lat->n_ = n;
    lat->by_dim_.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<Subspace> level;
        enumerate_rref(field, n, k, level);
        std::sort(level.begin(), level.end());
        for (auto & s : level) {
            lat->by_dim_[k].push_back(lat->elements_.size());
            lat->index_.emplace(s, lat->elements_.size());
            lat->elements_.push_back(std::move(s));
        }
    }
    if (lat->index_.size() != lat->elements_.size())
        throw Falsification("subspace enumeration produced duplicates");

    const std::size_t size = lat->elements_.size();
    lat->join_.assign(size * size, 0);
    lat->meet_.assign(size * size, 0);
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = a; b < size; ++b) {
            auto j = static_cast<Index>(lat->index_of(projposet::join(lat->elements_[a], lat->elements_[b])));
            lat->join_[a * size + b] = lat->join_[b * size + a] = j;
        }
    // a ^ b = ann(ann a v ann b)
    std::vector<std::size_t> ann(size);
    for (std::size_t a = 0; a < size; ++a)
        ann[a] = lat->index_of(annihilator(lat->elements_[a]));
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = a; b < size; ++b) {
            auto m = static_cast<Index>(ann[lat->join_[ann[a] * size + ann[b]]]);
            lat->meet_[a * size + b] = lat->meet_[b * size + a] = m;
        }

    lat->down_.resize(size);
    lat->up_.resize(size);
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b)
            if (lat->leq(a, b)) {
                lat->down_[b].push_back(a);
                lat->up_[a].push_back(b);
            }
    return lat;
}

std::size_t Lattice::index_of(const Subspace & s) const
{
    auto it = index_.find(s);
    if (it == index_.end())
        throw InvalidArgument("subspace does not belong to this lattice");
    return it->second;
}

bool Lattice::is_modular_pair(std::size_t a, std::size_t b) const
{
    const std::size_t ab = meet(a, b);
    for (auto x : down_[b])
        if (meet(join(x, a), b) != join(x, ab))
            return false;
    return true;
}

bool Lattice::is_dual_modular_pair(std::size_t a, std::size_t b) const
{
    const std::size_t ab = join(a, b);
    for (auto x : up_[b])
        if (join(meet(x, a), b) != meet(x, ab))
            return false;
    return true;
}

std::vector<std::size_t> Lattice::complements(std::size_t a) const
{
    std::vector<std::size_t> out;
    for (auto b : by_dim_[n_ - dim(a)])
        if (meet(a, b) == bottom() && join(a, b) == top())
            out.push_back(b);
    return out;
}

void require_length_at_least_four(const Lattice & lattice)
{
    if (lattice.length() < 4)
        throw HypothesisNotMet("length >= 4 required: the lattice of subspaces of GF(" + lattice.field()->name() + ")^"
            + std::to_string(lattice.n()) + " has length " + std::to_string(lattice.length()));
}

CheckReport check_g_lattice_properties(const Lattice & lattice)
{
    CheckReport report;
    auto & several = report.add("atom_has_several_complements");
    for (auto p : lattice.atoms()) {
        const auto c = lattice.complements(p);
        several.expect(c.size() > 1, {{"atom", p}, {"complements", c}});
    }

    // A cover of 0 is an atom and is reached by that atom alone, so a = 0 is skipped.
    auto & two_atoms = report.add("cover_generated_by_two_atoms");
    for (std::size_t a = 0; a < lattice.size(); ++a)
        for (auto b : lattice.up_set(a)) {
            if (a == lattice.bottom())
                continue;
            if (!lattice.covers(a, b))
                continue;
            std::size_t count = 0;
            for (auto p : lattice.atoms())
                if (lattice.join(a, p) == b)
                    ++count;
            two_atoms.expect(count >= 2, {{"lower", a}, {"upper", b}, {"generating_atoms", count}});
        }

    auto & common = report.add("distinct_atoms_share_a_complement");
    const auto & atoms = lattice.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j < atoms.size(); ++j) {
            bool found = false;
            for (auto h : lattice.complements(atoms[i]))
                if (lattice.meet(h, atoms[j]) == lattice.bottom() && lattice.join(h, atoms[j]) == lattice.top()) {
                    found = true;
                    break;
                }
            common.expect(found, {{"atoms", {atoms[i], atoms[j]}}});
        }
    return report;
}

CheckReport check_lattice_invariants(const Lattice & lattice)
{
    CheckReport report;
    const std::size_t size = lattice.size();
    auto & modular = report.add("every_pair_modular");
    auto & dual_modular = report.add("every_pair_dual_modular");
    auto & dims = report.add("dimension_law");
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) {
            modular.expect(lattice.is_modular_pair(a, b), {{"a", a}, {"b", b}});
            dual_modular.expect(lattice.is_dual_modular_pair(a, b), {{"a", a}, {"b", b}});
            dims.expect(lattice.dim(a) + lattice.dim(b) == lattice.dim(lattice.join(a, b)) + lattice.dim(lattice.meet(a, b)),
                {{"a", a}, {"b", b}});
        }

    auto & covering = report.add("covering_property");
    for (auto p : lattice.atoms())
        for (std::size_t a = 0; a < size; ++a)
            if (lattice.meet(a, p) == lattice.bottom())
                covering.expect(lattice.covers(a, lattice.join(a, p)), {{"atom", p}, {"a", a}});

    auto & dual_covering = report.add("dual_covering_property");
    for (auto h : lattice.coatoms())
        for (std::size_t a = 0; a < size; ++a)
            if (lattice.join(a, h) == lattice.top())
                dual_covering.expect(lattice.covers(lattice.meet(a, h), a), {{"coatom", h}, {"a", a}});
    return report;
}

nlohmann::json lattice_to_json(const Lattice & lattice)
{
    auto elements = nlohmann::json::array();
    for (std::size_t i = 0; i < lattice.size(); ++i)
        elements.push_back({{"index", i}, {"dim", lattice.dim(i)}, {"basis", matrix_to_json(lattice.element(i).basis())["rows"]}});
    auto covers = nlohmann::json::array();
    for (std::size_t a = 0; a < lattice.size(); ++a)
        for (auto b : lattice.up_set(a))
            if (lattice.covers(a, b))
                covers.push_back({a, b});
    return {{"field", lattice.field()->name()}, {"n", lattice.n()}, {"elements", std::move(elements)}, {"covers", std::move(covers)}};
}

std::string lattice_to_dot(const Lattice & lattice)
{
    std::ostringstream out;
    out << "digraph L {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < lattice.size(); ++i)
        out << "  n" << i << " [label=\"" << i << ":" << lattice.dim(i) << "\"];\n";
    for (std::size_t a = 0; a < lattice.size(); ++a)
        for (auto b : lattice.up_set(a))
            if (lattice.covers(a, b))
                out << "  n" << a << " -> n" << b << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace projposet
