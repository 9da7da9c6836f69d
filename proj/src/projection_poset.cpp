#include "projposet/projection_poset.hpp"

#include "projposet/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace projposet {

std::shared_ptr<const ProjectionPoset> ProjectionPoset::build(LatticePtr lattice)
{
    std::shared_ptr<ProjectionPoset> P(new ProjectionPoset());
    const Lattice & L = *lattice;
    P->lattice_ = lattice;

    for (std::size_t a = 0; a < L.size(); ++a)
        for (auto b : L.complements(a)) {
            if (L.is_modular_pair(a, b) && L.is_dual_modular_pair(a, b))
                P->elements_.push_back({a, b});
            else
                ++P->rejected_;
        }

    const std::size_t size = P->elements_.size();
    const std::size_t stride = L.size();
    for (std::size_t i = 0; i < size; ++i)
        P->index_.emplace(P->elements_[i].image * stride + P->elements_[i].kernel, i);

    P->ortho_.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        auto o = P->index_of(P->elements_[i].kernel, P->elements_[i].image);
        if (!o)
            throw Falsification("(b,a) missing from P(L) although (a,b) is present");
        P->ortho_[i] = *o;
    }

    P->up_.assign(size, Bitset(size));
    P->down_.assign(size, Bitset(size));
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            const auto & p = P->elements_[i];
            const auto & q = P->elements_[j];
            if (L.leq(p.image, q.image) && L.leq(q.kernel, p.kernel)) {
                P->up_[i].set(j);
                P->down_[j].set(i);
            }
        }

    for (std::size_t i = 0; i < size; ++i)
        if (L.dim(P->elements_[i].image) == 1)
            P->atoms_.push_back(i);

    P->image_classes_.resize(L.size());
    P->kernel_classes_.resize(L.size());
    for (std::size_t i = 0; i < size; ++i) {
        P->image_classes_[P->elements_[i].image].push_back(i);
        P->kernel_classes_[P->elements_[i].kernel].push_back(i);
    }
    return P;
}

std::optional<std::size_t> ProjectionPoset::index_of(std::size_t image, std::size_t kernel) const
{
    auto it = index_.find(image * lattice_->size() + kernel);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::size_t> ProjectionPoset::least_upper_bound(const Bitset & members) const
{
    Bitset upper(size());
    upper.set();
    for (auto i = members.find_first(); i != Bitset::npos; i = members.find_next(i))
        upper &= up_[i];
    const auto count = upper.count();
    for (auto m = upper.find_first(); m != Bitset::npos; m = upper.find_next(m))
        if (up_[m].count() == count && up_[m] == upper)
            return m;
    return std::nullopt;
}

std::optional<std::size_t> ProjectionPoset::greatest_lower_bound(const Bitset & members) const
{
    Bitset lower(size());
    lower.set();
    for (auto i = members.find_first(); i != Bitset::npos; i = members.find_next(i))
        lower &= down_[i];
    const auto count = lower.count();
    for (auto m = lower.find_first(); m != Bitset::npos; m = lower.find_next(m))
        if (down_[m].count() == count && down_[m] == lower)
            return m;
    return std::nullopt;
}

std::optional<std::size_t> ProjectionPoset::join(std::size_t i, std::size_t j) const
{
    Bitset s(size());
    s.set(i);
    s.set(j);
    return least_upper_bound(s);
}

std::optional<std::size_t> ProjectionPoset::meet(std::size_t i, std::size_t j) const
{
    Bitset s(size());
    s.set(i);
    s.set(j);
    return greatest_lower_bound(s);
}

CheckReport verify_omp_axioms(const ProjectionPoset & P)
{
    CheckReport report;
    const std::size_t size = P.size();

    auto & order = report.add("partial_order");
    for (std::size_t p = 0; p < size; ++p) {
        order.expect(P.leq(p, p), {{"reflexivity", p}});
        const auto & up = P.up_set(p);
        for (auto q = up.find_first(); q != ProjectionPoset::Bitset::npos; q = up.find_next(q)) {
            if (q != p)
                order.expect(!P.leq(q, p), {{"antisymmetry", {p, q}}});
            order.expect(P.up_set(q).is_subset_of(up), {{"transitivity", {p, q}}});
        }
    }

    auto & bounds = report.add("bounds");
    for (std::size_t p = 0; p < size; ++p)
        bounds.expect(P.leq(P.bottom(), p) && P.leq(p, P.top()), {{"element", p}});

    auto & involution = report.add("ortho_involution");
    for (std::size_t p = 0; p < size; ++p)
        involution.expect(P.ortho(P.ortho(p)) == p && P.ortho(p) != p, {{"element", p}});

    auto & reversing = report.add("ortho_order_reversing");
    for (std::size_t p = 0; p < size; ++p)
        for (std::size_t q = 0; q < size; ++q)
            if (P.leq(p, q))
                reversing.expect(P.leq(P.ortho(q), P.ortho(p)), {{"p", p}, {"q", q}});

    auto & complement = report.add("ortho_is_complement");
    for (std::size_t p = 0; p < size; ++p) {
        auto m = P.meet(p, P.ortho(p));
        auto j = P.join(p, P.ortho(p));
        complement.expect(m && *m == P.bottom() && j && *j == P.top(), {{"element", p}});
    }

    auto & orthogonal = report.add("orthogonal_joins_exist");
    for (std::size_t p = 0; p < size; ++p)
        for (std::size_t q = 0; q < size; ++q)
            if (P.leq(p, P.ortho(q)))
                orthogonal.expect(P.join(p, q).has_value(), {{"p", p}, {"q", q}});

    auto & orthomodular = report.add("orthomodular_law");
    for (std::size_t p = 0; p < size; ++p)
        for (std::size_t q = 0; q < size; ++q) {
            if (!P.leq(p, q))
                continue;
            auto r = P.meet(q, P.ortho(p));
            std::optional<std::size_t> s;
            if (r)
                s = P.join(p, *r);
            orthomodular.expect(s && *s == q, {{"p", p}, {"q", q}, {"q_meet_p_perp", r ? nlohmann::json(*r) : nlohmann::json()}});
        }
    return report;
}

Check check_atomistic(const ProjectionPoset & P)
{
    Check check;
    check.name = "atomistic";
    for (std::size_t p = 0; p < P.size(); ++p) {
        auto below = P.empty_set();
        for (auto a : P.atoms())
            if (P.leq(a, p))
                below.set(a);
        auto lub = P.least_upper_bound(below);
        check.expect(lub && *lub == p, {{"element", p}});
    }
    return check;
}

Matrix pair_to_idempotent(const Lattice & L, const ProjectionPair & p)
{
    const Matrix & image = L.element(p.image).basis();
    const Matrix & kernel = L.element(p.kernel).basis();
    if (image.rows() + kernel.rows() != L.n())
        throw InvalidArgument("pair_to_idempotent: image and kernel are not complementary");
    Matrix basis = vstack(image, kernel);
    Matrix target = vstack(image, Matrix::zero(L.field(), kernel.rows(), L.n()));
    // basis * E = target
    return inverse(basis) * target;
}

ProjectionPair idempotent_to_pair(const Lattice & L, const Matrix & m)
{
    if (!is_idempotent(m))
        throw InvalidArgument("idempotent_to_pair: matrix is not idempotent");
    return {L.index_of(Subspace::span(m)), L.index_of(Subspace::span(map_kernel_basis(m)))};
}

bool idempotent_leq(const Matrix & p, const Matrix & q)
{
    return p * q == p && q * p == p;
}

std::vector<Matrix> enumerate_idempotents(FieldPtr field, std::size_t n)
{
    const std::uint64_t total = matrix_count(*field, n, n);
    if (total > (1ull << 24))
        throw InvalidArgument("too many matrices for an exhaustive idempotent scan");
    std::vector<Matrix> out;
    for (std::uint64_t code = 0; code < total; ++code) {
        Matrix m = matrix_from_code(field, n, n, code);
        if (is_idempotent(m))
            out.push_back(std::move(m));
    }
    return out;
}

CorrespondenceResult verify_projection_correspondence(std::size_t n, FieldPtr field)
{
    auto L = Lattice::enumerate(field, n);
    auto P = ProjectionPoset::build(L);
    return verify_projection_correspondence(*P);
}

CorrespondenceResult verify_projection_correspondence(const ProjectionPoset & P)
{
    const Lattice & L = P.lattice();
    CorrespondenceResult result;
    result.poset_size = P.size();

    const auto idempotents = enumerate_idempotents(L.field(), L.n());
    result.idempotent_count = idempotents.size();
    std::set<std::uint64_t> idempotent_codes;
    for (auto & e : idempotents)
        idempotent_codes.insert(matrix_code(e));

    auto & counts = result.report.add("equal_cardinality");
    counts.expect(P.size() == idempotents.size(), {{"poset", P.size()}, {"idempotents", idempotents.size()}});

    std::vector<Matrix> matrices;
    matrices.reserve(P.size());
    auto & forward = result.report.add("pair_to_idempotent_lands_in_idempotents");
    auto & roundtrip = result.report.add("pair_roundtrip");
    std::set<std::uint64_t> hit;
    for (std::size_t i = 0; i < P.size(); ++i) {
        Matrix e = pair_to_idempotent(L, P.pair(i));
        const auto code = matrix_code(e);
        forward.expect(idempotent_codes.count(code) == 1, {{"element", i}});
        roundtrip.expect(idempotent_to_pair(L, e) == P.pair(i), {{"element", i}});
        hit.insert(code);
        matrices.push_back(std::move(e));
    }
    auto & injective = result.report.add("injective");
    injective.expect(hit.size() == P.size(), {{"distinct_images", hit.size()}});

    auto & backward = result.report.add("idempotent_roundtrip");
    for (auto & e : idempotents) {
        auto pair = idempotent_to_pair(L, e);
        auto idx = P.index_of(pair);
        backward.expect(idx && matrices[*idx] == e, {{"idempotent_code", matrix_code(e)}});
    }

    auto & order = result.report.add("order_isomorphism");
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = 0; j < P.size(); ++j)
            order.expect(P.leq(i, j) == idempotent_leq(matrices[i], matrices[j]), {{"p", i}, {"q", j}});

    auto & ortho = result.report.add("ortho_is_one_minus_p");
    const Matrix one = Matrix::identity(L.field(), L.n());
    for (std::size_t i = 0; i < P.size(); ++i)
        ortho.expect(matrices[P.ortho(i)] == one - matrices[i], {{"element", i}});
    return result;
}

nlohmann::json poset_to_json(const ProjectionPoset & P)
{
    auto elements = nlohmann::json::array();
    for (std::size_t i = 0; i < P.size(); ++i)
        elements.push_back({{"image_index", P.pair(i).image}, {"kernel_index", P.pair(i).kernel}});
    auto order = nlohmann::json::array();
    for (std::size_t i = 0; i < P.size(); ++i)
        for (auto j = P.up_set(i).find_first(); j != ProjectionPoset::Bitset::npos; j = P.up_set(i).find_next(j))
            if (j != i)
                order.push_back({i, j});
    auto ortho = nlohmann::json::array();
    for (std::size_t i = 0; i < P.size(); ++i)
        ortho.push_back(P.ortho(i));
    return {{"field", P.lattice().field()->name()}, {"n", P.lattice().n()}, {"elements", std::move(elements)},
        {"order", std::move(order)}, {"ortho", std::move(ortho)}};
}

std::string poset_to_dot(const ProjectionPoset & P)
{
    std::ostringstream out;
    out << "digraph P {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < P.size(); ++i)
        out << "  p" << i << " [label=\"(" << P.pair(i).image << "," << P.pair(i).kernel << ")\"];\n";
    for (std::size_t i = 0; i < P.size(); ++i)
        for (auto j = P.up_set(i).find_first(); j != ProjectionPoset::Bitset::npos; j = P.up_set(i).find_next(j)) {
            if (j == i)
                continue;
            // cover: nothing strictly between
            auto between = P.up_set(i) & P.down_set(j);
            if (between.count() == 2)
                out << "  p" << i << " -> p" << j << ";\n";
        }
    out << "}\n";
    return out.str();
}

} // namespace projposet
