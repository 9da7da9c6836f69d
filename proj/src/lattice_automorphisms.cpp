#include "projposet/lattice_automorphisms.hpp"

#include "projposet/error.hpp"
#include "projposet/json_io.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <unordered_map>

namespace projposet {

namespace {

/// Points of L (atoms) or of its order dual (coatoms), with lines as point masks.
struct Geometry {
    std::size_t count = 0;
    std::vector<std::size_t> points;
    std::vector<std::uint64_t> line; // count * count
    std::vector<std::uint64_t> element_mask;
    std::unordered_map<std::uint64_t, std::uint16_t> element_of;
    std::vector<std::size_t> degree;
};

Geometry build_geometry(const Lattice & lat, bool dual)
{
    Geometry g;
    g.points = dual ? lat.coatoms() : lat.atoms();
    g.count = g.points.size();
    if (g.count > 64)
        throw InvalidArgument("lattice automorphism search supports at most 64 atoms");

    g.element_mask.assign(lat.size(), 0);
    for (std::size_t x = 0; x < lat.size(); ++x) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < g.count; ++i) {
            bool in = dual ? lat.leq(x, g.points[i]) : lat.leq(g.points[i], x);
            if (in)
                m |= std::uint64_t{1} << i;
        }
        g.element_mask[x] = m;
        g.element_of.emplace(m, static_cast<std::uint16_t>(x));
    }

    g.line.assign(g.count * g.count, 0);
    for (std::size_t i = 0; i < g.count; ++i)
        for (std::size_t j = 0; j < g.count; ++j) {
            auto l = dual ? lat.meet(g.points[i], g.points[j]) : lat.join(g.points[i], g.points[j]);
            g.line[i * g.count + j] = g.element_mask[l];
        }

    // lines through a point: covers of an atom in L, lower covers of a coatom in L
    g.degree.assign(g.count, 0);
    if (lat.n() >= 2) {
        std::size_t line_dim = dual ? lat.n() - 2 : 2;
        for (std::size_t i = 0; i < g.count; ++i)
            for (auto l : lat.of_dim(line_dim))
                if (dual ? lat.leq(l, g.points[i]) : lat.leq(g.points[i], l))
                    ++g.degree[i];
    }
    return g;
}

class AtomSearch {
public:
    AtomSearch(const Lattice & lat, const Geometry & src, const Geometry & tgt, bool anti, SearchControl & ctl) :
        lat_(lat), src_(src), tgt_(tgt), anti_(anti), ctl_(ctl), a_(src.count), doms_((a_ + 1) * a_),
        assign_(a_, -1)
    {
    }

    std::vector<std::uint64_t> initial_domains() const
    {
        std::vector<std::uint64_t> d(a_, 0);
        for (std::size_t x = 0; x < a_; ++x)
            for (std::size_t t = 0; t < a_; ++t)
                if (src_.degree[x] == tgt_.degree[t])
                    d[x] |= std::uint64_t{1} << t;
        return d;
    }

    /// Unassigned point with the fewest candidates, or a_ when all are assigned.
    std::size_t choose(const std::uint64_t * d) const
    {
        std::size_t best = a_;
        int best_count = 65;
        for (std::size_t x = 0; x < a_; ++x) {
            if (assign_[x] >= 0)
                continue;
            int c = std::popcount(d[x]);
            if (c < best_count) {
                best = x;
                best_count = c;
            }
        }
        return best;
    }

    /// Runs the subtree rooted at x -> t below the given domains.
    void branch(const std::vector<std::uint64_t> & d0, std::size_t x, std::size_t t)
    {
        std::copy(d0.begin(), d0.end(), doms_.begin());
        if (!ctl_.tick())
            return;
        if (assign_step(0, x, t))
            descend(1);
        assign_[x] = -1;
    }

    std::vector<Permutation> take_results() { return std::move(found_); }

private:
    bool assign_step(std::size_t level, std::size_t x, std::size_t t)
    {
        const std::uint64_t * d = &doms_[level * a_];
        std::uint64_t * nd = &doms_[(level + 1) * a_];
        std::copy(d, d + a_, nd);
        assign_[x] = static_cast<int>(t);
        std::uint64_t tb = std::uint64_t{1} << t;
        nd[x] = tb;
        for (std::size_t r = 0; r < a_; ++r)
            if (assign_[r] < 0)
                nd[r] &= ~tb;
        for (std::size_t z = 0; z < a_; ++z) {
            if (assign_[z] < 0 || z == x)
                continue;
            std::uint64_t ls = src_.line[x * a_ + z];
            std::uint64_t lt = tgt_.line[t * a_ + static_cast<std::size_t>(assign_[z])];
            for (std::size_t r = 0; r < a_; ++r)
                if (assign_[r] < 0)
                    nd[r] &= ((ls >> r) & 1) ? lt : ~lt;
        }
        for (std::size_t r = 0; r < a_; ++r)
            if (assign_[r] < 0 && nd[r] == 0)
                return false;
        return true;
    }

    void descend(std::size_t level)
    {
        const std::uint64_t * d = &doms_[level * a_];
        std::size_t x = choose(d);
        if (x == a_) {
            leaf();
            return;
        }
        std::uint64_t cand = d[x];
        while (cand) {
            std::size_t t = static_cast<std::size_t>(std::countr_zero(cand));
            cand &= cand - 1;
            if (!ctl_.tick())
                break;
            if (assign_step(level, x, t))
                descend(level + 1);
            assign_[x] = -1;
        }
    }

    void leaf()
    {
        Permutation perm(lat_.size());
        for (std::size_t e = 0; e < lat_.size(); ++e) {
            std::uint64_t m = src_.element_mask[e], img = 0;
            while (m) {
                auto i = static_cast<std::size_t>(std::countr_zero(m));
                m &= m - 1;
                img |= std::uint64_t{1} << assign_[i];
            }
            auto it = tgt_.element_of.find(img);
            if (it == tgt_.element_of.end())
                return;
            perm[e] = it->second;
        }
        bool ok = anti_ ? is_lattice_anti_automorphism(lat_, perm) : is_lattice_automorphism(lat_, perm);
        if (ok)
            found_.push_back(std::move(perm));
    }

    const Lattice & lat_;
    const Geometry & src_;
    const Geometry & tgt_;
    bool anti_;
    SearchControl & ctl_;
    std::size_t a_;
    std::vector<std::uint64_t> doms_;
    std::vector<int> assign_;
    std::vector<Permutation> found_;
};

LatticeSearchResult search(const Lattice & lat, bool anti, const SearchLimits & limits)
{
    Geometry src = build_geometry(lat, false);
    Geometry tgt = build_geometry(lat, anti);
    SearchControl ctl(limits.node_budget);

    AtomSearch probe(lat, src, tgt, anti, ctl);
    auto d0 = probe.initial_domains();
    std::size_t x0 = probe.choose(d0.data());
    std::vector<std::size_t> firsts;
    for (std::uint64_t c = d0[x0]; c; c &= c - 1)
        firsts.push_back(static_cast<std::size_t>(std::countr_zero(c)));

    std::vector<std::vector<Permutation>> per_branch(firsts.size());
    run_branches(firsts.size(), limits.jobs, [&](std::size_t b) {
        AtomSearch s(lat, src, tgt, anti, ctl);
        s.branch(d0, x0, firsts[b]);
        per_branch[b] = s.take_results();
    });

    std::size_t found = 0;
    for (auto & b : per_branch)
        found += b.size();
    if (ctl.exhausted())
        throw BudgetExceeded("lattice automorphism search exceeded its node budget", ctl.nodes(), found);

    LatticeSearchResult r;
    r.nodes = ctl.nodes();
    auto dir = anti ? Direction::anti_automorphism : Direction::automorphism;
    for (auto & b : per_branch)
        for (auto & p : b)
            r.maps.push_back({std::move(p), dir});
    std::sort(r.maps.begin(), r.maps.end(), [](const auto & a, const auto & b) { return a.perm < b.perm; });
    return r;
}

} // namespace

LatticeSearchResult enumerate_lattice_automorphisms(const Lattice & lattice, const SearchLimits & limits)
{
    return search(lattice, false, limits);
}

LatticeSearchResult enumerate_lattice_anti_automorphisms(const Lattice & lattice, const SearchLimits & limits)
{
    return search(lattice, true, limits);
}

SemilinearGeneration semilinear_lattice_automorphisms(const Lattice & lattice)
{
    const auto & field = lattice.field();
    LatticeFrame frame(lattice);
    SemilinearGeneration g;
    std::vector<Permutation> perms;
    for (const auto & m : normalized_invertible_matrices(field, lattice.n()))
        for (auto sigma : field_automorphisms(*field)) {
            ++g.pairs;
            auto p = frame.induced(SemilinearMap(m, sigma));
            if (!is_lattice_automorphism(lattice, p)) {
                ++g.failures;
                continue;
            }
            perms.push_back(std::move(p));
        }
    std::sort(perms.begin(), perms.end());
    perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
    for (auto & p : perms)
        g.maps.push_back({std::move(p), Direction::automorphism});
    return g;
}

std::optional<SemilinearMap> match_semilinear_with_twist(const LatticeMap & f, const Lattice & lattice,
                                                         std::optional<FieldAutomorphism> twist,
                                                         const LatticeFrame * frame)
{
    const auto n = lattice.n();
    const auto & field = lattice.field();
    const auto & F = *field;
    if (n < 2)
        throw HypothesisNotMet("matching a semilinear map needs n >= 2");
    if (f.direction != Direction::automorphism)
        throw InvalidArgument("match_semilinear expects an automorphism");
    if (f.perm.size() != lattice.size())
        throw InvalidArgument("map does not belong to this lattice");

    auto image_vector = [&](const Matrix & rows) -> std::optional<std::vector<Elem>> {
        const auto & img = lattice.element(f.perm[lattice.index_of(Subspace::span(rows))]);
        if (img.dim() != 1)
            return std::nullopt;
        auto r = img.basis().row(0);
        return std::vector<Elem>(r.begin(), r.end());
    };

    Matrix w(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto v = image_vector(Matrix::unit(field, n, 0, i).row_block(0, 1));
        if (!v)
            return std::nullopt;
        std::copy(v->begin(), v->end(), w.row(i).begin());
    }
    if (!is_invertible(w))
        return std::nullopt;

    Matrix ones(field, 1, n, std::vector<Elem>(n, 1));
    auto u = image_vector(ones);
    if (!u)
        return std::nullopt;
    auto c = row_times(*u, inverse(w));
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (c[i] == 0)
            return std::nullopt;
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = F.mul(c[i], w(i, j));
    }

    FieldAutomorphism sigma{};
    if (twist) {
        sigma = *twist;
    } else if (F.degree() > 1) {
        Elem g = F.primitive_element();
        Matrix probe(field, 1, n);
        probe(0, 0) = 1;
        probe(0, 1) = g;
        auto v = image_vector(probe);
        if (!v)
            return std::nullopt;
        auto coords = row_times(*v, inverse(m));
        if (coords[0] == 0 || coords[1] == 0)
            return std::nullopt;
        for (std::size_t i = 2; i < n; ++i)
            if (coords[i] != 0)
                return std::nullopt;
        Elem mu = F.div(coords[1], coords[0]);
        bool found = false;
        for (auto s : field_automorphisms(F))
            if (F.apply(s, g) == mu) {
                sigma = s;
                found = true;
                break;
            }
        if (!found)
            return std::nullopt;
    }

    SemilinearMap s = SemilinearMap(m, sigma).normalized();
    Permutation induced = frame ? frame->induced(s) : LatticeFrame(lattice).induced(s);
    if (induced != f.perm)
        return std::nullopt;
    return s;
}

SemilinearMap match_semilinear(const LatticeMap & f, const Lattice & lattice, const LatticeFrame * frame)
{
    if (lattice.n() < 3)
        throw HypothesisNotMet("semilinear matching is only guaranteed for n >= 3");
    auto s = match_semilinear_with_twist(f, lattice, std::nullopt, frame);
    if (!s)
        throw Falsification("no semilinear map induces the given lattice automorphism");
    return *s;
}

nlohmann::json semilinear_to_json(const SemilinearMap & s)
{
    return {{"matrix", matrix_to_json(s.matrix())}, {"twist", s.twist().power}};
}

SemilinearMap semilinear_from_json(const nlohmann::json & j)
{
    if (!j.is_object() || !j.contains("matrix") || !j.contains("twist") || !j["twist"].is_number_unsigned())
        throw InvalidArgument("semilinear map JSON needs matrix and twist");
    return SemilinearMap(matrix_from_json(j["matrix"]), FieldAutomorphism{j["twist"].get<unsigned>()});
}

nlohmann::json lattice_map_to_json(const LatticeMap & f, const SemilinearMap * witness)
{
    nlohmann::json j = {{"kind", "lattice"}, {"direction", to_string(f.direction)}, {"permutation", f.perm}};
    if (witness)
        j["witness"] = semilinear_to_json(*witness);
    return j;
}

LatticeMap lattice_map_from_json(const nlohmann::json & j)
{
    if (!j.is_object() || j.value("kind", "") != "lattice" || !j.contains("permutation"))
        throw InvalidArgument("not a lattice map");
    LatticeMap f;
    auto dir = j.value("direction", "automorphism");
    if (dir == "automorphism")
        f.direction = Direction::automorphism;
    else if (dir == "anti-automorphism")
        f.direction = Direction::anti_automorphism;
    else
        throw InvalidArgument("unknown direction: " + dir);
    try {
        f.perm = j["permutation"].get<Permutation>();
    } catch (const nlohmann::json::exception & e) {
        throw InvalidArgument(std::string("bad permutation: ") + e.what());
    }
    if (!is_bijection(f.perm))
        throw InvalidArgument("permutation is not a bijection");
    return f;
}

} // namespace projposet
