#include "projposet/poset_automorphisms.hpp"

#include "projposet/error.hpp"
#include "projposet/lattice_automorphisms.hpp"
#include "projposet/semilinear.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <bitset>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace projposet {

std::size_t PermutationHash::operator()(const Permutation & p) const
{
    return boost::hash_range(p.begin(), p.end());
}

namespace {

using PermSet = std::unordered_set<Permutation, PermutationHash>;

Permutation lift(const LatticeMap & h, const ProjectionPoset & poset, bool swap)
{
    const auto & lat = poset.lattice();
    if (h.perm.size() != lat.size())
        throw InvalidArgument("lattice map does not belong to this lattice");
    Permutation phi(poset.size());
    for (std::size_t i = 0; i < poset.size(); ++i) {
        const auto & p = poset.pair(i);
        std::size_t a = h.perm[p.image], b = h.perm[p.kernel];
        auto j = swap ? poset.index_of(b, a) : poset.index_of(a, b);
        if (!j)
            throw Falsification("image of pair (" + std::to_string(p.image) + ", " + std::to_string(p.kernel) +
                                ") is not in P(L)");
        phi[i] = static_cast<std::uint16_t>(*j);
    }
    return phi;
}

} // namespace

PosetMap even_from_lattice_automorphism(const LatticeMap & f, const ProjectionPoset & poset, bool verify)
{
    if (f.direction != Direction::automorphism)
        throw InvalidArgument("even maps come from lattice automorphisms");
    PosetMap phi{lift(f, poset, false), Parity::even};
    if (verify && !is_poset_automorphism(poset, phi.perm))
        throw Falsification("(f(a), f(b)) is not an automorphism of P(L)");
    return phi;
}

PosetMap odd_from_anti_automorphism(const LatticeMap & g, const ProjectionPoset & poset, bool verify)
{
    if (g.direction != Direction::anti_automorphism)
        throw InvalidArgument("odd maps come from lattice anti-automorphisms");
    PosetMap phi{lift(g, poset, true), Parity::odd};
    if (verify && !is_poset_automorphism(poset, phi.perm))
        throw Falsification("(g(b), g(a)) is not an automorphism of P(L)");
    return phi;
}

bool is_poset_automorphism(const ProjectionPoset & poset, const Permutation & phi, bool require_ortho)
{
    if (phi.size() != poset.size() || !is_bijection(phi))
        return false;
    for (std::size_t i = 0; i < poset.size(); ++i) {
        if (require_ortho && phi[poset.ortho(i)] != poset.ortho(phi[i]))
            return false;
        auto mapped = poset.empty_set();
        const auto & up = poset.up_set(i);
        for (auto j = up.find_first(); j != ProjectionPoset::Bitset::npos; j = up.find_next(j))
            mapped.set(phi[j]);
        if (mapped != poset.up_set(phi[i]))
            return false;
    }
    return true;
}

ParityVerdict check_parity(const Permutation & phi, const ProjectionPoset & poset)
{
    if (phi.size() != poset.size())
        throw InvalidArgument("map does not belong to this poset");
    ParityVerdict v;
    for (const auto & cls : poset.image_classes()) {
        for (std::size_t x = 0; x < cls.size(); ++x)
            for (std::size_t y = x + 1; y < cls.size(); ++y) {
                const auto & p = poset.pair(phi[cls[x]]);
                const auto & q = poset.pair(phi[cls[y]]);
                Parity here = p.image == q.image ? Parity::even : p.kernel == q.kernel ? Parity::odd : Parity::unknown;
                if (v.pairs_checked++ == 0) {
                    v.parity = here;
                    v.consistent = true;
                }
                if (here == Parity::unknown || here != v.parity) {
                    if (v.consistent)
                        v.witness = {{"p", cls[x]}, {"q", cls[y]}, {"phi_p", phi[cls[x]]}, {"phi_q", phi[cls[y]]}};
                    v.consistent = false;
                }
            }
    }
    if (v.pairs_checked == 0)
        throw HypothesisNotMet("P(L) has no two projections sharing an image (n < 2)");
    return v;
}

Parity classify_parity(const PosetMap & phi, const ProjectionPoset & poset)
{
    auto v = check_parity(phi.perm, poset);
    if (!v.consistent)
        throw Falsification("parity verdict is inconsistent across image-sharing pairs: " + v.witness.dump());
    return v.parity;
}

LatticeMap recover_lattice_map(const Permutation & phi, Parity parity, const ProjectionPoset & poset)
{
    if (parity == Parity::unknown)
        throw InvalidArgument("cannot recover a lattice map without a parity");
    const auto & lat = poset.lattice();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> h(lat.size(), unset);
    auto put = [&](std::size_t x, std::size_t y, std::size_t i) {
        if (h[x] != unset && h[x] != y)
            throw Falsification("recovered lattice map is not single-valued at element " + std::to_string(x) +
                                " (projection " + std::to_string(i) + ")");
        h[x] = y;
    };
    for (std::size_t i = 0; i < poset.size(); ++i) {
        const auto & p = poset.pair(i);
        const auto & q = poset.pair(phi[i]);
        if (parity == Parity::even) {
            put(p.image, q.image, i);
            put(p.kernel, q.kernel, i);
        } else {
            put(p.kernel, q.image, i);
            put(p.image, q.kernel, i);
        }
    }
    LatticeMap f;
    f.direction = parity == Parity::even ? Direction::automorphism : Direction::anti_automorphism;
    f.perm.resize(lat.size());
    for (std::size_t x = 0; x < lat.size(); ++x) {
        if (h[x] == unset)
            throw Falsification("recovered lattice map is undefined at element " + std::to_string(x));
        f.perm[x] = static_cast<std::uint16_t>(h[x]);
    }
    if (!is_lattice_map_of_kind(lat, f))
        throw Falsification("recovered map is not a lattice " + to_string(f.direction));
    Permutation back = lift(f, poset, parity == Parity::odd);
    if (back != phi)
        throw Falsification("recovered lattice map does not reproduce the poset map");
    return f;
}

LatticeMap decompose_poset_automorphism(const PosetMap & phi, const ProjectionPoset & poset)
{
    require_length_at_least_four(poset.lattice());
    return recover_lattice_map(phi.perm, classify_parity(phi, poset), poset);
}

// ---------------------------------------------------------------------------
// Poset automorphism search

namespace {

constexpr std::size_t max_poset_atoms = 256;
using AtomSet = std::bitset<max_poset_atoms>;

struct PosetAtomData {
    std::size_t a = 0;
    std::vector<std::size_t> atoms;
    std::vector<std::vector<std::uint16_t>> atoms_below;
    std::unordered_map<AtomSet, std::uint16_t> element_of;
    std::vector<std::uint32_t> sig;
    std::vector<AtomSet> compat;
    std::vector<AtomSet> initial;
};

PosetAtomData prepare(const ProjectionPoset & poset, bool require_ortho)
{
    PosetAtomData d;
    d.atoms = poset.atoms();
    d.a = d.atoms.size();
    if (d.a > max_poset_atoms)
        throw InvalidArgument("poset automorphism search supports at most 256 atoms");

    std::vector<AtomSet> below(poset.size());
    d.atoms_below.resize(poset.size());
    for (std::size_t e = 0; e < poset.size(); ++e)
        for (std::size_t i = 0; i < d.a; ++i)
            if (poset.leq(d.atoms[i], e)) {
                below[e].set(i);
                d.atoms_below[e].push_back(static_cast<std::uint16_t>(i));
            }
    for (std::size_t e = 0; e < poset.size(); ++e)
        if (!d.element_of.emplace(below[e], static_cast<std::uint16_t>(e)).second)
            throw HypothesisNotMet("poset is not atomistic: two elements have the same atoms");
    for (std::size_t x = 0; x < poset.size(); ++x)
        for (std::size_t y = 0; y < poset.size(); ++y)
            if (poset.leq(x, y) != ((below[x] & ~below[y]).none()))
                throw HypothesisNotMet("poset order is not inclusion of atom sets");

    std::size_t top_height = 0;
    for (std::size_t e = 0; e < poset.size(); ++e)
        top_height = std::max(top_height, poset.height(e));
    std::vector<ProjectionPoset::Bitset> by_height(top_height + 1, poset.empty_set());
    for (std::size_t e = 0; e < poset.size(); ++e)
        by_height[poset.height(e)].set(e);

    std::map<std::vector<std::size_t>, std::uint32_t> ids;
    d.sig.assign(d.a * d.a, 0);
    for (std::size_t x = 0; x < d.a; ++x)
        for (std::size_t y = 0; y < d.a; ++y) {
            std::vector<std::size_t> key;
            if (x == y) {
                key.push_back(0);
            } else {
                key.push_back(1);
                if (require_ortho)
                    key.push_back(poset.leq(d.atoms[x], poset.ortho(d.atoms[y])) ? 1 : 0);
                auto common = poset.up_set(d.atoms[x]) & poset.up_set(d.atoms[y]);
                for (std::size_t h = 2; h <= top_height; ++h)
                    key.push_back((common & by_height[h]).count());
                key.push_back(poset.join(d.atoms[x], d.atoms[y]).has_value() ? 1 : 0);
            }
            auto [it, _] = ids.emplace(std::move(key), static_cast<std::uint32_t>(ids.size()));
            d.sig[x * d.a + y] = it->second;
        }

    d.compat.assign(ids.size() * d.a, AtomSet{});
    for (std::size_t t = 0; t < d.a; ++t)
        for (std::size_t y = 0; y < d.a; ++y)
            d.compat[d.sig[t * d.a + y] * d.a + t].set(y);

    std::vector<std::vector<std::uint32_t>> profile(d.a);
    for (std::size_t x = 0; x < d.a; ++x) {
        profile[x].assign(d.sig.begin() + static_cast<std::ptrdiff_t>(x * d.a),
                          d.sig.begin() + static_cast<std::ptrdiff_t>((x + 1) * d.a));
        std::sort(profile[x].begin(), profile[x].end());
    }
    d.initial.assign(d.a, AtomSet{});
    for (std::size_t x = 0; x < d.a; ++x)
        for (std::size_t t = 0; t < d.a; ++t)
            if (profile[x] == profile[t])
                d.initial[x].set(t);
    return d;
}

std::optional<Permutation> extend_atom_map(const ProjectionPoset & poset, const PosetAtomData & d,
                                           const std::vector<std::uint16_t> & image, bool require_ortho)
{
    Permutation perm(poset.size());
    for (std::size_t e = 0; e < poset.size(); ++e) {
        AtomSet s;
        for (auto i : d.atoms_below[e])
            s.set(image[i]);
        auto it = d.element_of.find(s);
        if (it == d.element_of.end())
            return std::nullopt;
        perm[e] = it->second;
    }
    if (require_ortho)
        for (std::size_t e = 0; e < poset.size(); ++e)
            if (perm[poset.ortho(e)] != poset.ortho(perm[e]))
                return std::nullopt;
    return perm;
}

class PosetSearch {
public:
    PosetSearch(const ProjectionPoset & poset, const PosetAtomData & d, bool require_ortho, SearchControl & ctl) :
        poset_(poset), d_(d), require_ortho_(require_ortho), ctl_(ctl), a_(d.a), doms_((a_ + 1) * a_),
        assign_(a_, -1)
    {
    }

    std::size_t choose(const AtomSet * dom) const
    {
        std::size_t best = a_, best_count = max_poset_atoms + 1;
        for (std::size_t x = 0; x < a_; ++x) {
            if (assign_[x] >= 0)
                continue;
            auto c = dom[x].count();
            if (c < best_count) {
                best = x;
                best_count = c;
            }
        }
        return best;
    }

    void branch(std::size_t x, std::size_t t)
    {
        std::copy(d_.initial.begin(), d_.initial.end(), doms_.begin());
        if (!ctl_.tick())
            return;
        if (assign_step(0, x, t))
            descend(1);
        assign_[x] = -1;
    }

    std::vector<std::pair<std::vector<std::uint16_t>, Permutation>> take_results() { return std::move(found_); }

private:
    bool assign_step(std::size_t level, std::size_t x, std::size_t t)
    {
        const AtomSet * dom = &doms_[level * a_];
        AtomSet * nd = &doms_[(level + 1) * a_];
        std::copy(dom, dom + a_, nd);
        assign_[x] = static_cast<int>(t);
        nd[x].reset();
        nd[x].set(t);
        const std::uint32_t * row = &d_.sig[x * a_];
        for (std::size_t r = 0; r < a_; ++r) {
            if (assign_[r] >= 0)
                continue;
            nd[r] &= d_.compat[row[r] * a_ + t];
            nd[r].reset(t);
            if (nd[r].none())
                return false;
        }
        return true;
    }

    void descend(std::size_t level)
    {
        const AtomSet * dom = &doms_[level * a_];
        std::size_t x = choose(dom);
        if (x == a_) {
            leaf(dom);
            return;
        }
        if (dom[x].count() == 1) {
            // every open domain may already be a singleton; try the forced completion
            bool forced = true;
            for (std::size_t r = 0; r < a_ && forced; ++r)
                if (assign_[r] < 0 && dom[r].count() != 1)
                    forced = false;
            if (forced) {
                if (ctl_.tick())
                    leaf(dom);
                return;
            }
        }
        const auto & cand = dom[x];
        for (std::size_t t = cand._Find_first(); t < max_poset_atoms; t = cand._Find_next(t)) {
            if (!ctl_.tick())
                break;
            if (assign_step(level, x, t))
                descend(level + 1);
            assign_[x] = -1;
        }
    }

    void leaf(const AtomSet * dom)
    {
        std::vector<std::uint16_t> image(a_);
        AtomSet used;
        for (std::size_t x = 0; x < a_; ++x) {
            std::size_t t = assign_[x] >= 0 ? static_cast<std::size_t>(assign_[x]) : dom[x]._Find_first();
            if (used.test(t))
                return;
            used.set(t);
            image[x] = static_cast<std::uint16_t>(t);
        }
        if (auto perm = extend_atom_map(poset_, d_, image, require_ortho_))
            found_.emplace_back(std::move(image), std::move(*perm));
    }

    const ProjectionPoset & poset_;
    const PosetAtomData & d_;
    bool require_ortho_;
    SearchControl & ctl_;
    std::size_t a_;
    std::vector<AtomSet> doms_;
    std::vector<int> assign_;
    std::vector<std::pair<std::vector<std::uint16_t>, Permutation>> found_;
};

nlohmann::json checkpoint_header(const ProjectionPoset & poset, bool require_ortho, std::size_t branches)
{
    return {{"kind", "poset-automorphism-checkpoint"},
            {"version", 1},
            {"field", poset.lattice().field()->name()},
            {"n", poset.lattice().n()},
            {"poset_size", poset.size()},
            {"require_ortho", require_ortho},
            {"branches", branches}};
}

struct ResumedBranch {
    std::uint64_t nodes = 0;
    std::vector<std::vector<std::uint16_t>> images;
};

std::map<std::size_t, ResumedBranch> read_checkpoint(const std::string & path, const nlohmann::json & header)
{
    std::map<std::size_t, ResumedBranch> done;
    std::ifstream in(path);
    if (!in)
        return done;
    std::string line;
    if (!std::getline(in, line) || line.empty())
        return done;
    nlohmann::json h;
    try {
        h = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &) {
        throw InvalidArgument("checkpoint " + path + " has an unreadable header");
    }
    if (h != header)
        throw InvalidArgument("checkpoint " + path + " belongs to a different search");
    while (std::getline(in, line)) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception &) {
            break; // torn final line from an interrupted write
        }
        ResumedBranch b;
        b.nodes = j.at("nodes").get<std::uint64_t>();
        b.images = j.at("maps").get<std::vector<std::vector<std::uint16_t>>>();
        done[j.at("branch").get<std::size_t>()] = std::move(b);
    }
    return done;
}

} // namespace

PosetSearchResult enumerate_poset_automorphisms(const ProjectionPoset & poset, const PosetSearchOptions & options)
{
    const bool ortho = options.require_ortho;
    PosetAtomData d = prepare(poset, ortho);
    SearchControl ctl(options.limits.node_budget);

    PosetSearch probe(poset, d, ortho, ctl);
    std::size_t x0 = probe.choose(d.initial.data());
    std::vector<std::size_t> firsts;
    if (x0 < d.a)
        for (std::size_t t = d.initial[x0]._Find_first(); t < max_poset_atoms; t = d.initial[x0]._Find_next(t))
            firsts.push_back(t);

    PosetSearchResult result;
    result.branches = firsts.size();
    std::vector<std::vector<Permutation>> per_branch(firsts.size());
    std::vector<bool> pending(firsts.size(), true);
    std::uint64_t resumed_nodes = 0;

    std::ofstream ckpt;
    std::mutex ckpt_mutex;
    if (!options.checkpoint.empty()) {
        auto header = checkpoint_header(poset, ortho, firsts.size());
        auto done = read_checkpoint(options.checkpoint, header);
        for (auto & [b, rb] : done) {
            if (b >= firsts.size())
                throw InvalidArgument("checkpoint names a branch that does not exist");
            for (const auto & img : rb.images) {
                auto perm = extend_atom_map(poset, d, img, ortho);
                if (!perm || img.size() != d.a)
                    throw InvalidArgument("checkpoint holds a map that is not a poset automorphism");
                per_branch[b].push_back(std::move(*perm));
            }
            pending[b] = false;
            resumed_nodes += rb.nodes;
            ++result.branches_resumed;
        }
        bool fresh = done.empty();
        if (fresh) {
            ckpt.open(options.checkpoint, std::ios::trunc);
            ckpt << header.dump() << '\n';
        } else {
            ckpt.open(options.checkpoint, std::ios::app);
        }
        if (!ckpt)
            throw InvalidArgument("cannot write checkpoint " + options.checkpoint);
        ckpt.flush();
    }

    std::vector<std::size_t> todo;
    for (std::size_t b = 0; b < firsts.size(); ++b)
        if (pending[b])
            todo.push_back(b);

    run_branches(todo.size(), options.limits.jobs, [&](std::size_t k) {
        std::size_t b = todo[k];
        auto before = ctl.nodes();
        PosetSearch s(poset, d, ortho, ctl);
        s.branch(x0, firsts[b]);
        if (ctl.stopped())
            return; // an interrupted branch is neither stored nor checkpointed
        auto found = s.take_results();
        std::lock_guard lock(ckpt_mutex);
        if (ckpt.is_open()) {
            nlohmann::json line = {{"branch", b}, {"nodes", ctl.nodes() - before}, {"maps", nlohmann::json::array()}};
            for (const auto & f : found)
                line["maps"].push_back(f.first);
            ckpt << line.dump() << '\n';
            ckpt.flush();
        }
        for (auto & f : found)
            per_branch[b].push_back(std::move(f.second));
    });

    std::size_t total = 0;
    for (const auto & b : per_branch)
        total += b.size();
    if (ctl.exhausted())
        throw BudgetExceeded("poset automorphism search exceeded its node budget", resumed_nodes + ctl.nodes(), total);

    result.nodes = resumed_nodes + ctl.nodes();
    for (auto & b : per_branch)
        for (auto & p : b)
            result.maps.push_back({std::move(p), Parity::unknown});
    std::sort(result.maps.begin(), result.maps.end(), [](const auto & a, const auto & b) { return a.perm < b.perm; });
    return result;
}

// ---------------------------------------------------------------------------
// Group structure

namespace {

template <class Range>
PermSet to_set(const Range & maps)
{
    PermSet s;
    for (const auto & m : maps)
        s.insert(m.perm);
    return s;
}

} // namespace

CheckReport verify_semidirect_structure(const ProjectionPoset & poset, const SemidirectOptions & options)
{
    const auto & lat = poset.lattice();
    const auto & field = lat.field();
    if (!field->is_involutory(options.twist))
        throw HypothesisNotMet("the duality must come from an involutory field automorphism");

    CheckReport report;
    auto g0 = make_duality(BilinearForm::standard(field, lat.n(), options.twist), lat);
    auto & dual_check = report.add("duality_is_involutory_anti_automorphism");
    dual_check.expect(is_involutory(g0) && is_lattice_anti_automorphism(lat, g0.perm));

    auto aut = enumerate_lattice_automorphisms(lat).maps;
    auto anti = enumerate_lattice_anti_automorphisms(lat).maps;

    auto & lat_coset = report.add("lattice_anti_automorphisms_are_aut_coset");
    {
        auto aut_set = to_set(aut);
        auto gi = inverse(g0);
        lat_coset.expect_lazy(anti.size() == aut.size(), [&] { return nlohmann::json{{"anti", anti.size()}, {"aut", aut.size()}}; });
        for (const auto & h : anti)
            lat_coset.expect_lazy(aut_set.count(compose(h, gi).perm) == 1, [&] { return nlohmann::json{{"anti_automorphism", h.perm}}; });
    }

    std::vector<PosetMap> even;
    even.reserve(aut.size());
    for (const auto & f : aut)
        even.push_back(even_from_lattice_automorphism(f, poset, false));
    std::vector<PosetMap> odd;
    odd.reserve(anti.size());
    for (const auto & h : anti)
        odd.push_back(odd_from_anti_automorphism(h, poset, false));
    auto gamma = odd_from_anti_automorphism(g0, poset, true);
    auto gamma_inv = inverse(gamma);
    PermSet even_set = to_set(even);
    PermSet odd_set = to_set(odd);

    auto & involution = report.add("gamma_squared_is_identity");
    involution.expect(compose(gamma, gamma).perm == identity_permutation(poset.size()));

    auto & subgroup = report.add("even_maps_form_subgroup");
    subgroup.expect_lazy(even_set.size() == even.size(), [&] { return nlohmann::json{{"duplicates", even.size() - even_set.size()}}; });
    subgroup.expect_lazy(even_set.count(identity_permutation(poset.size())) == 1, [&] { return nlohmann::json{{"missing", "identity"}}; });
    for (const auto & e : even)
        subgroup.expect_lazy(even_set.count(inverse(e.perm)) == 1, [&] { return nlohmann::json{{"no_inverse_for", e.perm}}; });
    if (even.size() * even.size() <= 200000) {
        for (const auto & a : even)
            for (const auto & b : even)
                subgroup.expect_lazy(even_set.count(compose(a.perm, b.perm)) == 1, [&] { return nlohmann::json{{"a", a.perm}, {"b", b.perm}}; });
    } else {
        std::mt19937_64 rng(options.seed);
        std::uniform_int_distribution<std::size_t> pick(0, even.size() - 1);
        for (std::size_t s = 0; s < options.closure_samples; ++s) {
            const auto & a = even[pick(rng)];
            const auto & b = even[pick(rng)];
            subgroup.expect_lazy(even_set.count(compose(a.perm, b.perm)) == 1, [&] { return nlohmann::json{{"a", a.perm}, {"b", b.perm}}; });
        }
    }

    auto & normal = report.add("gamma_normalizes_even_maps");
    for (const auto & e : even)
        normal.expect_lazy(even_set.count(compose(compose(gamma.perm, e.perm), gamma_inv.perm)) == 1, [&] { return nlohmann::json{{"even", e.perm}}; });

    auto & coset = report.add("odd_maps_factor_uniquely_as_even_then_gamma");
    {
        coset.expect_lazy(odd_set.size() == odd.size() && odd.size() == even.size(), [&] { return nlohmann::json{{"odd", odd.size()}, {"even", even.size()}}; });
        PermSet factors;
        for (const auto & psi : odd) {
            // psi = e o gamma with e = psi o gamma^-1; e is unique because gamma is invertible
            auto e = compose(psi.perm, gamma_inv.perm);
            coset.expect_lazy(even_set.count(e) == 1, [&] { return nlohmann::json{{"odd", psi.perm}}; });
            factors.insert(std::move(e));
        }
        coset.expect_lazy(factors.size() == odd.size(), [&] { return nlohmann::json{{"distinct_factors", factors.size()}}; });
        for (const auto & e : even)
            coset.expect_lazy(odd_set.count(compose(e.perm, gamma.perm)) == 1, [&] { return nlohmann::json{{"even", e.perm}}; });
    }

    auto & parity = report.add("parity_verdicts_consistent");
    for (const auto & e : even) {
        auto v = check_parity(e.perm, poset);
        parity.expect_lazy(v.consistent && v.parity == Parity::even, [&] { return nlohmann::json{{"map", e.perm}, {"witness", v.witness}}; });
    }
    for (const auto & o : odd) {
        auto v = check_parity(o.perm, poset);
        parity.expect_lazy(v.consistent && v.parity == Parity::odd, [&] { return nlohmann::json{{"map", o.perm}, {"witness", v.witness}}; });
    }
    return report;
}

MainTheoremResult verify_main_theorem(const ProjectionPoset & poset, const MainTheoremOptions & options)
{
    const auto & lat = poset.lattice();
    require_length_at_least_four(lat);

    MainTheoremResult r;
    r.poset_size = poset.size();

    auto search = enumerate_poset_automorphisms(poset, options.search);
    r.enumerated = search.maps.size();
    r.nodes = search.nodes;

    auto aut = enumerate_lattice_automorphisms(lat, options.search.limits).maps;
    r.lattice_automorphisms = aut.size();
    auto & two_ways = r.report.add("aut_l_backtracking_equals_semilinear_generation");
    {
        auto gen = semilinear_lattice_automorphisms(lat);
        two_ways.expect_lazy(gen.failures == 0, [&] { return nlohmann::json{{"failed_pairs", gen.failures}}; });
        two_ways.expect_lazy(gen.maps == aut, [&] { return nlohmann::json{{"backtracking", aut.size()}, {"semilinear", gen.maps.size()}}; });
    }

    auto g0 = make_duality(BilinearForm::standard(lat.field(), lat.n()), lat);
    r.report.add("duality_is_involutory").expect(is_involutory(g0));

    auto & anti_check = r.report.add("anti_automorphisms_are_aut_then_duality");
    {
        auto anti = enumerate_lattice_anti_automorphisms(lat, options.search.limits).maps;
        PermSet coset;
        for (const auto & f : aut)
            coset.insert(compose(f, g0).perm);
        anti_check.expect_lazy(anti.size() == coset.size(), [&] { return nlohmann::json{{"anti", anti.size()}, {"aut_then_duality", coset.size()}}; });
        for (const auto & h : anti)
            anti_check.expect_lazy(coset.count(h.perm) == 1, [&] { return nlohmann::json{{"anti_automorphism", h.perm}}; });
    }

    std::vector<Permutation> constructed;
    constructed.reserve(2 * aut.size());
    auto & membership = r.report.add("constructed_pairs_stay_in_p");
    for (const auto & f : aut) {
        try {
            constructed.push_back(even_from_lattice_automorphism(f, poset, false).perm);
            membership.expect(true);
        } catch (const Falsification & e) {
            membership.expect_lazy(false, [&] { return nlohmann::json{{"f", f.perm}, {"error", e.what()}}; });
        }
        try {
            constructed.push_back(odd_from_anti_automorphism(compose(f, g0), poset, false).perm);
            membership.expect(true);
        } catch (const Falsification & e) {
            membership.expect_lazy(false, [&] { return nlohmann::json{{"g", compose(f, g0).perm}, {"error", e.what()}}; });
        }
    }

    auto & sampled = r.report.add("constructed_maps_are_automorphisms_sampled");
    {
        std::mt19937_64 rng(options.seed);
        std::size_t n = std::min(options.samples, constructed.size());
        std::vector<std::size_t> idx(constructed.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        for (std::size_t s = 0; s < n; ++s)
            sampled.expect_lazy(is_poset_automorphism(poset, constructed[idx[s]]), [&] { return nlohmann::json{{"map", constructed[idx[s]]}}; });
    }

    auto & decompose = r.report.add("every_enumerated_map_decomposes");
    auto & parity = r.report.add("parity_verdicts_consistent");
    for (const auto & phi : search.maps) {
        auto v = check_parity(phi.perm, poset);
        parity.expect_lazy(v.consistent, [&] { return nlohmann::json{{"map", phi.perm}, {"witness", v.witness}}; });
        if (!v.consistent) {
            decompose.expect_lazy(false, [&] { return nlohmann::json{{"map", phi.perm}, {"error", "no parity"}}; });
            continue;
        }
        (v.parity == Parity::even ? r.even : r.odd) += 1;
        try {
            recover_lattice_map(phi.perm, v.parity, poset);
            decompose.expect(true);
        } catch (const Falsification & e) {
            decompose.expect_lazy(false, [&] { return nlohmann::json{{"map", phi.perm}, {"error", e.what()}}; });
        }
    }

    auto & equal = r.report.add("constructed_set_equals_enumerated_set");
    {
        std::sort(constructed.begin(), constructed.end());
        auto distinct = static_cast<std::size_t>(std::unique(constructed.begin(), constructed.end()) - constructed.begin());
        constructed.resize(distinct);
        std::vector<Permutation> enumerated;
        enumerated.reserve(search.maps.size());
        for (const auto & m : search.maps)
            enumerated.push_back(m.perm);
        equal.expect_lazy(distinct == 2 * aut.size(), [&] { return nlohmann::json{{"distinct_constructed", distinct}, {"expected", 2 * aut.size()}}; });
        if (constructed != enumerated) {
            std::vector<Permutation> only_constructed, only_enumerated;
            std::set_difference(constructed.begin(), constructed.end(), enumerated.begin(), enumerated.end(),
                                std::back_inserter(only_constructed));
            std::set_difference(enumerated.begin(), enumerated.end(), constructed.begin(), constructed.end(),
                                std::back_inserter(only_enumerated));
            nlohmann::json w = {{"only_constructed", only_constructed.size()}, {"only_enumerated", only_enumerated.size()}};
            if (!only_enumerated.empty())
                w["example"] = only_enumerated.front();
            else if (!only_constructed.empty())
                w["example"] = only_constructed.front();
            equal.fail(std::move(w));
            ++equal.cases;
        } else {
            equal.expect(true);
        }
    }

    auto & closure = r.report.add("enumerated_maps_closed_under_composition_sampled");
    if (!search.maps.empty()) {
        PermSet all = to_set(search.maps);
        std::mt19937_64 rng(options.seed + 1);
        std::uniform_int_distribution<std::size_t> pick(0, search.maps.size() - 1);
        for (std::size_t s = 0; s < options.samples; ++s) {
            const auto & a = search.maps[pick(rng)].perm;
            const auto & b = search.maps[pick(rng)].perm;
            closure.expect_lazy(all.count(compose(a, b)) == 1, [&] { return nlohmann::json{{"a", a}, {"b", b}}; });
        }
    }
    return r;
}

nlohmann::json poset_map_to_json(const PosetMap & phi)
{
    return {{"kind", "poset"}, {"parity", to_string(phi.parity)}, {"permutation", phi.perm}};
}

PosetMap poset_map_from_json(const nlohmann::json & j)
{
    if (!j.is_object() || j.value("kind", "") != "poset" || !j.contains("permutation"))
        throw InvalidArgument("not a poset map");
    PosetMap phi;
    auto p = j.value("parity", "unknown");
    if (p == "even")
        phi.parity = Parity::even;
    else if (p == "odd")
        phi.parity = Parity::odd;
    else if (p == "unknown")
        phi.parity = Parity::unknown;
    else
        throw InvalidArgument("unknown parity: " + p);
    try {
        phi.perm = j["permutation"].get<Permutation>();
    } catch (const nlohmann::json::exception & e) {
        throw InvalidArgument(std::string("bad permutation: ") + e.what());
    }
    if (!is_bijection(phi.perm))
        throw InvalidArgument("permutation is not a bijection");
    return phi;
}

} // namespace projposet
