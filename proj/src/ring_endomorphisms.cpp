#include "projposet/ring_endomorphisms.hpp"

#include "projposet/error.hpp"
#include "projposet/json_io.hpp"
#include "projposet/lattice_automorphisms.hpp"

#include <cstdio>
#include <unordered_set>

namespace projposet {

namespace {

constexpr std::uint64_t exhaustive_elements = 4096;
constexpr std::uint64_t exhaustive_pairs_elements = 81;

std::uint64_t ring_size(const Field & f, std::size_t n)
{
    return matrix_count(f, n, n);
}

} // namespace

RingMap RingMap::conjugation(const SemilinearMap & s)
{
    Matrix m = s.matrix();
    Matrix mi = inverse(m);
    auto tw = s.twist();
    RingMap r(s.field(), s.n(), Direction::automorphism,
              [m, mi, tw](const Matrix & t) { return mi * t.twisted(tw) * m; });
    r.witness_ = s;
    return r;
}

RingMap RingMap::anti_conjugation(const SemilinearMap & s)
{
    Matrix m = s.matrix();
    Matrix mi = inverse(m);
    auto tw = s.twist();
    RingMap r(s.field(), s.n(), Direction::anti_automorphism,
              [m, mi, tw](const Matrix & t) { return mi * t.transposed().twisted(tw) * m; });
    r.witness_ = s;
    return r;
}

RingMap RingMap::transpose(FieldPtr field, std::size_t n)
{
    return anti_conjugation(SemilinearMap::identity(std::move(field), n));
}

RingMap RingMap::identity(FieldPtr field, std::size_t n)
{
    return conjugation(SemilinearMap::identity(std::move(field), n));
}

RingMap RingMap::from_function(FieldPtr field, std::size_t n, Direction direction, Fn fn)
{
    return RingMap(std::move(field), n, direction, std::move(fn));
}

RingMap RingMap::tabulate(const RingMap & map)
{
    auto total = ring_size(*map.field_, map.n_);
    if (total > max_table_size)
        throw InvalidArgument("matrix ring too large to tabulate");
    auto table = std::make_shared<std::vector<std::uint64_t>>(total);
    for (std::uint64_t c = 0; c < total; ++c)
        (*table)[c] = matrix_code(map(matrix_from_code(map.field_, map.n_, map.n_, c)));
    FieldPtr field = map.field_;
    std::size_t n = map.n_;
    RingMap r(field, n, map.direction_, [table, field, n](const Matrix & t) {
        return matrix_from_code(field, n, n, (*table)[matrix_code(t)]);
    });
    r.table_ = table;
    return r;
}

Matrix RingMap::operator()(const Matrix & t) const
{
    if (!same_field(t.field(), field_) || t.rows() != n_ || t.cols() != n_)
        throw InvalidArgument("matrix does not belong to this ring");
    return fn_(t);
}

RingMap compose(const RingMap & outer, const RingMap & inner)
{
    if (!same_field(outer.field(), inner.field()) || outer.n() != inner.n())
        throw InvalidArgument("composing ring maps on different rings");
    if (outer.witness() && inner.witness() && outer.direction() == Direction::automorphism &&
        inner.direction() == Direction::automorphism)
        return RingMap::conjugation(compose(*outer.witness(), *inner.witness()));
    return RingMap::from_function(outer.field(), outer.n(), compose(outer.direction(), inner.direction()),
                                  [outer, inner](const Matrix & t) { return outer(inner(t)); });
}

Matrix random_matrix(FieldPtr field, std::size_t n, std::mt19937_64 & rng)
{
    std::uniform_int_distribution<unsigned> pick(0, field->order() - 1);
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = static_cast<Elem>(pick(rng));
    return m;
}

Matrix random_invertible_matrix(FieldPtr field, std::size_t n, std::mt19937_64 & rng)
{
    for (;;) {
        auto m = random_matrix(field, n, rng);
        if (is_invertible(m))
            return m;
    }
}

std::vector<Matrix> ring_generators(FieldPtr field, std::size_t n)
{
    std::vector<Matrix> g;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g.push_back(Matrix::unit(field, n, i, j));
    for (unsigned k = 0; k < field->order(); ++k)
        g.push_back(Matrix::scalar(field, n, static_cast<Elem>(k)));
    std::size_t units = n * n;
    for (std::size_t a = 0; a < units; ++a)
        for (std::size_t b = 0; b < units; ++b)
            g.push_back(g[a] * g[b]);
    return g;
}

namespace {

/// Rank over GF(p) of the given matrices read as vectors of prime-field coordinates.
std::size_t prime_field_rank(const std::vector<Matrix> & ms, const Field & f)
{
    auto prime = Field::make(f.characteristic(), 1);
    if (ms.empty())
        return 0;
    std::size_t cols = ms.front().entries().size() * f.degree();
    Matrix big(prime, ms.size(), cols);
    for (std::size_t r = 0; r < ms.size(); ++r) {
        std::size_t c = 0;
        for (auto e : ms[r].entries())
            for (auto coeff : f.coefficients(e))
                big(r, c++) = static_cast<Elem>(coeff);
    }
    return rank(big);
}

std::string fnv_digest(const std::vector<Matrix> & ms)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto & m : ms)
        for (auto e : m.entries()) {
            h ^= e;
            h *= 1099511628211ULL;
        }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

CheckReport verify_ring_map(const RingMap & phi, const RingVerifyOptions & options)
{
    const auto & field = phi.field();
    const auto n = phi.n();
    const bool anti = phi.direction() == Direction::anti_automorphism;
    const auto total = ring_size(*field, n);
    CheckReport report;

    std::vector<Matrix> singles;
    std::vector<std::pair<Matrix, Matrix>> pairs;
    if (total <= exhaustive_elements) {
        for (std::uint64_t c = 0; c < total; ++c)
            singles.push_back(matrix_from_code(field, n, n, c));
    } else {
        singles = ring_generators(field, n);
        std::mt19937_64 rng(options.seed);
        for (std::size_t s = 0; s < options.random_samples; ++s)
            singles.push_back(random_matrix(field, n, rng));
    }
    if (total <= exhaustive_pairs_elements) {
        for (const auto & a : singles)
            for (const auto & b : singles)
                pairs.emplace_back(a, b);
    } else {
        auto gens = ring_generators(field, n);
        std::size_t units = n * n + field->order();
        for (std::size_t a = 0; a < units; ++a)
            for (std::size_t b = 0; b < units; ++b)
                pairs.emplace_back(gens[a], gens[b]);
        std::mt19937_64 rng(options.seed + 1);
        for (std::size_t s = 0; s < options.random_samples; ++s)
            pairs.emplace_back(random_matrix(field, n, rng), random_matrix(field, n, rng));
    }

    auto & unital = report.add("unital");
    unital.expect(phi(Matrix::identity(field, n)) == Matrix::identity(field, n));

    auto & additive = report.add("additive");
    auto & mult = report.add(anti ? "reverses_multiplication" : "multiplicative");
    for (const auto & [a, b] : pairs) {
        auto fa = phi(a), fb = phi(b);
        additive.expect_lazy(phi(a + b) == fa + fb, [&] { return nlohmann::json{{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}}; });
        auto prod = anti ? fb * fa : fa * fb;
        mult.expect_lazy(phi(a * b) == prod, [&] { return nlohmann::json{{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}}; });
    }

    auto & bij = report.add("bijective");
    if (total <= exhaustive_elements) {
        std::unordered_set<std::uint64_t> images;
        for (const auto & t : singles)
            images.insert(matrix_code(phi(t)));
        bij.expect_lazy(images.size() == total, [&] { return nlohmann::json{{"distinct_images", images.size()}, {"ring_size", total}}; });
    } else {
        // additive + GF(p)-independent images of a GF(p)-basis => injective
        std::vector<Matrix> basis_images;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (unsigned t = 0; t < field->degree(); ++t) {
                    std::vector<unsigned> coeffs(field->degree(), 0);
                    coeffs[t] = 1;
                    Elem lambda = field->from_coefficients(coeffs);
                    basis_images.push_back(phi(Matrix::unit(field, n, i, j).scaled(lambda)));
                }
        auto r = prime_field_rank(basis_images, *field);
        bij.expect_lazy(r == basis_images.size(), [&] { return nlohmann::json{{"rank", r}, {"expected", basis_images.size()}}; });
    }
    return report;
}

nlohmann::json ring_map_to_json(const RingMap & phi)
{
    nlohmann::json j = {{"direction", to_string(phi.direction())}, {"field", phi.field()->name()}, {"n", phi.n()}};
    if (phi.witness())
        j["S"] = semilinear_to_json(*phi.witness());
    auto gens = ring_generators(phi.field(), phi.n());
    j["verified_on"] = {{"generators", gens.size()}, {"digest", fnv_digest(gens)}};
    return j;
}

ExtractionResult extract_semilinear_from_ring_iso(const RingMap & phi, const ExtractionOptions & options)
{
    if (phi.direction() != Direction::automorphism)
        throw InvalidArgument("extraction needs a ring automorphism");
    const auto & field = phi.field();
    const auto & F = *field;
    const auto n = phi.n();
    if (options.x0_scale == 0 || options.y0_scale == 0 || options.x0_scale >= F.order() ||
        options.y0_scale >= F.order())
        throw InvalidArgument("x0 and y0 scales must be nonzero field elements");

    CheckReport verification = verify_ring_map(phi, options.verify);
    if (!verification.passed())
        throw Falsification("ring map failed verification: " + verification.to_json().dump());

    // sigma from the action on the center
    std::vector<Elem> sigma_table(F.order());
    for (unsigned k = 0; k < F.order(); ++k) {
        auto img = phi(Matrix::scalar(field, n, static_cast<Elem>(k)));
        Elem kk = img(0, 0);
        if (img != Matrix::scalar(field, n, kk))
            throw Falsification("image of a scalar matrix is not scalar");
        sigma_table[k] = kk;
    }
    std::optional<FieldAutomorphism> sigma;
    for (auto s : field_automorphisms(F)) {
        bool all = true;
        for (unsigned k = 0; k < F.order() && all; ++k)
            all = F.apply(s, static_cast<Elem>(k)) == sigma_table[k];
        if (all) {
            sigma = s;
            break;
        }
    }
    if (!sigma)
        throw Falsification("action on the center is not a field automorphism");

    Matrix p = Matrix::unit(field, n, 0, 0);
    Matrix phi_p = phi(p);
    auto im = image_basis(phi_p);
    if (im.rows() != 1)
        throw Falsification("image of a rank-1 idempotent does not have rank 1");
    std::vector<Elem> y0(n);
    for (std::size_t j = 0; j < n; ++j)
        y0[j] = F.mul(options.y0_scale, im(0, j));
    Elem x0_inv = F.inv(options.x0_scale);

    // U_x: x0 = c e1 goes to x, span{e2..en} (= Ker p) goes to 0
    auto s_of = [&](std::span<const Elem> x) {
        Matrix u(field, n, n);
        for (std::size_t j = 0; j < n; ++j)
            u(0, j) = F.mul(x0_inv, x[j]);
        return row_times(y0, phi(u));
    };

    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Elem> e(n, 0);
        e[i] = 1;
        auto v = s_of(e);
        std::copy(v.begin(), v.end(), m.row(i).begin());
    }

    ExtractionResult out{SemilinearMap::identity(field, n), *sigma, {}};
    auto & singular = out.report.add("s_is_bijective");
    singular.expect_lazy(is_invertible(m), [&] { return nlohmann::json{{"matrix", matrix_to_json(m)}}; });
    if (!singular.passed)
        throw Falsification("extracted S is singular");
    SemilinearMap s(m, *sigma);

    // the vectors x checked: all of them for small ambients, else coordinates and random
    std::vector<std::vector<Elem>> xs;
    std::uint64_t vectors = matrix_count(F, 1, n);
    std::mt19937_64 rng(options.verify.seed + 2);
    if (vectors <= 4096) {
        for (std::uint64_t c = 0; c < vectors; ++c) {
            auto v = matrix_from_code(field, 1, n, c);
            xs.push_back(v.entries());
        }
    } else {
        std::uniform_int_distribution<unsigned> pick(0, F.order() - 1);
        for (std::size_t k = 0; k < 200; ++k) {
            std::vector<Elem> v(n);
            for (auto & c : v)
                c = static_cast<Elem>(pick(rng));
            xs.push_back(std::move(v));
        }
    }
    auto & additive = out.report.add("s_is_additive");
    auto & semilinear = out.report.add("s_is_sigma_semilinear");
    auto & formula = out.report.add("s_agrees_with_construction");
    std::size_t pair_limit = std::min<std::size_t>(xs.size(), 64);
    for (std::size_t a = 0; a < xs.size(); ++a) {
        auto sa = s_of(xs[a]);
        formula.expect_lazy(sa == s.apply(xs[a]), [&] { return nlohmann::json{{"x", xs[a]}}; });
        for (std::size_t b = 0; b < pair_limit; ++b) {
            std::vector<Elem> sum(n);
            for (std::size_t j = 0; j < n; ++j)
                sum[j] = F.add(xs[a][j], xs[b][j]);
            auto sb = s_of(xs[b]);
            auto ssum = s_of(sum);
            bool ok = true;
            for (std::size_t j = 0; j < n; ++j)
                ok = ok && ssum[j] == F.add(sa[j], sb[j]);
            additive.expect_lazy(ok, [&] { return nlohmann::json{{"x", xs[a]}, {"y", xs[b]}}; });
        }
        for (unsigned l = 0; l < F.order(); ++l) {
            std::vector<Elem> lx(n);
            for (std::size_t j = 0; j < n; ++j)
                lx[j] = F.mul(static_cast<Elem>(l), xs[a][j]);
            auto slx = s_of(lx);
            bool ok = true;
            for (std::size_t j = 0; j < n; ++j)
                ok = ok && slx[j] == F.mul(F.apply(*sigma, static_cast<Elem>(l)), sa[j]);
            semilinear.expect_lazy(ok, [&] { return nlohmann::json{{"x", xs[a]}, {"lambda", l}}; });
        }
    }

    auto & conj = out.report.add("phi_is_conjugation_by_s");
    auto candidate = RingMap::conjugation(s);
    std::vector<Matrix> ts;
    auto total = ring_size(F, n);
    if (phi.extensional() || total <= exhaustive_elements) {
        for (std::uint64_t c = 0; c < total; ++c)
            ts.push_back(matrix_from_code(field, n, n, c));
    } else {
        ts = ring_generators(field, n);
        std::mt19937_64 trng(options.verify.seed + 3);
        for (std::size_t k = 0; k < options.verify.random_samples; ++k)
            ts.push_back(random_matrix(field, n, trng));
    }
    for (const auto & t : ts)
        conj.expect_lazy(phi(t) == candidate(t), [&] { return nlohmann::json{{"t", matrix_to_json(t)}}; });

    out.s = s.normalized();
    return out;
}

ImKerResult check_im_ker_lemma(std::size_t n, FieldPtr field)
{
    ImKerResult r;
    auto idem = enumerate_idempotents(field, n);
    r.idempotents = idem.size();
    std::vector<Subspace> im, ker;
    for (const auto & p : idem) {
        im.push_back(Subspace::span(p));
        ker.push_back(Subspace::span(map_kernel_basis(p)));
    }
    auto & image = r.report.add("same_image_iff_qp_eq_q_and_pq_eq_p");
    auto & kernel = r.report.add("same_kernel_iff_qp_eq_p_and_pq_eq_q");
    for (std::size_t i = 0; i < idem.size(); ++i)
        for (std::size_t j = 0; j < idem.size(); ++j) {
            const auto & p = idem[i];
            const auto & q = idem[j];
            auto pq = p * q, qp = q * p;
            auto w = [&] { return nlohmann::json{{"p", matrix_to_json(p)}, {"q", matrix_to_json(q)}}; };
            image.expect_lazy((im[i] == im[j]) == (qp == q && pq == p), w);
            kernel.expect_lazy((ker[i] == ker[j]) == (qp == p && pq == q), w);
            ++r.pairs;
        }
    return r;
}

CheckReport check_center(FieldPtr field, std::size_t n)
{
    CheckReport report;
    const auto & F = *field;
    auto total = ring_size(F, n);
    if (total <= 6561) {
        auto & ex = report.add("center_is_scalars_exhaustive");
        std::vector<Matrix> all;
        for (std::uint64_t c = 0; c < total; ++c)
            all.push_back(matrix_from_code(field, n, n, c));
        std::size_t central = 0;
        for (const auto & z : all) {
            bool commutes = true;
            for (const auto & t : all)
                if (z * t != t * z) {
                    commutes = false;
                    break;
                }
            if (commutes) {
                ++central;
                ex.expect_lazy(z == Matrix::scalar(field, n, z(0, 0)), [&] { return nlohmann::json{{"central", matrix_to_json(z)}}; });
            }
        }
        ex.expect_lazy(central == F.order(), [&] { return nlohmann::json{{"central_count", central}}; });
    }

    // T E_ab - E_ab T = 0 for all a, b, as a linear system in the n^2 entries of T
    auto & lin = report.add("center_is_scalars_linear_system");
    std::size_t vars = n * n;
    Matrix sys(field, n * n * n * n, vars);
    std::size_t row = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j, ++row) {
                    // (T E_ab)_ij = T_ia [j == b];  (E_ab T)_ij = [i == a] T_bj
                    if (j == b)
                        sys(row, i * n + a) = F.add(sys(row, i * n + a), 1);
                    if (i == a)
                        sys(row, b * n + j) = F.sub(sys(row, b * n + j), 1);
                }
    auto k = kernel_basis(sys);
    Matrix id_vec(field, 1, vars);
    for (std::size_t i = 0; i < n; ++i)
        id_vec(0, i * n + i) = 1;
    lin.expect_lazy(k.rows() == 1 && Subspace::span(k) == Subspace::span(id_vec), [&] { return nlohmann::json{{"kernel_dim", k.rows()}}; });
    return report;
}

PosetMap restrict_to_projections(const RingMap & phi, const ProjectionPoset & poset)
{
    const auto & lat = poset.lattice();
    if (!same_field(phi.field(), lat.field()) || phi.n() != lat.n())
        throw InvalidArgument("ring map and poset have different ambients");
    const auto & field = lat.field();
    auto one = Matrix::identity(field, lat.n());
    PosetMap out;
    out.perm.resize(poset.size());
    for (std::size_t i = 0; i < poset.size(); ++i) {
        auto p = pair_to_idempotent(lat, poset.pair(i));
        auto fp = phi(p);
        if (!is_idempotent(fp))
            throw Falsification("image of an idempotent is not idempotent (projection " + std::to_string(i) + ")");
        if (phi(one - p) != one - fp)
            throw Falsification("Phi(1 - p) differs from 1 - Phi(p) (projection " + std::to_string(i) + ")");
        auto j = poset.index_of(idempotent_to_pair(lat, fp));
        if (!j)
            throw Falsification("image of an idempotent is not in P(L)");
        out.perm[i] = static_cast<std::uint16_t>(*j);
    }
    if (!is_poset_automorphism(poset, out.perm))
        throw Falsification("restriction is not an automorphism of P(L)");
    out.parity = classify_parity(out, poset);
    return out;
}

RingMap extend_even_to_ring_automorphism(const PosetMap & phi, const ProjectionPoset & poset,
                                         const std::optional<LatticeMap> & f)
{
    const auto & lat = poset.lattice();
    if (classify_parity(phi, poset) != Parity::even)
        throw InvalidArgument("only even maps extend to ring automorphisms");
    LatticeMap lf;
    if (lat.length() >= 4) {
        lf = decompose_poset_automorphism(phi, poset);
    } else {
        if (!f)
            throw HypothesisNotMet("length < 4: supply the lattice automorphism behind the even map");
        if (even_from_lattice_automorphism(*f, poset, false).perm != phi.perm)
            throw InvalidArgument("supplied lattice automorphism does not induce the even map");
        lf = *f;
    }
    auto s = match_semilinear(lf, lat);
    auto ring = RingMap::conjugation(s);
    if (restrict_to_projections(ring, poset).perm != phi.perm)
        throw Falsification("extension does not restrict to the given even map");
    return ring;
}

OddExtensionOutcome experiment_odd_extension(const PosetMap & psi, const ProjectionPoset & poset)
{
    const auto & lat = poset.lattice();
    if (classify_parity(psi, poset) != Parity::odd)
        throw InvalidArgument("the odd-extension experiment needs an odd map");
    OddExtensionOutcome out;
    out.g = recover_lattice_map(psi.perm, Parity::odd, poset);

    auto d = make_duality(BilinearForm::standard(lat.field(), lat.n()), lat);
    auto & tr = out.report.add("transpose_restricts_to_annihilator_swap");
    {
        auto t = restrict_to_projections(RingMap::transpose(lat.field(), lat.n()), poset);
        tr.expect(t.perm == odd_from_anti_automorphism(d, poset, false).perm);
    }

    LatticeMap f = compose(out.g, d);
    auto & kind = out.report.add("g_after_d_is_automorphism");
    kind.expect(f.direction == Direction::automorphism && is_lattice_automorphism(lat, f.perm));

    auto & match = out.report.add("semilinear_witness_found");
    auto s = lat.n() >= 2 ? match_semilinear_with_twist(f, lat, std::nullopt) : std::nullopt;
    match.expect_lazy(s.has_value(), [&] { return nlohmann::json{{"f", f.perm}}; });
    if (!s)
        return out;

    auto & restricts = out.report.add("anti_conjugation_restricts_to_psi");
    auto candidate = RingMap::anti_conjugation(*s);
    auto ring_ok = verify_ring_map(candidate);
    restricts.expect_lazy(ring_ok.passed(), [&] { return nlohmann::json{{"ring_check", ring_ok.to_json()}}; });
    auto r = restrict_to_projections(candidate, poset);
    restricts.expect(r.perm == psi.perm);
    out.found = restricts.passed;
    if (out.found)
        out.witness = s;
    return out;
}

} // namespace projposet
