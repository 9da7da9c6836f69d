// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracles.hpp"

#include "projposet/cli.hpp"
#include "projposet/error.hpp"
#include "projposet/lattice_automorphisms.hpp"
#include "projposet/lattice_frame.hpp"
#include "projposet/poset_automorphisms.hpp"
#include "projposet/ring_endomorphisms.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace projposet;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string & what)
    {
        if (!ok) {
            pass = false;
            detail << " [" << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

PosetPtr poset(const char * field, std::size_t n)
{
    return ProjectionPoset::build(Lattice::enumerate(Field::parse(field), n));
}

const std::vector<std::pair<int, int>> small_ambients = {{2, 2}, {3, 2}, {2, 3}, {3, 3}};

void criterion_omp(Outcome & o)
{
    auto start = Clock::now();
    for (auto [n, p] : small_ambients) {
        auto P = poset(std::to_string(p).c_str(), n);
        auto tag = "n=" + std::to_string(n) + " q=" + std::to_string(p);
        o.require(verify_omp_axioms(*P).passed(), "omp axioms " + tag);
        auto expected = oracle::idempotents(n, p).size();
        o.require(P->size() == expected, "size " + std::to_string(P->size()) + " vs oracle " + std::to_string(expected));
        o.detail << " " << tag << ":" << P->size();
    }
    auto t = seconds_since(start);
    o.require(t < 10.0, "runtime");
    o.detail << " (" << t << " s)";
}

void criterion_correspondence(Outcome & o)
{
    auto start = Clock::now();
    for (auto [n, p] : small_ambients) {
        auto r = verify_projection_correspondence(n, Field::make(p, 1));
        o.require(r.report.passed(), "correspondence n=" + std::to_string(n) + " q=" + std::to_string(p));
        o.require(r.poset_size == r.idempotent_count, "bijection size");
    }
    auto t = seconds_since(start);
    o.require(t < 10.0, "runtime");
    o.detail << " (" << t << " s)";
}

/// Shared with criterion 9.
CheckReport main_theorem_report;
CheckReport semidirect_reports;

void criterion_main_theorem(Outcome & o, unsigned jobs)
{
    auto start = Clock::now();
    auto P = poset("2", 4);
    MainTheoremOptions opts;
    opts.search.limits.jobs = jobs;
    auto r = verify_main_theorem(*P, opts);
    main_theorem_report = r.report;
    o.require(r.report.passed(), "theorem checks");
    o.require(r.enumerated == 40320, "enumerated " + std::to_string(r.enumerated));
    o.require(r.lattice_automorphisms == 20160, "Aut L " + std::to_string(r.lattice_automorphisms));
    o.require(r.even == 20160 && r.odd == 20160, "even/odd split");
    auto pgl = normalized_invertible_matrices(P->lattice().field(), 4).size();
    o.require(pgl == 20160, "PGL(4,2) count");
    for (auto name : {"aut_l_backtracking_equals_semilinear_generation", "every_enumerated_map_decomposes",
                      "constructed_set_equals_enumerated_set"})
        o.require(r.report.find(name) && r.report.find(name)->passed, name);
    o.detail << " maps=" << r.enumerated << " even=" << r.even << " odd=" << r.odd << " (" << seconds_since(start)
             << " s)";
}

void criterion_fundamental(Outcome & o, unsigned jobs)
{
    for (auto [spec, n] : std::vector<std::pair<const char *, std::size_t>>{{"2", 3}, {"2", 4}, {"4", 3}}) {
        auto lat = Lattice::enumerate(Field::parse(spec), n);
        LatticeFrame frame(*lat);
        auto maps = enumerate_lattice_automorphisms(*lat, {jobs, 0}).maps;
        std::size_t matched = 0, twisted = 0;
        for (std::size_t i = 0; i < maps.size(); ++i) {
            try {
                auto s = match_semilinear(maps[i], *lat, &frame);
                bool exact = frame.induced(s) == maps[i].perm;
                if (i % 50 == 0)
                    exact = exact && induced_lattice_map(s, *lat).perm == maps[i].perm;
                matched += exact ? 1 : 0;
                if (s.twist().power != 0 && !match_semilinear_with_twist(maps[i], *lat, FieldAutomorphism{0}, &frame))
                    ++twisted;
            } catch (const Falsification &) {
            }
        }
        o.require(matched == maps.size(), std::string("matched ") + spec + "^" + std::to_string(n));
        if (std::string(spec) == "4")
            o.require(twisted > 0, "no witness needed the twist");
        o.detail << " GF(" << spec << ")^" << n << ":" << matched << "/" << maps.size();
        if (twisted)
            o.detail << " twisted=" << twisted;
    }
}

void criterion_duality_semidirect(Outcome & o)
{
    auto l3 = Lattice::enumerate(Field::make(2, 1), 3);
    o.require(is_involutory(make_duality(BilinearForm::standard(l3->field(), 3), *l3)), "GF(2)^3 duality");
    auto l4 = Lattice::enumerate(Field::make(2, 2), 2);
    auto hermitian = make_duality(BilinearForm::standard(l4->field(), 2, {1}), *l4);
    o.require(is_involutory(hermitian), "GF(4)^2 hermitian duality");
    for (auto n : {3u, 4u}) {
        auto r = verify_semidirect_structure(*poset("2", n));
        semidirect_reports.merge(r);
        o.require(r.passed(), "semidirect n=" + std::to_string(n));
        for (auto name : {"even_maps_form_subgroup", "gamma_normalizes_even_maps",
                          "odd_maps_factor_uniquely_as_even_then_gamma", "gamma_squared_is_identity"}) {
            auto c = r.find(name);
            o.require(c && c->passed && c->cases > 0, std::string(name) + " n=" + std::to_string(n));
        }
        o.detail << " n=" << n << ":" << (r.passed() ? "ok" : "fail");
    }
}

void criterion_im_ker(Outcome & o)
{
    for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
        auto r = check_im_ker_lemma(n, Field::make(p, 1));
        auto expected = oracle::idempotents(n, p).size();
        o.require(r.report.passed(), "lemma n=" + std::to_string(n) + " q=" + std::to_string(p));
        o.require(r.pairs == expected * expected, "pair count");
        std::uint64_t failures = 0;
        for (const auto & c : r.report.checks())
            failures += c.failures;
        o.detail << " n=" << n << " q=" << p << ":" << r.pairs << " pairs/" << failures << " counterexamples";
    }
}

void criterion_extraction(Outcome & o)
{
    const std::vector<std::tuple<const char *, std::size_t, unsigned>> ambients = {
        {"3", 3, 0}, {"5", 3, 0}, {"4", 2, 1}};
    for (const auto & [spec, n, twist] : ambients) {
        auto F = Field::parse(spec);
        std::mt19937_64 rng(2024);
        std::size_t ok = 0;
        const std::size_t cases = 100;
        for (std::size_t i = 0; i < cases; ++i) {
            SemilinearMap s(random_invertible_matrix(F, n, rng), {twist});
            auto conj = RingMap::conjugation(s);
            auto opaque =
                RingMap::from_function(F, n, Direction::automorphism, [conj](const Matrix & t) { return conj(t); });
            ExtractionOptions opts;
            opts.verify = {i + 1, 100};
            auto r = extract_semilinear_from_ring_iso(opaque, opts);
            auto check = r.report.find("phi_is_conjugation_by_s");
            if (r.report.passed() && check && check->cases >= 100 && r.s == s.normalized() && r.sigma == s.twist())
                ++ok;
        }
        o.require(ok == cases, std::string("GF(") + spec + ")");
        o.detail << " GF(" << spec << ")^" << n << " sigma=" << twist << ":" << ok << "/" << cases;
    }
}

std::size_t restriction_maps_checked = 0;

void criterion_restriction(Outcome & o)
{
    auto F = Field::make(2, 1);
    auto lat = Lattice::enumerate(F, 4);
    auto P = ProjectionPoset::build(lat);
    std::mt19937_64 rng(8);
    std::size_t even = 0;
    for (int i = 0; i < 100; ++i) {
        SemilinearMap s(random_invertible_matrix(F, 4, rng), {});
        auto r = restrict_to_projections(RingMap::conjugation(s), *P);
        even += r.parity == Parity::even ? 1 : 0;
        ++restriction_maps_checked;
    }
    o.require(even == 100, "conjugations restrict even");
    auto t = restrict_to_projections(RingMap::transpose(F, 4), *P);
    ++restriction_maps_checked;
    o.require(t.parity == Parity::odd, "transpose restricts odd");

    auto aut = enumerate_lattice_automorphisms(*lat).maps;
    std::vector<std::size_t> pick(aut.size());
    std::iota(pick.begin(), pick.end(), 0);
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(100);
    std::size_t round = 0;
    for (auto i : pick) {
        auto phi = even_from_lattice_automorphism(aut[i], *P);
        auto ring = extend_even_to_ring_automorphism(phi, *P);
        auto back = restrict_to_projections(ring, *P);
        ++restriction_maps_checked;
        round += back.perm == phi.perm && back.parity == Parity::even && verify_ring_map(ring, {i, 20}).passed();
    }
    o.require(round == 100, "extension round trip");
    o.detail << " even=" << even << "/100 transpose=" << to_string(t.parity) << " extend=" << round << "/100";
}

void criterion_parity(Outcome & o)
{
    for (const auto * report : {&main_theorem_report, &semidirect_reports}) {
        bool seen = false;
        for (const auto & c : report->checks())
            if (c.name == "parity_verdicts_consistent") {
                seen = true;
                o.require(c.passed && c.failures == 0, "parity verdicts");
            }
        o.require(seen, "parity check missing");
    }
    o.require(restriction_maps_checked == 201, "restriction sample");

    auto lat = Lattice::enumerate(Field::make(2, 1), 4);
    auto P = ProjectionPoset::build(lat);
    auto aut = enumerate_lattice_automorphisms(*lat).maps;
    auto anti = enumerate_lattice_anti_automorphisms(*lat).maps;
    std::mt19937_64 rng(20);
    std::vector<PosetMap> sample;
    for (int i = 0; i < 10; ++i) {
        sample.push_back(even_from_lattice_automorphism(aut[rng() % aut.size()], *P));
        sample.push_back(odd_from_anti_automorphism(anti[rng() % anti.size()], *P));
    }
    std::size_t agree = 0, total = 0;
    for (const auto & a : sample)
        for (const auto & b : sample) {
            auto c = compose(a, b);
            auto v = check_parity(c.perm, *P);
            agree += v.consistent && v.parity == c.parity ? 1 : 0;
            ++total;
        }
    o.require(agree == total, "composition table");
    o.detail << " compositions=" << agree << "/" << total;
}

void criterion_determinism(Outcome & o)
{
    const std::vector<std::pair<std::string, std::size_t>> runs = {
        {"enumerate-lattice", 3},        {"verify-omp", 3},      {"enumerate-lattice-autos", 3},
        {"verify-ftpg", 3},              {"verify-semidirect", 3}, {"ring-extract", 3},
        {"ring-restrict", 3},            {"ring-extend", 3},     {"ring-odd-experiment", 3},
        {"verify-main-theorem", 4},      {"export-json", 3}};
    for (const auto & [verb, n] : runs) {
        CliOptions a;
        a.verb = verb;
        a.n = n;
        a.field = "2";
        a.seed = 77;
        CliOptions b = a;
        b.jobs = 3;
        auto ra = run_verb(a).report.dump(2);
        auto rb = run_verb(b).report.dump(2);
        auto rc = run_verb(a).report.dump(2);
        o.require(ra == rb && ra == rc, verb);
    }
    o.detail << " verbs=" << runs.size();
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Acceptance criteria"};
    unsigned jobs = 1;
    app.add_option("--jobs", jobs, "Worker threads for searches");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria = {
        {"OMP axioms and idempotent counts", criterion_omp},
        {"pair/idempotent order isomorphism", criterion_correspondence},
        {"automorphisms of P(L(GF(2)^4))", [&](Outcome & o) { criterion_main_theorem(o, jobs); }},
        {"semilinear witnesses for lattice automorphisms", [&](Outcome & o) { criterion_fundamental(o, jobs); }},
        {"duality and semidirect structure", criterion_duality_semidirect},
        {"image/kernel idempotent lemma", criterion_im_ker},
        {"semilinear map from ring automorphism", criterion_extraction},
        {"restriction and extension", criterion_restriction},
        {"parity algebra", criterion_parity},
        {"determinism", criterion_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception & e) {
            o.pass = false;
            o.detail << " exception: " << e.what();
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " -"
                  << o.detail.str() << std::endl;
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
