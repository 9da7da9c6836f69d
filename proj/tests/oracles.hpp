#pragma once

// Brute-force reference computations for prime fields, written against plain
// integer arithmetic mod p so that they share no code with the library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<int>;
using Mat = std::vector<std::vector<int>>;

inline std::vector<Vec> all_vectors(int n, int p)
{
    std::vector<Vec> out;
    int total = 1;
    for (int i = 0; i < n; ++i)
        total *= p;
    for (int c = 0; c < total; ++c) {
        Vec v(n);
        int x = c;
        for (int i = n - 1; i >= 0; --i) {
            v[i] = x % p;
            x /= p;
        }
        out.push_back(v);
    }
    return out;
}

inline int code(const Vec & v, int p)
{
    int c = 0;
    for (int x : v)
        c = c * p + x;
    return c;
}

/// A subspace as the sorted set of codes of its vectors.
using Space = std::vector<int>;

inline Space closure(const std::vector<Vec> & gens, int n, int p)
{
    std::set<int> seen{0};
    std::vector<Vec> members{Vec(n, 0)};
    for (const auto & g : gens) {
        std::vector<Vec> add;
        for (const auto & m : members)
            for (int s = 1; s < p; ++s) {
                Vec w(n);
                for (int i = 0; i < n; ++i)
                    w[i] = (m[i] + s * g[i]) % p;
                if (seen.insert(code(w, p)).second)
                    add.push_back(w);
            }
        members.insert(members.end(), add.begin(), add.end());
    }
    return {seen.begin(), seen.end()};
}

/// Every subspace of GF(p)^n, found by spanning every subset of at most n vectors.
inline std::set<Space> all_subspaces(int n, int p)
{
    auto vecs = all_vectors(n, p);
    std::set<Space> out{{0}};
    std::set<Space> frontier{{0}};
    for (int step = 0; step < n; ++step) {
        std::set<Space> next;
        for (const auto & s : frontier)
            for (const auto & v : vecs) {
                if (std::binary_search(s.begin(), s.end(), code(v, p)))
                    continue;
                std::vector<Vec> gens;
                for (int c : s)
                    gens.push_back(vecs[c]);
                gens.push_back(v);
                next.insert(closure(gens, n, p));
            }
        out.insert(next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

inline Mat mat_mul(const Mat & a, const Mat & b, int p)
{
    std::size_t n = a.size();
    Mat c(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
    return c;
}

inline std::vector<Mat> all_matrices(int n, int p)
{
    std::vector<Mat> out;
    for (const auto & v : all_vectors(n * n, p)) {
        Mat m(n, std::vector<int>(n));
        for (int i = 0; i < n * n; ++i)
            m[i / n][i % n] = v[i];
        out.push_back(m);
    }
    return out;
}

inline std::vector<Mat> idempotents(int n, int p)
{
    std::vector<Mat> out;
    for (const auto & m : all_matrices(n, p))
        if (mat_mul(m, m, p) == m)
            out.push_back(m);
    return out;
}

inline Mat one_minus(const Mat & m, int p)
{
    Mat r = m;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            r[i][j] = ((i == j ? 1 : 0) - m[i][j] + p) % p;
    return r;
}

/// Order automorphisms of a finite poset given by its <= relation, commuting with
/// `ortho` when it is non-empty, by trying all size! permutations.
inline std::size_t count_poset_automorphisms(const std::vector<std::vector<bool>> & leq,
                                             const std::vector<int> & ortho)
{
    std::size_t n = leq.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t count = 0;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!ortho.empty() && perm[ortho[i]] != ortho[perm[i]])
                ok = false;
            for (std::size_t j = 0; j < n && ok; ++j)
                ok = leq[i][j] == leq[perm[i]][perm[j]];
        }
        count += ok ? 1 : 0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

/// P(L) realised on idempotent matrices: p <= q iff pq = qp = p, p^perp = 1 - p.
struct IdempotentPoset {
    std::vector<Mat> elements;
    std::vector<std::vector<bool>> leq;
    std::vector<int> ortho;
};

inline IdempotentPoset idempotent_poset(int n, int p)
{
    IdempotentPoset out;
    out.elements = idempotents(n, p);
    std::size_t m = out.elements.size();
    out.leq.assign(m, std::vector<bool>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const auto & a = out.elements[i];
            const auto & b = out.elements[j];
            out.leq[i][j] = mat_mul(a, b, p) == a && mat_mul(b, a, p) == a;
        }
    for (std::size_t i = 0; i < m; ++i) {
        auto c = one_minus(out.elements[i], p);
        out.ortho.push_back(static_cast<int>(std::find(out.elements.begin(), out.elements.end(), c) - out.elements.begin()));
    }
    return out;
}

/// Collineations of PG(n-1, p): permutations of the points (1-spaces) mapping
/// collinear triples to collinear triples, by trying all point permutations.
inline std::size_t count_collineations(int n, int p)
{
    auto spaces = all_subspaces(n, p);
    std::vector<Space> points, lines;
    for (const auto & s : spaces) {
        if (s.size() == static_cast<std::size_t>(p))
            points.push_back(s);
        else if (s.size() == static_cast<std::size_t>(p * p))
            lines.push_back(s);
    }
    std::size_t np = points.size();
    std::set<std::vector<int>> line_sets;
    for (const auto & l : lines) {
        std::vector<int> members;
        for (std::size_t i = 0; i < np; ++i)
            if (std::includes(l.begin(), l.end(), points[i].begin(), points[i].end()))
                members.push_back(static_cast<int>(i));
        line_sets.insert(members);
    }
    std::vector<int> perm(np);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t count = 0;
    do {
        bool ok = true;
        for (auto it = line_sets.begin(); it != line_sets.end() && ok; ++it) {
            std::vector<int> image;
            for (int x : *it)
                image.push_back(perm[x]);
            std::sort(image.begin(), image.end());
            ok = line_sets.count(image) == 1;
        }
        count += ok ? 1 : 0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

/// Number of subspaces of each dimension, read off all_subspaces.
inline std::vector<std::size_t> subspace_counts(int n, int p)
{
    std::vector<std::size_t> out(n + 1, 0);
    for (const auto & s : all_subspaces(n, p)) {
        std::size_t size = s.size(), dim = 0;
        while (size > 1) {
            size /= p;
            ++dim;
        }
        ++out[dim];
    }
    return out;
}

} // namespace oracle
