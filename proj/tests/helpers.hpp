#pragma once

#include <random>
#include <vector>

#include "qmf/qmring.hpp"

// Deterministic random generators shared by the property tests. Everything is
// seeded explicitly so failures reproduce.
namespace qmf::testutil {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, long num_range = 60)
{
    std::uniform_int_distribution<long> num(-num_range, num_range);
    std::uniform_int_distribution<int> e2(0, 3), e3(0, 2);
    long den = 1;
    for (int i = e2(rng); i > 0; --i)
        den *= 2;
    for (int i = e3(rng); i > 0; --i)
        den *= 3;
    return make_rational(Int(num(rng)), Int(den));
}

inline std::vector<Monomial> monomial_pool(HalfInt w, bool allow_z)
{
    std::vector<Monomial> pool;
    long h = w.twice();
    for (long b = 0; 4 * b <= h; ++b)
        for (long c = 0; 4 * (b + c) <= h; ++c) {
            if (!allow_z && c > 0)
                continue;
            pool.push_back({unsigned(h - 4 * b - 4 * c), unsigned(b), unsigned(c)});
        }
    return pool;
}

inline IsobaricPoly random_isobaric(Rng& rng, HalfInt w, int max_terms = 6,
                                    bool allow_z = true)
{
    auto pool = monomial_pool(w, allow_z);
    IsobaricPoly p(w);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> count(1, max_terms);
    for (int i = count(rng); i > 0; --i)
        p.add_term(pool[pick(rng)], random_rational(rng));
    return p;
}

inline HalfInt random_weight(Rng& rng, long max_halves = 16)
{
    std::uniform_int_distribution<long> h(0, max_halves);
    return HalfInt::halves(h(rng));
}

} // namespace qmf::testutil
