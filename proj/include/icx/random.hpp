// random.hpp -- seeded generator of valid complexes for property tests.
//
// Every output is assembled from pieces that are valid by construction: one
// staircase (unit homology, reflection involution), a few two-generator
// acyclic boxes at Alexander grading zero (identity involution), glued by
// direct sum and then scrambled by filtered self-inverse basis changes.
// Scrambling conjugates the differential and the involution by
// I + E_{xy} for an admissible filtered degree-0 cell (x, y), which is its
// own inverse over GF(2), so structural validity is preserved exactly.
#pragma once

#include <random>

#include "constructions.hpp"
#include "solve.hpp"

namespace icx {

// Zig-zag staircase with 2k+1 generators s0..s2k at M(si) = -i,
// A(si) = k - i, differential from each odd generator to its neighbours and
// the reflection involution. k = 1 is the trefoil shape.
inline CxPtr staircase_complex(int k, const std::string& name = "staircase") {
    std::vector<Generator> gens;
    std::vector<Arrow> diff, iota;
    for (int i = 0; i <= 2 * k; ++i)
        gens.push_back(Generator{"s" + std::to_string(i), -i, k - i});
    for (int i = 1; i <= 2 * k; i += 2) {
        diff.push_back({gens[i].name, gens[i - 1].name});
        diff.push_back({gens[i].name, gens[i + 1].name});
    }
    for (int i = 0; i <= 2 * k; ++i) iota.push_back({gens[i].name, gens[2 * k - i].name});
    return make_complex(name, std::move(gens), diff, iota);
}

// Conjugate by the transvection I + E_{xy}: generator x is replaced by
// x + U^.. y in the implicit exponent encoding. The cell must be admissible
// as a filtered degree-0 entry, which makes the basis change and its inverse
// (itself) both filtered.
inline CxPtr transvected(const CxPtr& c, int x, int y) {
    if (x == y || !entry_admissible(*c, *c, x, y, 0, Character::Filtered))
        throw Error("transvected: cell is not an admissible filtered entry");
    BitMatrix t = BitMatrix::identity(c->size());
    t.set(x, y, true);
    auto out = std::make_shared<IotaComplex>(*c);
    out->diff = t.multiply(c->diff).multiply(t);
    out->iota = t.multiply(c->iota).multiply(t);
    return out;
}

// Random valid complex: staircase (possibly dualized) plus up to three
// boxes, scrambled by a handful of transvections. Unit homology, never
// auxiliary. Deterministic for a given engine state.
inline CxPtr random_complex(std::mt19937_64& rng, const std::string& name = "random") {
    auto pick = [&rng](int n) { return int(rng() % std::uint64_t(n)); };

    CxPtr c = staircase_complex(1 + pick(3), name);
    if (pick(2)) {
        auto d = std::make_shared<IotaComplex>(*dual(c));
        d->name = name;
        for (auto& g : d->gens) g.name = dual_name(g.name);
        c = d;
    }

    int boxes = pick(4);
    for (int b = 0; b < boxes; ++b) {
        int m = pick(7) - 3;
        int n = pick(3);
        std::string p = "p" + std::to_string(b), q = "q" + std::to_string(b);
        CxPtr box = make_complex("box", {Generator{p, m, 0}, Generator{q, m - 1 + 2 * n, 0}},
                                 {{p, q}}, {{p, p}, {q, q}}, true);
        auto sum = std::make_shared<IotaComplex>(*direct_sum(c, box));
        sum->name = name;
        sum->auxiliary = false;
        c = sum;
    }

    int scrambles = pick(7);
    for (int s = 0; s < scrambles; ++s) {
        auto cells = admissible_cells(*c, *c, 0, Character::Filtered);
        std::erase_if(cells, [](const std::pair<int, int>& xy) { return xy.first == xy.second; });
        if (cells.empty()) break;
        auto [x, y] = cells[pick(int(cells.size()))];
        c = transvected(c, x, y);
    }
    if (!validate_structural(*c).empty())
        throw Error("random_complex: generated an invalid complex");
    return c;
}

}  // namespace icx
