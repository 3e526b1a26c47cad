// constructions.hpp -- new complexes from old: dual, direct sum, tensor
// products with either involution, and the one-generator identity complex.
#pragma once

#include "complex.hpp"

namespace icx {

// The trivial complex: one generator at grading (0,0), iota the identity.
// It is the unit for both products and the reference point for local
// triviality.
inline CxPtr identity_complex(std::string name = "unknot") {
    return make_complex(std::move(name), {Generator{"e", 0, 0}}, {}, {{"e", "e"}});
}

inline std::string dual_name(const std::string& s) {
    if (!s.empty() && s.back() == '*') return s.substr(0, s.size() - 1);
    return s + "*";
}

// Dual complex: gradings negated, all arrows reversed. Applying it twice
// returns the original complex bit for bit, names included.
inline CxPtr dual(const CxPtr& c) {
    auto out = std::make_shared<IotaComplex>();
    out->name = dual_name(c->name);
    out->auxiliary = c->auxiliary;
    out->gens.reserve(c->size());
    for (const auto& g : c->gens)
        out->gens.push_back(Generator{dual_name(g.name), -g.maslov, -g.alexander});
    out->diff = c->diff.transpose();
    out->iota = c->iota.transpose();
    return out;
}

// Direct sum. Generator names are kept as-is unless the two summands share a
// name, in which case every generator is prefixed with l: or r:.
inline CxPtr direct_sum(const CxPtr& a, const CxPtr& b) {
    bool collide = false;
    for (const auto& g : b->gens)
        if (a->index_of(g.name) >= 0) { collide = true; break; }
    auto out = std::make_shared<IotaComplex>();
    out->name = a->name + "⊕" + b->name;
    out->auxiliary = a->auxiliary || b->auxiliary;
    int n = a->size(), m = b->size();
    out->gens.reserve(n + m);
    for (const auto& g : a->gens)
        out->gens.push_back(Generator{collide ? "l:" + g.name : g.name, g.maslov, g.alexander});
    for (const auto& g : b->gens)
        out->gens.push_back(Generator{collide ? "r:" + g.name : g.name, g.maslov, g.alexander});
    out->diff = BitMatrix(n + m, n + m);
    out->iota = BitMatrix(n + m, n + m);
    for (auto [i, j] : a->diff.entries()) out->diff.set(i, j, true);
    for (auto [i, j] : b->diff.entries()) out->diff.set(n + i, n + j, true);
    for (auto [i, j] : a->iota.entries()) out->iota.set(i, j, true);
    for (auto [i, j] : b->iota.entries()) out->iota.set(n + i, n + j, true);
    return out;
}

// Tensor of maps between tensor complexes built over the same generator
// ordering (x outer, y inner). The caller supplies the tensor complexes so
// shared pointers stay shared.
inline GradedMap tensor_of_maps(const GradedMap& f, const GradedMap& g, CxPtr src, CxPtr dst) {
    if (src->size() != f.src->size() * g.src->size() ||
        dst->size() != f.dst->size() * g.dst->size())
        throw DimensionMismatch("tensor_of_maps: complexes do not match the factor sizes");
    GradedMap out{std::move(src), std::move(dst), f.degree + g.degree,
                  f.chr == g.chr ? f.chr : Character::None, kronecker(f.mat, g.mat)};
    check_entries(out, "tensor_of_maps");
    return out;
}

// Tensor product of complexes with the product involution. variant selects
// the correction term:
//   1:  iota1 (x) iota2  +  (phi1 (x) psi2) after (iota1 (x) iota2)
//   2:  iota1 (x) iota2  +  (psi1 (x) phi2) after (iota1 (x) iota2)
// Both corrections are filtered entry by entry, so the result is skew.
inline CxPtr tensor(const CxPtr& a, const CxPtr& b, int variant) {
    if (variant != 1 && variant != 2)
        throw Error("tensor: variant must be 1 or 2");
    auto out = std::make_shared<IotaComplex>();
    out->name = a->name + "⊗" + b->name;
    out->auxiliary = a->auxiliary || b->auxiliary;
    int n = a->size(), m = b->size();
    out->gens.reserve(size_t(n) * m);
    for (const auto& x : a->gens)
        for (const auto& y : b->gens)
            out->gens.push_back(Generator{x.name + "⊗" + y.name,
                                          x.maslov + y.maslov, x.alexander + y.alexander});
    out->diff = kronecker(a->diff, BitMatrix::identity(m)) ^
                kronecker(BitMatrix::identity(n), b->diff);

    BitMatrix plain = kronecker(a->iota, b->iota);
    BitMatrix corr = variant == 1 ? kronecker(phi(a).mat, psi(b).mat)
                                  : kronecker(psi(a).mat, phi(b).mat);
    out->iota = plain ^ plain.multiply(corr);
    return out;
}

}  // namespace icx
