// splitting.hpp -- splitting a trivial summand off an involutive complex.
//
// A local-equivalence certificate against the trivial complex gives maps
// F : E -> C and G : C -> E with G after F the identity, so p1 = F G and
// p2 = id + p1 are complementary projections and ker G is a subcomplex.
// Rebasing C to {F(e)} plus a pivot-eliminated basis of ker G exhibits it as
// (one-generator unit) + (acyclic complement). The involution need not
// respect that splitting, but iota' = p1 + p2 iota p2 does, and differs from
// iota by the boundary of the explicit homotopy J = H_F G + F H_G p2.
// stable_witness chains two such splits through the tensor product to
// produce stably equivalent companions of a locally equivalent pair.
#pragma once

#include "constructions.hpp"
#include "solve.hpp"

namespace icx {

// Orient a certificate against the trivial complex so that F : E -> C and
// G : C -> E, and verify it. Accepts either orientation.
inline LocalEquivCertificate oriented_unit_certificate(const CxPtr& c,
                                                       const LocalEquivCertificate& cert) {
    LocalEquivCertificate cc = cert;
    if (same_complex(cc.F.dst, c)) {
        // already E -> C
    } else if (same_complex(cc.F.src, c)) {
        cc = reverse(cc);
    } else {
        throw CertificateInvalid("split: certificate does not involve the given complex");
    }
    if (!structurally_equal(*cc.F.src, *identity_complex()))
        throw CertificateInvalid("split: certificate does not target the trivial complex");
    if (!check_certificate(cc))
        throw CertificateInvalid("split: certificate fails verification");
    return cc;
}

struct BasisSplit {
    CxPtr complex;         // the complex being split, in its original basis
    GradedMap F, H_F;      // E -> C and its skew commuting homotopy
    GradedMap G, H_G;      // C -> E and its skew commuting homotopy
    GradedMap p1, p2;      // F G and id + F G, complementary projections on C
    int pivot = -1;        // index of the pivot generator
    CxPtr rebased;         // C in the basis {F(e)} u ker G, iota conjugated
    GradedMap to_rebased;    // filtered iso C -> rebased
    GradedMap from_rebased;  // filtered iso rebased -> C
};

inline BasisSplit split_complex(const CxPtr& c, const LocalEquivCertificate& cert) {
    LocalEquivCertificate cc = oriented_unit_certificate(c, cert);
    BasisSplit bs;
    bs.complex = c;
    bs.F = cc.F;
    bs.H_F = cc.H_F;
    bs.G = cc.G;
    bs.H_G = cc.H_G;

    int n = c->size();
    if (compose(bs.G, bs.F).mat != BitMatrix::identity(1))
        throw GFNotIdentity("split: G after F is not the identity on the trivial complex");
    bs.p1 = compose(bs.F, bs.G);
    bs.p2 = add(identity_map(c), bs.p1);
    if (bs.p1.mat.multiply(bs.p1.mat) != bs.p1.mat ||
        bs.p2.mat.multiply(bs.p2.mat) != bs.p2.mat ||
        !bs.p1.mat.multiply(bs.p2.mat).is_zero() ||
        (bs.p1.mat ^ bs.p2.mat) != BitMatrix::identity(n))
        throw Error("split: projections fail their algebra");

    for (int x = 0; x < n; ++x)
        if (bs.G.mat.get(x, 0)) { bs.pivot = x; break; }
    if (bs.pivot < 0) throw GFNotIdentity("split: G has empty support");

    // New basis: u = F(e) first, then for every other generator either the
    // generator itself (G-coefficient zero) or its pivot correction
    // z_x = x + U^.. x0, which lies in ker G. Row i of P expresses new
    // generator i in the old basis; gradings are read off the element level.
    std::vector<Generator> gens;
    gens.reserve(n);
    BitMatrix P(n, n);
    BitVec u = bs.F.mat.row(0);
    auto [ui, uj] = element_level(*c, u, 0);
    if (ui != 0 || uj != 0)
        throw Error("split: image of the unit generator is not at level (0,0)");
    gens.push_back(Generator{c->gens[bs.pivot].name, 0, 0});
    P.set_row(0, u);
    int r = 1;
    for (int x = 0; x < n; ++x) {
        if (x == bs.pivot) continue;
        BitVec z(n);
        z.set(x, true);
        if (bs.G.mat.get(x, 0)) z.set(bs.pivot, true);
        auto [li, lj] = element_level(*c, z, c->maslov(x));
        auto [m, a] = normalize_level(li, lj, c->maslov(x));
        gens.push_back(Generator{c->gens[x].name, m, a});
        P.set_row(r, z);
        ++r;
    }

    auto Q = inverse(P);
    if (!Q) throw Error("split: rebasing matrix is singular");
    if (P.multiply(*Q) != BitMatrix::identity(n) || Q->multiply(P) != BitMatrix::identity(n))
        throw Error("split: basis change is not invertible");

    auto reb = std::make_shared<IotaComplex>();
    reb->name = c->name + ".rebased";
    reb->auxiliary = c->auxiliary;
    reb->gens = std::move(gens);
    reb->diff = P.multiply(c->diff).multiply(*Q);
    reb->iota = P.multiply(c->iota).multiply(*Q);
    auto errs = validate_structural(*reb);
    if (!errs.empty())
        throw FiltrationAnomaly("split: rebased complex fails validation: " + errs.front().message);
    bs.rebased = reb;
    // make_map re-checks every entry, so a basis change that fails to be
    // filtered in either direction surfaces here instead of being repaired
    bs.from_rebased = make_map(reb, c, 0, Character::Filtered, P);
    bs.to_rebased = make_map(c, reb, 0, Character::Filtered, *Q);
    return bs;
}

struct SplitReport {
    bool projections_idempotent = false;
    bool five_term_identity = false;   // iota + iota' = dJ + Jd
    bool block_diagonal = false;       // iota' has no entries between the summands
    bool unit_block_identity = false;  // iota' fixes the unit generator
    bool corrected_axiom_holds = false;  // iota'^2 + id + phi psi filtered-nullhomotopic
    bool acyclic_summand_valid = false;  // informational: A alone passes deep validation
};

struct SplitResult {
    BasisSplit basis;
    CxPtr unit_summand;        // one generator named after the pivot, at (0,0)
    CxPtr acyclic_summand;     // auxiliary, homology verified Acyclic
    GradedMap sum_to_complex;  // filtered iso  unit + acyclic -> C
    GradedMap complex_to_sum;  // filtered iso  C -> unit + acyclic
    GradedMap iota_prime;      // corrected involution on C
    GradedMap J;               // skew degree-1 homotopy joining iota and iota'
    SplitReport report;
};

inline SplitResult split_involution(const CxPtr& c, const LocalEquivCertificate& cert) {
    SplitResult out;
    out.basis = split_complex(c, cert);
    const BasisSplit& bs = out.basis;
    int n = c->size();
    out.report.projections_idempotent = true;  // enforced in split_complex

    GradedMap iota = iota_map(c);
    out.iota_prime =
        with_character(add(bs.p1, compose(bs.p2, compose(iota, bs.p2))), Character::Skew);
    out.J = add(compose(bs.H_F, bs.G), compose(bs.F, compose(bs.H_G, bs.p2)));
    if (!verify_homotopy(iota, out.iota_prime, out.J))
        throw HomotopyIdentityFailed("split: iota + iota' is not the boundary of J");
    out.report.five_term_identity = true;

    BitMatrix dn = bs.rebased->diff;
    BitMatrix ip = bs.from_rebased.mat.multiply(out.iota_prime.mat).multiply(bs.to_rebased.mat);
    if (dn.row_any(0)) throw Error("split: the unit generator is not a cycle");
    for (int i = 1; i < n; ++i)
        if (dn.get(i, 0)) throw Error("split: rebased differential crosses the splitting");
    bool off = false;
    for (int i = 1; i < n; ++i) off = off || ip.get(0, i) || ip.get(i, 0);
    out.report.block_diagonal = !off;
    out.report.unit_block_identity = ip.get(0, 0);
    if (off || !ip.get(0, 0))
        throw HomotopyIdentityFailed("split: corrected involution does not respect the splitting");

    std::vector<int> rest(n - 1);
    for (int i = 1; i < n; ++i) rest[i - 1] = i;
    auto a = std::make_shared<IotaComplex>();
    a->name = c->name + ".acyclic";
    a->auxiliary = true;
    a->gens.assign(bs.rebased->gens.begin() + 1, bs.rebased->gens.end());
    a->diff = submatrix(dn, rest, rest);
    a->iota = submatrix(ip, rest, rest);
    auto aerr = validate_structural(*a);
    if (!aerr.empty())
        throw FiltrationAnomaly("split: acyclic summand fails validation: " + aerr.front().message);
    if (homology_type(*a).tag != HomologyType::Tag::Acyclic)
        throw Error("split: complement of the unit summand is not acyclic");
    out.acyclic_summand = a;

    const std::string& pname = c->gens[bs.pivot].name;
    out.unit_summand = make_complex(c->name + ".unit", {Generator{pname, 0, 0}}, {},
                                    {{pname, pname}});
    CxPtr sum = direct_sum(out.unit_summand, out.acyclic_summand);
    if (sum->diff != dn || sum->iota != ip)
        throw Error("split: direct sum does not reassemble the rebased complex");
    out.sum_to_complex = make_map(sum, c, 0, Character::Filtered, bs.from_rebased.mat);
    out.complex_to_sum = make_map(c, sum, 0, Character::Filtered, bs.to_rebased.mat);
    if (!is_chain_map(out.sum_to_complex) || !is_chain_map(out.complex_to_sum))
        throw Error("split: basis change maps are not chain maps");

    GradedMap axiom = add(add(compose(out.iota_prime, out.iota_prime), identity_map(c)),
                          compose(phi(c), psi(c)));
    out.report.corrected_axiom_holds =
        nullhomotopy_exists(axiom, Character::Filtered).has_value();
    out.report.acyclic_summand_valid = deep_validate(out.acyclic_summand).empty();
    return out;
}

// ---------------------------------------------------------------------------
// stable equivalence witness

// Relation between the involutions of the two association orders of a triple
// product, strongest first. The underlying complexes agree on the nose; only
// the iotas can differ.
enum class Association { Exact, SkewHomotopic, Homotopic, Mismatch };

inline const char* association_name(Association a) {
    switch (a) {
        case Association::Exact: return "exact";
        case Association::SkewHomotopic: return "skew-homotopic";
        case Association::Homotopic: return "homotopic";
        default: return "mismatch";
    }
}

struct StableWitness {
    CxPtr left, right;            // X1 = C1 + C1xD  and  X2 = C2 + AxC2
    CxPtr a_prime, d_prime;       // A x C2  and  C1 x D
    SplitResult split_a;          // split of C1 x dual(C2), acyclic part A
    SplitResult split_d;          // split of dual(C2) x C2, acyclic part D
    Association association = Association::Mismatch;
    HomologyType homology_left, homology_right;
    bool homology_dims_match = false;
    LocalEquivDecision decision;  // left vs right, certificate inside
    std::optional<HomotopyEquivalence> homotopy;  // bounded heuristic search
};

inline StableWitness stable_witness(const CxPtr& c1, const CxPtr& c2,
                                    const LocalEquivCertificate& cert, int variant) {
    LocalEquivCertificate cc = cert;
    if (same_complex(cc.F.src, c1) && same_complex(cc.F.dst, c2)) {
        // already c1 -> c2
    } else if (same_complex(cc.F.src, c2) && same_complex(cc.F.dst, c1)) {
        cc = reverse(cc);
    } else {
        throw CertificateInvalid("stable_witness: certificate joins different complexes");
    }
    if (!check_certificate(cc))
        throw CertificateInvalid("stable_witness: certificate fails verification");

    StableWitness w;
    CxPtr e = identity_complex();
    CxPtr p = tensor(c1, dual(c2), variant);  // locally trivial: C1 ~ C2 and C2 x dual(C2) ~ E
    CxPtr q = tensor(dual(c2), c2, variant);
    auto dp = decide_local_equivalence(p, e);
    if (!dp.equivalent)
        throw Error("stable_witness: product with the dual is not locally trivial");
    auto dq = decide_local_equivalence(q, e);
    if (!dq.equivalent)
        throw Error("stable_witness: dual pairing is not locally trivial");
    w.split_a = split_involution(p, *dp.certificate);
    w.split_d = split_involution(q, *dq.certificate);

    w.a_prime = tensor(w.split_a.acyclic_summand, c2, variant);
    w.d_prime = tensor(c1, w.split_d.acyclic_summand, variant);
    w.left = with_auxiliary(direct_sum(c1, w.d_prime), false);
    w.right = with_auxiliary(direct_sum(c2, w.a_prime), false);

    // The two association orders of C1 x dual(C2) x C2 share generators,
    // gradings and differential positionally; compare their involutions.
    CxPtr l = tensor(p, c2, variant);
    CxPtr r = tensor(c1, q, variant);
    if (l->size() != r->size() || l->diff != r->diff)
        throw Error("stable_witness: association orders disagree on the underlying complex");
    for (int i = 0; i < l->size(); ++i)
        if (l->gens[i] != r->gens[i])
            throw Error("stable_witness: association orders disagree on generators");
    if (l->iota == r->iota) {
        w.association = Association::Exact;
    } else {
        GradedMap d = make_map(l, l, 0, Character::Skew, l->iota ^ r->iota);
        if (nullhomotopy_exists(d, Character::Skew).has_value())
            w.association = Association::SkewHomotopic;
        else if (nullhomotopy_exists(with_character(d, Character::None), Character::None)
                     .has_value())
            w.association = Association::Homotopic;
        else
            w.association = Association::Mismatch;
    }

    w.homology_left = homology_type(*w.left);
    w.homology_right = homology_type(*w.right);
    w.homology_dims_match = w.homology_left.h_even == w.homology_right.h_even &&
                            w.homology_left.h_odd == w.homology_right.h_odd;
    w.decision = decide_local_equivalence(w.left, w.right);
    w.homotopy = heuristic_homotopy_equivalence(w.left, w.right);
    return w;
}

}  // namespace icx
