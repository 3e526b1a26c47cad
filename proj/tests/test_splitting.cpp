#include <catch2/catch_amalgamated.hpp>

#include "icx/corpus.hpp"
#include "icx/splitting.hpp"

using namespace icx;

namespace {

// Invariants every successful split must satisfy, checked from outside
// against the original complex and its involution.
void check_split_postconditions(const CxPtr& c, const SplitResult& s) {
    int n = c->size();
    const BasisSplit& bs = s.basis;

    CHECK(bs.p1.mat.multiply(bs.p1.mat) == bs.p1.mat);
    CHECK(bs.p2.mat.multiply(bs.p2.mat) == bs.p2.mat);
    CHECK(bs.p1.mat.multiply(bs.p2.mat).is_zero());
    CHECK((bs.p1.mat ^ bs.p2.mat) == BitMatrix::identity(n));

    CHECK(s.unit_summand->size() == 1);
    CHECK(s.unit_summand->gens[0].name == c->gens[bs.pivot].name);
    CHECK(s.unit_summand->gens[0].maslov == 0);
    CHECK(s.unit_summand->gens[0].alexander == 0);
    CHECK(s.acyclic_summand->size() == n - 1);
    CHECK(s.acyclic_summand->auxiliary);
    CHECK(homology_type(*s.acyclic_summand).tag == HomologyType::Tag::Acyclic);
    CHECK(validate_structural(*s.acyclic_summand).empty());

    // basis change: mutually inverse filtered chain maps
    CHECK(s.sum_to_complex.chr == Character::Filtered);
    CHECK(s.complex_to_sum.chr == Character::Filtered);
    CHECK(is_chain_map(s.sum_to_complex));
    CHECK(is_chain_map(s.complex_to_sum));
    CHECK(s.sum_to_complex.mat.multiply(s.complex_to_sum.mat) == BitMatrix::identity(n));
    CHECK(s.complex_to_sum.mat.multiply(s.sum_to_complex.mat) == BitMatrix::identity(n));

    // transporting the sum back through the basis change recovers the
    // differential on the nose and the corrected involution
    const BitMatrix &p = s.sum_to_complex.mat, &q = s.complex_to_sum.mat;
    CxPtr sum = s.sum_to_complex.src;
    CHECK(q.multiply(sum->diff).multiply(p) == c->diff);
    CHECK(q.multiply(sum->iota).multiply(p) == s.iota_prime.mat);

    // the five-term identity and the character of its homotopy
    CHECK(s.iota_prime.chr == Character::Skew);
    CHECK(s.J.chr == Character::Skew);
    CHECK(s.J.degree == 1);
    CHECK(verify_homotopy(iota_map(c), s.iota_prime, s.J));

    // iota' in the new basis: identity on the unit generator, nothing across
    BitMatrix ip = p.multiply(s.iota_prime.mat).multiply(q);
    CHECK(ip.get(0, 0));
    for (int i = 1; i < n; ++i) {
        CHECK_FALSE(ip.get(0, i));
        CHECK_FALSE(ip.get(i, 0));
    }

    CHECK(s.report.projections_idempotent);
    CHECK(s.report.five_term_identity);
    CHECK(s.report.block_diagonal);
    CHECK(s.report.unit_block_identity);
    CHECK(s.report.corrected_axiom_holds);
}

}  // namespace

TEST_CASE("splitting the unit complex is trivial") {
    auto e = identity_complex();
    SplitResult s = split_involution(e, identity_certificate(e));
    CHECK(s.basis.pivot == 0);
    CHECK(s.acyclic_summand->size() == 0);
    CHECK(homology_type(*s.acyclic_summand).tag == HomologyType::Tag::Acyclic);
    CHECK(s.iota_prime.mat == e->iota);
    CHECK(s.J.is_zero());
    check_split_postconditions(e, s);
}

TEST_CASE("splitting a literal direct sum with the projection certificate") {
    auto e = identity_complex();
    auto c = direct_sum(e, corpus::box2());
    LocalEquivCertificate cert{
        make_map(e, c, 0, Character::Filtered, {{"e", "e"}}),
        zero_map(e, c, 1, Character::Skew),
        make_map(c, e, 0, Character::Filtered, {{"e", "e"}}),
        zero_map(c, e, 1, Character::Skew),
        *homology_representative(*e, 0), *homology_functional(*e, 0),
        *homology_representative(*c, 0), *homology_functional(*c, 0)};
    REQUIRE(check_certificate(cert));

    SplitResult s = split_involution(c, cert);
    CHECK(c->gens[s.basis.pivot].name == "e");
    CHECK(structurally_equal(*s.acyclic_summand, *corpus::box2()));
    CHECK(s.iota_prime.mat == c->iota);  // iota already respected the splitting
    CHECK(s.J.is_zero());
    check_split_postconditions(c, s);
}

TEST_CASE("splitting a complex whose involution mixes the summands") {
    auto mix = corpus::mixbox();
    auto e = identity_complex();
    auto dec = decide_local_equivalence(mix, e);
    REQUIRE(dec.equivalent);

    SplitResult s = split_involution(mix, *dec.certificate);
    CHECK(mix->gens[s.basis.pivot].name == "e");
    // the complement is the plain box: the p -> e mixing arrow is corrected away
    CHECK(structurally_equal(*s.acyclic_summand, *corpus::box2()));
    CHECK(s.iota_prime.mat == BitMatrix::identity(3));
    CHECK(s.iota_prime.mat != mix->iota);
    CHECK(s.J.mat.entries() == std::vector<std::pair<int, int>>{{2, 0}});  // J(q) = e
    check_split_postconditions(mix, s);
    CHECK(s.report.acyclic_summand_valid);
}

TEST_CASE("splitting the trefoil paired with its mirror") {
    auto t = corpus::trefoil();
    auto e = identity_complex();
    for (int variant : {1, 2}) {
        INFO("variant " << variant);
        auto p = tensor(t, dual(t), variant);
        auto dec = decide_local_equivalence(p, e);
        REQUIRE(dec.equivalent);

        SplitResult s = split_involution(p, *dec.certificate);
        CHECK(p->gens[s.basis.pivot].name == "a⊗a*");
        CHECK(s.acyclic_summand->size() == 8);
        CHECK(homology_type(*s.acyclic_summand).tag == HomologyType::Tag::Acyclic);
        check_split_postconditions(p, s);
        CHECK(s.report.acyclic_summand_valid);
    }
}

TEST_CASE("split rejects certificates for other complexes") {
    auto t = corpus::trefoil();
    auto e = identity_complex();

    // certificate joining two copies of the trefoil, not the unit complex
    CHECK_THROWS_AS(split_complex(t, identity_certificate(t)), CertificateInvalid);

    // certificate about a different complex entirely
    auto mix = corpus::mixbox();
    auto dec = decide_local_equivalence(mix, e);
    REQUIRE(dec.equivalent);
    CHECK_THROWS_AS(split_complex(corpus::figure8(), *dec.certificate), CertificateInvalid);

    // tampered certificate: break one homotopy entry
    auto p = tensor(t, dual(t), 1);
    auto dp = decide_local_equivalence(p, e);
    REQUIRE(dp.equivalent);
    LocalEquivCertificate bad = *dp.certificate;
    bad.F = add(bad.F, bad.F);  // zero map no longer hits the generator
    CHECK_THROWS_AS(split_complex(p, bad), CertificateInvalid);
}

TEST_CASE("stable witness for the trefoil against itself") {
    auto t = corpus::trefoil();
    StableWitness w = stable_witness(t, t, identity_certificate(t), 1);

    CHECK(w.split_a.acyclic_summand->size() == 8);
    CHECK(w.split_d.acyclic_summand->size() == 8);
    CHECK(w.a_prime->size() == 24);
    CHECK(w.d_prime->size() == 24);
    CHECK(w.left->size() == 27);
    CHECK(w.right->size() == 27);
    CHECK(homology_type(*w.a_prime).tag == HomologyType::Tag::Acyclic);
    CHECK(homology_type(*w.d_prime).tag == HomologyType::Tag::Acyclic);

    CHECK(w.association == Association::Exact);
    CHECK(w.homology_dims_match);
    CHECK(w.homology_left.tag == HomologyType::Tag::Unit);
    CHECK(w.homology_left.h_even == 1);
    CHECK(w.homology_right.h_even == 1);

    REQUIRE(w.decision.equivalent);
    REQUIRE(w.decision.certificate.has_value());
    CHECK(check_certificate(*w.decision.certificate));
    CHECK(check_certificate(reverse(*w.decision.certificate)));
}

TEST_CASE("stable witness of the unit complex is the unit complex") {
    auto e = identity_complex();
    StableWitness w = stable_witness(e, e, identity_certificate(e), 1);
    CHECK(structurally_equal(*w.left, *e));
    CHECK(structurally_equal(*w.right, *e));
    CHECK(w.association == Association::Exact);
    CHECK(w.decision.equivalent);
    CHECK(w.homotopy.has_value());
}

TEST_CASE("stable witness rejects invalid certificates") {
    auto t = corpus::trefoil();
    auto f8 = corpus::figure8();

    // certificate joining the wrong complexes
    CHECK_THROWS_AS(stable_witness(t, f8, identity_certificate(t), 1), CertificateInvalid);

    // well-formed but failing bundle: zero maps certify nothing
    LocalEquivCertificate zero{
        zero_map(t, t, 0, Character::Filtered), zero_map(t, t, 1, Character::Skew),
        zero_map(t, t, 0, Character::Filtered), zero_map(t, t, 1, Character::Skew),
        *homology_representative(*t, 0), *homology_functional(*t, 0),
        *homology_representative(*t, 0), *homology_functional(*t, 0)};
    CHECK_THROWS_AS(stable_witness(t, t, zero, 1), CertificateInvalid);
}

TEST_CASE("matrix inverse over GF(2)") {
    BitMatrix m(3, 3);
    m.set(0, 0, true);
    m.set(0, 1, true);
    m.set(1, 1, true);
    m.set(2, 2, true);
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK(m.multiply(*inv) == BitMatrix::identity(3));
    CHECK(inv->multiply(m) == BitMatrix::identity(3));

    BitMatrix sing(2, 2);
    sing.set(0, 0, true);
    sing.set(1, 0, true);
    CHECK_FALSE(inverse(sing).has_value());
    CHECK_FALSE(inverse(BitMatrix(2, 3)).has_value());
}
