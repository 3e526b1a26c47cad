// solve.hpp -- linear algebra over the spaces of admissible graded maps.
//
// Any finite set of conditions of the form  sum_k L_k X R_k = B  on unknown
// maps X (entries restricted to the admissible cells of a given degree and
// character) is one GF(2) linear system. That covers chain map spaces,
// nullhomotopy searches, and the simultaneous systems behind local
// equivalence, so the same small solver drives all of them.
#pragma once

#include "complex.hpp"

namespace icx {

inline std::vector<std::pair<int, int>> admissible_cells(const IotaComplex& src,
                                                         const IotaComplex& dst, int degree,
                                                         Character chr) {
    std::vector<std::pair<int, int>> cells;
    for (int x = 0; x < src.size(); ++x)
        for (int y = 0; y < dst.size(); ++y)
            if (entry_admissible(src, dst, x, y, degree, chr)) cells.emplace_back(x, y);
    return cells;
}

class LinearMapSystem {
  public:
    // one summand  left * X_unknown * right  of an equation
    struct Term {
        int unknown;
        BitMatrix left, right;
    };

    int add_unknown(CxPtr src, CxPtr dst, int degree, Character chr) {
        Unknown u;
        u.src = std::move(src);
        u.dst = std::move(dst);
        u.degree = degree;
        u.chr = chr;
        u.cells = admissible_cells(*u.src, *u.dst, degree, chr);
        u.offset = nvars_;
        nvars_ += int(u.cells.size());
        unknowns_.push_back(std::move(u));
        return int(unknowns_.size()) - 1;
    }

    // require  sum over terms of  left * X * right  to equal rhs
    void require(std::vector<Term> terms, BitMatrix rhs) {
        for (const auto& t : terms) {
            const Unknown& u = unknowns_.at(t.unknown);
            if (t.left.cols() != u.src->size() || t.right.rows() != u.dst->size())
                throw DimensionMismatch("require: term does not fit its unknown");
            if (t.left.rows() != rhs.rows() || t.right.cols() != rhs.cols())
                throw DimensionMismatch("require: term shape differs from the right side");
        }
        equations_.push_back({std::move(terms), std::move(rhs)});
    }

    int variables() const { return nvars_; }

    SolutionSpace solve() const {
        int rows = 0;
        for (const auto& e : equations_) rows += e.rhs.rows() * e.rhs.cols();
        BitMatrix m(rows, nvars_);
        BitVec b(rows);
        int r0 = 0;
        for (const auto& e : equations_) {
            int er = e.rhs.rows(), ec = e.rhs.cols();
            for (const auto& t : e.terms) {
                const Unknown& u = unknowns_[t.unknown];
                for (int vi = 0; vi < int(u.cells.size()); ++vi) {
                    auto [x, y] = u.cells[vi];
                    for (int i = 0; i < er; ++i) {
                        if (!t.left.get(i, x)) continue;
                        for (int j = 0; j < ec; ++j)
                            if (t.right.get(y, j)) m.flip(r0 + i * ec + j, u.offset + vi);
                    }
                }
            }
            for (int i = 0; i < er; ++i)
                for (int j = 0; j < ec; ++j)
                    if (e.rhs.get(i, j)) b.set(r0 + i * ec + j, true);
            r0 += er * ec;
        }
        return solve_affine(m, b);
    }

    GradedMap extract(int unknown, const BitVec& solution) const {
        const Unknown& u = unknowns_.at(unknown);
        BitMatrix m(u.src->size(), u.dst->size());
        for (int vi = 0; vi < int(u.cells.size()); ++vi)
            if (solution.get(u.offset + vi)) m.set(u.cells[vi].first, u.cells[vi].second, true);
        return GradedMap{u.src, u.dst, u.degree, u.chr, std::move(m)};
    }

    // functional  X |-> <row * X, col>  on the variables of one unknown
    BitVec pairing_functional(int unknown, const BitVec& row, const BitVec& col) const {
        const Unknown& u = unknowns_.at(unknown);
        if (row.n != u.src->size() || col.n != u.dst->size())
            throw DimensionMismatch("pairing_functional: vector lengths");
        BitVec lam(nvars_);
        for (int vi = 0; vi < int(u.cells.size()); ++vi) {
            auto [x, y] = u.cells[vi];
            if (row.get(x) && col.get(y)) lam.set(u.offset + vi, true);
        }
        return lam;
    }

  private:
    struct Unknown {
        CxPtr src, dst;
        int degree = 0;
        Character chr = Character::None;
        std::vector<std::pair<int, int>> cells;
        int offset = 0;
    };
    struct Equation {
        std::vector<Term> terms;
        BitMatrix rhs;
    };
    std::vector<Unknown> unknowns_;
    std::vector<Equation> equations_;
    int nvars_ = 0;
};

// ---------------------------------------------------------------------------
// chain map spaces and nullhomotopies

struct MapSpace {
    bool consistent = false;
    GradedMap particular;
    std::vector<GradedMap> basis;

    int dimension() const { return consistent ? int(basis.size()) : -1; }
};

inline MapSpace chain_map_space(const CxPtr& c1, const CxPtr& c2, int degree, Character chr) {
    LinearMapSystem sys;
    int f = sys.add_unknown(c1, c2, degree, chr);
    sys.require({{f, BitMatrix::identity(c1->size()), c2->diff},
                 {f, c1->diff, BitMatrix::identity(c2->size())}},
                BitMatrix(c1->size(), c2->size()));
    SolutionSpace s = sys.solve();
    MapSpace out;
    out.consistent = !s.absent();
    if (!out.consistent) return out;
    out.particular = sys.extract(f, *s.particular);
    for (const BitVec& k : s.kernel) out.basis.push_back(sys.extract(f, k));
    return out;
}

// H of the given character with  dH + Hd = P,  one degree above P.
inline std::optional<GradedMap> nullhomotopy_exists(const GradedMap& p, Character chr) {
    LinearMapSystem sys;
    int h = sys.add_unknown(p.src, p.dst, p.degree + 1, chr);
    sys.require({{h, BitMatrix::identity(p.src->size()), p.dst->diff},
                 {h, p.src->diff, BitMatrix::identity(p.dst->size())}},
                p.mat);
    SolutionSpace s = sys.solve();
    if (s.absent()) return std::nullopt;
    GradedMap out = sys.extract(h, *s.particular);
    BitMatrix check = out.mat.multiply(p.dst->diff) ^ p.src->diff.multiply(out.mat);
    if (check != p.mat) throw Error("nullhomotopy_exists: solver returned a non-solution");
    return out;
}

// ---------------------------------------------------------------------------
// deep validity: structural checks plus the homology requirement and the
// involution axiom  iota^2 ~ id + phi psi  via a filtered homotopy

inline std::vector<ValidationError> deep_validate(const CxPtr& c) {
    std::vector<ValidationError> errs = validate_structural(*c);
    if (!errs.empty()) return errs;
    HomologyType h = homology_type(*c);
    if (!c->auxiliary && h.tag != HomologyType::Tag::Unit)
        errs.push_back({ErrorCode::HomologyNotUnit, "", "",
                        "homology ranks (even, odd) = (" + std::to_string(h.h_even) + ", " +
                            std::to_string(h.h_odd) + ")"});
    GradedMap axiom = add(add(compose(iota_map(c), iota_map(c)), identity_map(c)),
                          compose(phi(c), psi(c)));
    if (!nullhomotopy_exists(axiom, Character::Filtered).has_value())
        errs.push_back({ErrorCode::IotaSquareAxiomFails, "", "",
                        "iota^2 + id + phi psi admits no filtered nullhomotopy"});
    return errs;
}

// ---------------------------------------------------------------------------
// local equivalence

// A filtered grading-preserving chain map c1 -> c2 commuting with the
// involutions up to a skew homotopy and inducing an isomorphism on
// homology, together with that homotopy. nullopt when no such map exists;
// the search space is finite dimensional, so this is a decision.
inline std::optional<std::pair<GradedMap, GradedMap>> local_map_exists(const CxPtr& c1,
                                                                       const CxPtr& c2) {
    HomologyType h1 = homology_type(*c1), h2 = homology_type(*c2);
    if (h1.tag != HomologyType::Tag::Unit || h2.tag != HomologyType::Tag::Unit ||
        h1.unit_parity != h2.unit_parity)
        return std::nullopt;
    int p = h1.unit_parity;
    auto z1 = homology_representative(*c1, p);
    auto lam2 = homology_functional(*c2, p);
    if (!z1 || !lam2) return std::nullopt;

    int n1 = c1->size(), n2 = c2->size();
    BitMatrix i1 = BitMatrix::identity(n1), i2 = BitMatrix::identity(n2);
    LinearMapSystem sys;
    int f = sys.add_unknown(c1, c2, 0, Character::Filtered);
    int h = sys.add_unknown(c1, c2, 1, Character::Skew);
    sys.require({{f, i1, c2->diff}, {f, c1->diff, i2}}, BitMatrix(n1, n2));
    sys.require({{f, i1, c2->iota}, {f, c1->iota, i2}, {h, i1, c2->diff}, {h, c1->diff, i2}},
                BitMatrix(n1, n2));
    SolutionSpace s = sys.solve();
    if (s.absent()) return std::nullopt;
    auto sol = find_with_functional(s, sys.pairing_functional(f, *z1, *lam2));
    if (!sol) return std::nullopt;
    return std::make_pair(sys.extract(f, *sol), sys.extract(h, *sol));
}

struct LocalEquivCertificate {
    GradedMap F, H_F;  // c1 -> c2 and its skew commuting homotopy
    GradedMap G, H_G;  // c2 -> c1 and its skew commuting homotopy
    BitVec cycle_left, functional_left;    // homology evidence in c1
    BitVec cycle_right, functional_right;  // homology evidence in c2
};

// Pure verification: no solving, just matrix identities. Throws
// CertificateInvalid when the bundle is not even well-formed; returns false
// when it is well-formed but fails an identity.
inline bool check_certificate(const LocalEquivCertificate& cert) {
    const CxPtr &c1 = cert.F.src, &c2 = cert.F.dst;
    if (!same_complex(cert.G.src, c2) || !same_complex(cert.G.dst, c1) ||
        !same_complex(cert.H_F.src, c1) || !same_complex(cert.H_F.dst, c2) ||
        !same_complex(cert.H_G.src, c2) || !same_complex(cert.H_G.dst, c1))
        throw CertificateInvalid("certificate maps do not join the same pair of complexes");
    if (cert.F.degree != 0 || cert.G.degree != 0 || cert.H_F.degree != 1 || cert.H_G.degree != 1)
        throw CertificateInvalid("certificate map degrees must be 0, 0, 1, 1");
    if (cert.cycle_left.n != c1->size() || cert.functional_left.n != c1->size() ||
        cert.cycle_right.n != c2->size() || cert.functional_right.n != c2->size())
        throw CertificateInvalid("certificate evidence vectors have wrong lengths");

    if (cert.F.chr != Character::Filtered || cert.G.chr != Character::Filtered) return false;
    HomologyType h1 = homology_type(*c1), h2 = homology_type(*c2);
    if (h1.tag != HomologyType::Tag::Unit || h2.tag != HomologyType::Tag::Unit) return false;
    if (h1.unit_parity != h2.unit_parity) return false;
    if (!is_chain_map(cert.F) || !is_chain_map(cert.G)) return false;
    if (!verify_homotopy(compose(iota_map(c2), cert.F), compose(cert.F, iota_map(c1)), cert.H_F))
        return false;
    if (!verify_homotopy(compose(iota_map(c1), cert.G), compose(cert.G, iota_map(c2)), cert.H_G))
        return false;
    if (c1->diff.apply_left(cert.cycle_left).any()) return false;    // not a cycle
    if (c2->diff.apply_left(cert.cycle_right).any()) return false;
    if (c1->diff.apply_right(cert.functional_left).any()) return false;  // not boundary-vanishing
    if (c2->diff.apply_right(cert.functional_right).any()) return false;
    if (!cert.F.mat.apply_left(cert.cycle_left).dot(cert.functional_right)) return false;
    if (!cert.G.mat.apply_left(cert.cycle_right).dot(cert.functional_left)) return false;
    return true;
}

struct LocalEquivDecision {
    bool equivalent = false;
    bool forward_exists = false;   // a local map c1 -> c2 exists
    bool backward_exists = false;  // a local map c2 -> c1 exists
    std::optional<LocalEquivCertificate> certificate;
};

inline LocalEquivDecision decide_local_equivalence(const CxPtr& c1, const CxPtr& c2) {
    LocalEquivDecision d;
    auto fwd = local_map_exists(c1, c2);
    auto bwd = local_map_exists(c2, c1);
    d.forward_exists = fwd.has_value();
    d.backward_exists = bwd.has_value();
    d.equivalent = d.forward_exists && d.backward_exists;
    if (!d.equivalent) return d;
    int p = homology_type(*c1).unit_parity;
    LocalEquivCertificate cert{fwd->first, fwd->second, bwd->first, bwd->second,
                               *homology_representative(*c1, p), *homology_functional(*c1, p),
                               *homology_representative(*c2, p), *homology_functional(*c2, p)};
    if (!check_certificate(cert))
        throw Error("decide_local_equivalence: produced certificate fails its own check");
    d.certificate = std::move(cert);
    return d;
}

inline LocalEquivCertificate identity_certificate(const CxPtr& c) {
    HomologyType h = homology_type(*c);
    if (h.tag != HomologyType::Tag::Unit)
        throw CertificateInvalid("identity_certificate: homology is not a single unit");
    return LocalEquivCertificate{identity_map(c), zero_map(c, c, 1, Character::Skew),
                                 identity_map(c), zero_map(c, c, 1, Character::Skew),
                                 *homology_representative(*c, h.unit_parity),
                                 *homology_functional(*c, h.unit_parity),
                                 *homology_representative(*c, h.unit_parity),
                                 *homology_functional(*c, h.unit_parity)};
}

inline LocalEquivCertificate reverse(const LocalEquivCertificate& cert) {
    return LocalEquivCertificate{cert.G, cert.H_G, cert.F, cert.H_F,
                                 cert.cycle_right, cert.functional_right,
                                 cert.cycle_left, cert.functional_left};
}

// Certificate for c1 ~ c3 out of certificates for c1 ~ c2 and c2 ~ c3. The
// homotopies compose by the Leibniz rule. The result is re-checked.
inline LocalEquivCertificate compose_certificates(const LocalEquivCertificate& a,
                                                  const LocalEquivCertificate& b) {
    if (!same_complex(a.F.dst, b.F.src))
        throw CertificateMismatch("compose_certificates: middle complexes differ");
    LocalEquivCertificate out{
        compose(b.F, a.F),
        add(compose(b.F, a.H_F), compose(b.H_F, a.F)),
        compose(a.G, b.G),
        add(compose(a.G, b.H_G), compose(a.H_G, b.G)),
        a.cycle_left, a.functional_left, b.cycle_right, b.functional_right};
    if (!check_certificate(out))
        throw CompositionVerificationFailed("compose_certificates: composite fails verification");
    return out;
}

// ---------------------------------------------------------------------------
// homotopy equivalence (bounded search)

struct HomotopyEquivalence {
    GradedMap F, H_F;  // local map c1 -> c2
    GradedMap G, H_G;  // local map c2 -> c1
    GradedMap K1;      // filtered homotopy  GF + id = dK1 + K1 d  on c1
    GradedMap K2;      // filtered homotopy  FG + id = dK2 + K2 d  on c2
};

// Searches for a homotopy equivalence respecting the involutions: fixes a
// candidate F from the local equivalence system, then solves for G and all
// homotopies, which is linear once F is fixed. Retries with F perturbed
// along kernel directions, at most max_rounds times. A result is an exact
// certificate; nullopt only means the bounded search found nothing.
inline std::optional<HomotopyEquivalence> heuristic_homotopy_equivalence(const CxPtr& c1,
                                                                         const CxPtr& c2,
                                                                         int max_rounds = 16) {
    HomologyType h1 = homology_type(*c1), h2 = homology_type(*c2);
    if (h1.tag != HomologyType::Tag::Unit || h2.tag != HomologyType::Tag::Unit ||
        h1.unit_parity != h2.unit_parity)
        return std::nullopt;
    int p = h1.unit_parity;
    auto z1 = homology_representative(*c1, p);
    auto lam2 = homology_functional(*c2, p);
    if (!z1 || !lam2) return std::nullopt;

    int n1 = c1->size(), n2 = c2->size();
    BitMatrix i1 = BitMatrix::identity(n1), i2 = BitMatrix::identity(n2);

    LinearMapSystem fsys;
    int fu = fsys.add_unknown(c1, c2, 0, Character::Filtered);
    int fh = fsys.add_unknown(c1, c2, 1, Character::Skew);
    fsys.require({{fu, i1, c2->diff}, {fu, c1->diff, i2}}, BitMatrix(n1, n2));
    fsys.require({{fu, i1, c2->iota}, {fu, c1->iota, i2}, {fh, i1, c2->diff}, {fh, c1->diff, i2}},
                 BitMatrix(n1, n2));
    SolutionSpace fs = fsys.solve();
    if (fs.absent()) return std::nullopt;
    auto base = find_with_functional(fs, fsys.pairing_functional(fu, *z1, *lam2));
    if (!base) return std::nullopt;

    for (int round = 0; round < max_rounds; ++round) {
        BitVec pick = *base;
        if (round > 0) {
            if (round - 1 >= int(fs.kernel.size())) break;
            pick.xor_with(fs.kernel[round - 1]);
        }
        GradedMap F = fsys.extract(fu, pick);
        GradedMap H_F = fsys.extract(fh, pick);

        LinearMapSystem sys;
        int g = sys.add_unknown(c2, c1, 0, Character::Filtered);
        int hg = sys.add_unknown(c2, c1, 1, Character::Skew);
        int k1 = sys.add_unknown(c1, c1, 1, Character::Filtered);
        int k2 = sys.add_unknown(c2, c2, 1, Character::Filtered);
        sys.require({{g, i2, c1->diff}, {g, c2->diff, i1}}, BitMatrix(n2, n1));
        sys.require({{g, i2, c1->iota}, {g, c2->iota, i1}, {hg, i2, c1->diff}, {hg, c2->diff, i1}},
                    BitMatrix(n2, n1));
        sys.require({{g, F.mat, i1}, {k1, i1, c1->diff}, {k1, c1->diff, i1}}, i1);
        sys.require({{g, i2, F.mat}, {k2, i2, c2->diff}, {k2, c2->diff, i2}}, i2);
        SolutionSpace s = sys.solve();
        if (s.absent()) continue;
        const BitVec& sol = *s.particular;
        HomotopyEquivalence out{F, H_F, sys.extract(g, sol), sys.extract(hg, sol),
                                sys.extract(k1, sol), sys.extract(k2, sol)};
        if (!verify_homotopy(add(compose(out.G, out.F), identity_map(c1)),
                             zero_map(c1, c1, 0, Character::None), out.K1) ||
            !verify_homotopy(add(compose(out.F, out.G), identity_map(c2)),
                             zero_map(c2, c2, 0, Character::None), out.K2))
            throw Error("heuristic_homotopy_equivalence: solver returned a non-solution");
        return out;
    }
    return std::nullopt;
}

}  // namespace icx
