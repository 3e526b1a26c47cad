// complex.hpp -- filtered chain complexes over F2[U,U^-1] with involution.
//
// A complex is a finite free basis; every generator x carries a Maslov
// grading M(x) and an Alexander grading A(x), and sits at filtration level
// (0, A(x)). U is invertible and drops M by 2 and each filtration coordinate
// by 1, so no U exponent is ever stored: for a differential arrow x -> y the
// coefficient is forced to be U^n with n = (M(y) - M(x) + 1)/2, and for an
// involution arrow U^q with q = (M(y) - M(x))/2. All maps between complexes
// reduce to GF(2) incidence matrices; exponents stay implicit in the
// gradings. Composition, addition, homology, the formal derivatives of the
// differential and the validity axioms are all exact bit operations.
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bitmatrix.hpp"

namespace icx {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : Error { using Error::Error; };
struct ComplexMismatch : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct ParityError : Error { using Error::Error; };
struct NotAChainMap : Error { using Error::Error; };
struct CertificateMismatch : Error { using Error::Error; };
struct CertificateInvalid : Error { using Error::Error; };
struct CompositionVerificationFailed : Error { using Error::Error; };
struct GFNotIdentity : Error { using Error::Error; };
struct FiltrationAnomaly : Error { using Error::Error; };
struct HomotopyIdentityFailed : Error { using Error::Error; };

struct Generator {
    std::string name;
    int maslov = 0;
    int alexander = 0;

    bool operator==(const Generator&) const = default;
};

struct IotaComplex {
    std::string name;
    bool auxiliary = false;          // declared auxiliary: homology need not be Unit
    std::vector<Generator> gens;
    BitMatrix diff;                  // diff[x][y] = 1  iff  U^n(x,y) y appears in dx
    BitMatrix iota;                  // iota[x][y] = 1 iff  U^q(x,y) y appears in iota(x)

    int size() const { return int(gens.size()); }
    int index_of(const std::string& g) const {
        for (int i = 0; i < size(); ++i)
            if (gens[i].name == g) return i;
        return -1;
    }
    int maslov(int i) const { return gens[i].maslov; }
    int alexander(int i) const { return gens[i].alexander; }
    int parity(int i) const { return ((gens[i].maslov % 2) + 2) % 2; }
};

using CxPtr = std::shared_ptr<const IotaComplex>;

using Arrow = std::pair<std::string, std::string>;

inline CxPtr make_complex(std::string name, std::vector<Generator> gens,
                          const std::vector<Arrow>& diff_arrows,
                          const std::vector<Arrow>& iota_arrows,
                          bool auxiliary = false) {
    auto c = std::make_shared<IotaComplex>();
    c->name = std::move(name);
    c->auxiliary = auxiliary;
    c->gens = std::move(gens);
    int n = c->size();
    c->diff = BitMatrix(n, n);
    c->iota = BitMatrix(n, n);
    auto put = [&](BitMatrix& m, const Arrow& a, const char* kind) {
        int i = c->index_of(a.first), j = c->index_of(a.second);
        if (i < 0 || j < 0)
            throw Error(std::string(kind) + " arrow names unknown generator: " + a.first + " " + a.second);
        m.set(i, j, true);
    };
    for (const auto& a : diff_arrows) put(c->diff, a, "diff");
    for (const auto& a : iota_arrows) put(c->iota, a, "iota");
    return c;
}

// Same underlying graded module and arrows; generator and complex names are
// ignored. This is the equality used when composing maps.
inline bool structurally_equal(const IotaComplex& a, const IotaComplex& b) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        if (a.gens[i].maslov != b.gens[i].maslov || a.gens[i].alexander != b.gens[i].alexander)
            return false;
    return a.diff == b.diff && a.iota == b.iota;
}

inline bool same_complex(const CxPtr& a, const CxPtr& b) {
    return a == b || structurally_equal(*a, *b);
}

inline bool identical_complex(const IotaComplex& a, const IotaComplex& b) {
    return a.name == b.name && a.auxiliary == b.auxiliary && a.gens == b.gens &&
           a.diff == b.diff && a.iota == b.iota;
}

inline CxPtr renamed(const CxPtr& c, std::string name,
                     const std::vector<std::string>& gen_names) {
    if (int(gen_names.size()) != c->size())
        throw DimensionMismatch("renamed: wrong number of generator names");
    auto out = std::make_shared<IotaComplex>(*c);
    out->name = std::move(name);
    for (int i = 0; i < out->size(); ++i) out->gens[i].name = gen_names[i];
    return out;
}

inline CxPtr with_auxiliary(const CxPtr& c, bool auxiliary) {
    auto out = std::make_shared<IotaComplex>(*c);
    out->auxiliary = auxiliary;
    return out;
}

// ---------------------------------------------------------------------------
// arrow data and admissibility

struct ArrowData {
    int n;  // U exponent of the arrow coefficient
    int a;  // horizontal filtration drop (equals n)
    int b;  // vertical filtration drop
};

// Data of a differential arrow x -> y, derived from gradings alone.
inline ArrowData arrow_data(const IotaComplex& c, int x, int y) {
    int dm = c.maslov(x) - c.maslov(y);
    if (((dm % 2) + 2) % 2 == 0)
        throw ParityError("arrow_data: Maslov gradings of " + c.gens[x].name + " and " +
                          c.gens[y].name + " have equal parity");
    int n = (c.maslov(y) - c.maslov(x) + 1) / 2;
    return ArrowData{n, n, c.alexander(x) - c.alexander(y) + n};
}

inline ArrowData arrow_data(const IotaComplex& c, const std::string& x, const std::string& y) {
    int i = c.index_of(x), j = c.index_of(y);
    if (i < 0 || j < 0) throw Error("arrow_data: unknown generator");
    return arrow_data(c, i, j);
}

enum class Character { Filtered, Skew, None };

inline const char* character_name(Character c) {
    switch (c) {
        case Character::Filtered: return "filtered";
        case Character::Skew: return "skew";
        default: return "none";
    }
}

// Exponent of a degree-delta map entry x -> y, or nullopt on parity mismatch.
inline std::optional<int> entry_exponent(const IotaComplex& src, const IotaComplex& dst,
                                         int x, int y, int delta) {
    int d = dst.maslov(y) - src.maslov(x) - delta;
    if (((d % 2) + 2) % 2 != 0) return std::nullopt;
    return d / 2;
}

// A filtered map sends level (i,j) into level (i,j); a skew map sends (i,j)
// into (j,i). Entry-wise, with q the implicit exponent:
//   filtered: q >= 0            and q >= A(y) - A(x)
//   skew:     q >= -A(x)        and q >= A(y)
inline bool entry_admissible(const IotaComplex& src, const IotaComplex& dst,
                             int x, int y, int delta, Character chr) {
    auto q = entry_exponent(src, dst, x, y, delta);
    if (!q) return false;
    switch (chr) {
        case Character::Filtered:
            return *q >= 0 && *q >= dst.alexander(y) - src.alexander(x);
        case Character::Skew:
            return *q >= -src.alexander(x) && *q >= dst.alexander(y);
        case Character::None:
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// validation

enum class ErrorCode {
    DuplicateGenerator,
    ParityViolation,
    NegativeExponent,
    FiltrationViolation,
    DifferentialNotSquareZero,
    IotaNotChainMap,
    IotaSquareAxiomFails,
    HomologyNotUnit,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DuplicateGenerator: return "DuplicateGenerator";
        case ErrorCode::ParityViolation: return "ParityViolation";
        case ErrorCode::NegativeExponent: return "NegativeExponent";
        case ErrorCode::FiltrationViolation: return "FiltrationViolation";
        case ErrorCode::DifferentialNotSquareZero: return "DifferentialNotSquareZero";
        case ErrorCode::IotaNotChainMap: return "IotaNotChainMap";
        case ErrorCode::IotaSquareAxiomFails: return "IotaSquareAxiomFails";
        case ErrorCode::HomologyNotUnit: return "HomologyNotUnit";
    }
    return "?";
}

struct ValidationError {
    ErrorCode code;
    std::string x, y;      // witness generators where that makes sense
    std::string message;
};

// Structural validity: distinct names, every arrow admissible, d^2 = 0,
// iota a U-equivariant chain map. The involution axiom and the homology
// requirement are the deep level (solve.hpp) since they need the solver.
inline std::vector<ValidationError> validate_structural(const IotaComplex& c) {
    std::vector<ValidationError> errs;
    std::set<std::string> seen;
    for (const auto& g : c.gens)
        if (!seen.insert(g.name).second)
            errs.push_back({ErrorCode::DuplicateGenerator, g.name, "",
                            "duplicate generator name " + g.name});

    bool arrows_ok = true;
    for (int x = 0; x < c.size(); ++x)
        for (int y = 0; y < c.size(); ++y) {
            if (c.diff.get(x, y)) {
                const std::string &nx = c.gens[x].name, &ny = c.gens[y].name;
                if (c.parity(x) == c.parity(y)) {
                    errs.push_back({ErrorCode::ParityViolation, nx, ny,
                                    "diff arrow " + nx + " -> " + ny + " joins equal Maslov parity"});
                    arrows_ok = false;
                    continue;
                }
                ArrowData d = arrow_data(c, x, y);
                if (d.n < 0) {
                    errs.push_back({ErrorCode::NegativeExponent, nx, ny,
                                    "diff arrow " + nx + " -> " + ny + " needs exponent " +
                                        std::to_string(d.n)});
                    arrows_ok = false;
                }
                if (d.b < 0) {
                    errs.push_back({ErrorCode::FiltrationViolation, nx, ny,
                                    "diff arrow " + nx + " -> " + ny + " has vertical drop " +
                                        std::to_string(d.b)});
                    arrows_ok = false;
                }
            }
            if (c.iota.get(x, y)) {
                const std::string &nx = c.gens[x].name, &ny = c.gens[y].name;
                if (c.parity(x) != c.parity(y)) {
                    errs.push_back({ErrorCode::ParityViolation, nx, ny,
                                    "iota arrow " + nx + " -> " + ny + " joins opposite Maslov parity"});
                    arrows_ok = false;
                    continue;
                }
                int q = (c.maslov(y) - c.maslov(x)) / 2;
                if (q < -c.alexander(x) || q < c.alexander(y)) {
                    errs.push_back({ErrorCode::FiltrationViolation, nx, ny,
                                    "iota arrow " + nx + " -> " + ny + " violates the skew bound (q=" +
                                        std::to_string(q) + ")"});
                    arrows_ok = false;
                }
            }
        }
    if (!arrows_ok || !errs.empty()) return errs;

    BitMatrix d2 = c.diff.multiply(c.diff);
    if (!d2.is_zero()) {
        auto e = d2.entries().front();
        errs.push_back({ErrorCode::DifferentialNotSquareZero, c.gens[e.first].name,
                        c.gens[e.second].name,
                        "d^2 has a term " + c.gens[e.first].name + " -> " + c.gens[e.second].name});
        return errs;
    }

    BitMatrix comm = c.iota.multiply(c.diff) ^ c.diff.multiply(c.iota);
    if (!comm.is_zero()) {
        auto e = comm.entries().front();
        errs.push_back({ErrorCode::IotaNotChainMap, c.gens[e.first].name, c.gens[e.second].name,
                        "iota fails to commute with the differential at " +
                            c.gens[e.first].name + " -> " + c.gens[e.second].name});
    }
    return errs;
}

// ---------------------------------------------------------------------------
// homology
//
// U acts invertibly, so each Maslov-homogeneous piece of fixed parity is
// canonically the F2 span of the same-parity generators and the graded
// homology is determined by the two parity blocks of the incidence matrix.

struct HomologyType {
    enum class Tag { Unit, Acyclic, Other };
    Tag tag;
    int h_even = 0, h_odd = 0;
    int unit_parity = -1;  // 0 or 1 when tag == Unit

    bool operator==(const HomologyType&) const = default;
};

inline std::vector<int> parity_indices(const IotaComplex& c, int p) {
    std::vector<int> v;
    for (int i = 0; i < c.size(); ++i)
        if (c.parity(i) == p) v.push_back(i);
    return v;
}

inline BitMatrix submatrix(const BitMatrix& m, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
    BitMatrix out(int(rows.size()), int(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            if (m.get(rows[i], cols[j])) out.set(int(i), int(j), true);
    return out;
}

inline HomologyType homology_type(const IotaComplex& c) {
    auto ev = parity_indices(c, 0), od = parity_indices(c, 1);
    int out_even = rank(submatrix(c.diff, ev, od));  // differentials leaving the even block
    int into_even = rank(submatrix(c.diff, od, ev));
    HomologyType h;
    h.h_even = int(ev.size()) - out_even - into_even;
    h.h_odd = int(od.size()) - into_even - out_even;
    if (h.h_even == 1 && h.h_odd == 0) { h.tag = HomologyType::Tag::Unit; h.unit_parity = 0; }
    else if (h.h_even == 0 && h.h_odd == 1) { h.tag = HomologyType::Tag::Unit; h.unit_parity = 1; }
    else if (h.h_even == 0 && h.h_odd == 0) h.tag = HomologyType::Tag::Acyclic;
    else h.tag = HomologyType::Tag::Other;
    return h;
}

inline const char* homology_tag_name(HomologyType::Tag t) {
    switch (t) {
        case HomologyType::Tag::Unit: return "Unit";
        case HomologyType::Tag::Acyclic: return "Acyclic";
        default: return "Other";
    }
}

// Deterministic representative of the generating homology class in parity p:
// the first reduced-echelon kernel vector that is not a boundary, in the
// complex's own generator order. Returned full-length (support within p).
inline std::optional<BitVec> homology_representative(const IotaComplex& c, int p) {
    auto blk = parity_indices(c, p), opp = parity_indices(c, 1 - p);
    BitMatrix out_block = submatrix(c.diff, blk, opp);  // rows: p-gens, cols: opp
    BitMatrix in_block = submatrix(c.diff, opp, blk);   // boundaries are its row space
    int bnd_rank = rank(in_block);
    auto cycles = kernel_basis(out_block.transpose());  // z with z*out_block = 0
    for (const BitVec& z : cycles) {
        BitMatrix ext(in_block.rows() + 1, int(blk.size()));
        for (int i = 0; i < in_block.rows(); ++i) ext.set_row(i, in_block.row(i));
        ext.set_row(in_block.rows(), z);
        if (rank(ext) != bnd_rank) {
            BitVec full(c.size());
            for (size_t i = 0; i < blk.size(); ++i)
                if (z.get(int(i))) full.set(blk[i], true);
            return full;
        }
    }
    return std::nullopt;
}

// Deterministic functional on the parity-p slice vanishing on boundaries
// with <lambda, z> = 1 for the representative z. Full-length.
inline std::optional<BitVec> homology_functional(const IotaComplex& c, int p) {
    auto zfull = homology_representative(c, p);
    if (!zfull) return std::nullopt;
    auto blk = parity_indices(c, p), opp = parity_indices(c, 1 - p);
    BitMatrix in_block = submatrix(c.diff, opp, blk);
    BitVec z(int(blk.size()));
    for (size_t i = 0; i < blk.size(); ++i)
        if (zfull->get(blk[i])) z.set(int(i), true);
    SolutionSpace s;
    s.particular = BitVec(int(blk.size()));
    s.kernel = kernel_basis(in_block);  // lambda with in_block * lambda = 0
    auto lam = find_with_functional(s, z);
    if (!lam) return std::nullopt;
    BitVec full(c.size());
    for (size_t i = 0; i < blk.size(); ++i)
        if (lam->get(int(i))) full.set(blk[i], true);
    return full;
}

// ---------------------------------------------------------------------------
// graded maps

struct GradedMap {
    CxPtr src, dst;
    int degree = 0;
    Character chr = Character::None;
    BitMatrix mat;  // mat[x][y], x in src, y in dst

    bool is_zero() const { return mat.is_zero(); }
    bool operator==(const GradedMap& o) const {
        return same_complex(src, o.src) && same_complex(dst, o.dst) && degree == o.degree &&
               chr == o.chr && mat == o.mat;
    }
};

inline void check_entries(const GradedMap& f, const char* who) {
    for (int x = 0; x < f.src->size(); ++x)
        for (int y = 0; y < f.dst->size(); ++y)
            if (f.mat.get(x, y) && !entry_admissible(*f.src, *f.dst, x, y, f.degree, f.chr))
                throw FiltrationAnomaly(std::string(who) + ": entry " + f.src->gens[x].name +
                                        " -> " + f.dst->gens[y].name + " inadmissible for " +
                                        character_name(f.chr) + " degree " +
                                        std::to_string(f.degree));
}

inline GradedMap make_map(CxPtr src, CxPtr dst, int degree, Character chr, BitMatrix mat) {
    if (mat.rows() != src->size() || mat.cols() != dst->size())
        throw DimensionMismatch("make_map: matrix shape does not match complexes");
    GradedMap f{std::move(src), std::move(dst), degree, chr, std::move(mat)};
    check_entries(f, "make_map");
    return f;
}

inline GradedMap make_map(CxPtr src, CxPtr dst, int degree, Character chr,
                          const std::vector<Arrow>& entries) {
    BitMatrix m(src->size(), dst->size());
    for (const auto& e : entries) {
        int i = src->index_of(e.first), j = dst->index_of(e.second);
        if (i < 0 || j < 0) throw Error("make_map: unknown generator in entry");
        m.set(i, j, true);
    }
    return make_map(std::move(src), std::move(dst), degree, chr, std::move(m));
}

inline GradedMap zero_map(CxPtr src, CxPtr dst, int degree, Character chr) {
    BitMatrix m(src->size(), dst->size());
    return GradedMap{std::move(src), std::move(dst), degree, chr, std::move(m)};
}

inline GradedMap identity_map(CxPtr c) {
    BitMatrix m = BitMatrix::identity(c->size());
    return GradedMap{c, c, 0, Character::Filtered, std::move(m)};
}

inline GradedMap differential_map(CxPtr c) {
    return GradedMap{c, c, -1, Character::Filtered, c->diff};
}

inline GradedMap iota_map(CxPtr c) {
    return GradedMap{c, c, 0, Character::Skew, c->iota};
}

// Derivative of the differential in the horizontal U power: keeps the arrows
// whose exponent n is odd, at exponent n-1. Degree +1; its vertical drop can
// be -1, hence character none.
inline GradedMap phi(CxPtr c) {
    BitMatrix m(c->size(), c->size());
    for (int x = 0; x < c->size(); ++x)
        for (int y = 0; y < c->size(); ++y)
            if (c->diff.get(x, y) && (arrow_data(*c, x, y).a & 1)) m.set(x, y, true);
    return GradedMap{c, c, +1, Character::None, std::move(m)};
}

// Derivative in the vertical direction: arrows with odd vertical drop b, at
// unchanged exponent n. Degree -1, filtered.
inline GradedMap psi(CxPtr c) {
    BitMatrix m(c->size(), c->size());
    for (int x = 0; x < c->size(); ++x)
        for (int y = 0; y < c->size(); ++y)
            if (c->diff.get(x, y) && (arrow_data(*c, x, y).b & 1)) m.set(x, y, true);
    return GradedMap{c, c, -1, Character::Filtered, std::move(m)};
}

inline Character compose_characters(Character f, Character g) {
    if (f == Character::None || g == Character::None) return Character::None;
    if (f == Character::Skew && g == Character::Skew) return Character::Filtered;
    if (f == Character::Skew || g == Character::Skew) return Character::Skew;
    return Character::Filtered;
}

inline Character add_characters(Character f, Character g) {
    return f == g ? f : Character::None;
}

// compose(f, g) = f after g.
inline GradedMap compose(const GradedMap& f, const GradedMap& g) {
    if (!same_complex(g.dst, f.src))
        throw ComplexMismatch("compose: target of second argument is not source of first");
    if (g.mat.cols() != f.mat.rows())
        throw DimensionMismatch("compose: matrix shapes incompatible");
    GradedMap out{g.src, f.dst, f.degree + g.degree, compose_characters(f.chr, g.chr),
                  g.mat.multiply(f.mat)};
    check_entries(out, "compose");
    return out;
}

inline GradedMap add(const GradedMap& f, const GradedMap& g) {
    if (!same_complex(f.src, g.src) || !same_complex(f.dst, g.dst))
        throw ComplexMismatch("add: maps join different complexes");
    if (f.degree != g.degree)
        throw DegreeMismatch("add: degrees " + std::to_string(f.degree) + " vs " +
                             std::to_string(g.degree));
    return GradedMap{f.src, f.dst, f.degree, add_characters(f.chr, g.chr), f.mat ^ g.mat};
}

// Re-declare the character, checking every present entry against the new
// bounds. Used where composition types a map weaker than it really is.
inline GradedMap with_character(const GradedMap& f, Character chr) {
    GradedMap out = f;
    out.chr = chr;
    check_entries(out, "with_character");
    return out;
}

inline bool is_chain_map(const GradedMap& f) {
    return (f.mat.multiply(f.dst->diff) ^ f.src->diff.multiply(f.mat)).is_zero();
}

// P + Q = dH + Hd, with H one degree above and of the right character when
// P, Q share one (skew pair needs a skew homotopy, filtered pair a filtered
// one). Exact check, no tolerance anywhere.
inline bool verify_homotopy(const GradedMap& P, const GradedMap& Q, const GradedMap& H) {
    if (!same_complex(P.src, Q.src) || !same_complex(P.dst, Q.dst) ||
        !same_complex(P.src, H.src) || !same_complex(P.dst, H.dst))
        throw ComplexMismatch("verify_homotopy: maps join different complexes");
    if (P.degree != Q.degree) throw DegreeMismatch("verify_homotopy: P and Q degrees differ");
    if (H.degree != P.degree + 1)
        throw DegreeMismatch("verify_homotopy: homotopy degree must exceed map degree by 1");
    if (P.chr == Q.chr && P.chr != Character::None && H.chr != P.chr) return false;
    BitMatrix lhs = P.mat ^ Q.mat;
    BitMatrix rhs = H.mat.multiply(H.dst->diff) ^ H.src->diff.multiply(H.mat);
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// filtration levels of homogeneous elements

// An element of Maslov grading m multiplied by U^i lands at level (0, j-i)
// with Maslov m - 2i when it sat at level (i, j).
inline std::pair<int, int> normalize_level(int i, int j, int maslov) {
    return {maslov - 2 * i, j - i};
}

// Filtration level of a Maslov-homogeneous element given by its generator
// support at reference grading m_ref: componentwise max over the monomial
// terms U^{(M(y)-m_ref)/2} y.
inline std::pair<int, int> element_level(const IotaComplex& c, const BitVec& support, int m_ref) {
    bool first = true;
    int li = 0, lj = 0;
    for (int y = 0; y < c.size(); ++y) {
        if (!support.get(y)) continue;
        int d = c.maslov(y) - m_ref;
        if (((d % 2) + 2) % 2 != 0)
            throw ParityError("element_level: support generator " + c.gens[y].name +
                              " has the wrong Maslov parity");
        int e = d / 2;
        int ti = -e, tj = c.alexander(y) - e;
        if (first) { li = ti; lj = tj; first = false; }
        else { li = std::max(li, ti); lj = std::max(lj, tj); }
    }
    if (first) throw Error("element_level: empty support");
    return {li, lj};
}

}  // namespace icx
