// io.hpp -- line-oriented text formats for complexes and certificates.
//
// A complex file holds one or more blocks
//
//   complex NAME [auxiliary]
//   gen NAME MASLOV ALEXANDER
//   diff SRC DST
//   iota SRC DST
//   end
//
// '#' starts a comment, blank lines are skipped, and tokens are separated
// by whitespace (so names must be whitespace-free). Inside a block the line
// order is free; arrows are resolved once the block closes. Serialization
// is canonical, generators in declaration order and arrows in row-major
// order, so parsing a serialized file and serializing again is a fixed
// point.
//
// A certificate file embeds the two complexes it joins, then a block
//
//   certificate
//   left NAME
//   right NAME
//   map F|H_F|G|H_G   (src, dst, degree, character, entry lines, end)
//   cycle_left NAMES... / functional_left / cycle_right / functional_right
//   end
//
// A split file embeds the original complex, both summands, and their direct
// sum, then a "split" block holding the corrected involution, the homotopy,
// the two basis maps, and the report flags. Parsers reject malformed input
// with the offending line number; they do not try to repair anything.
#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "icx/solve.hpp"
#include "icx/splitting.hpp"

namespace icx::io {

struct ParseError : Error {
    int line;
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
};
struct SyntaxError : ParseError {
    using ParseError::ParseError;
};
struct UnknownGenerator : ParseError {
    using ParseError::ParseError;
};
struct DuplicateArrow : ParseError {
    using ParseError::ParseError;
};

// ---------------------------------------------------------------------------
// line scanner

namespace detail {

struct Line {
    int no = 0;
    std::vector<std::string> tok;
};

inline std::vector<Line> scan(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        Line l{no, {}};
        for (std::string t; ls >> t;) l.tok.push_back(std::move(t));
        if (!l.tok.empty()) out.push_back(std::move(l));
    }
    return out;
}

inline int parse_int(const Line& l, const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (...) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size())
        throw SyntaxError(l.no, "expected an integer, got '" + s + "'");
    return v;
}

inline void expect_arity(const Line& l, std::size_t n) {
    if (l.tok.size() != n)
        throw SyntaxError(l.no, "'" + l.tok[0] + "' takes " + std::to_string(n - 1) +
                                    " argument(s), got " + std::to_string(l.tok.size() - 1));
}

inline void check_token(const std::string& s, const char* what) {
    if (s.empty()) throw Error(std::string("serialize: empty ") + what);
    for (char c : s)
        if (c == '#' || std::isspace(static_cast<unsigned char>(c)))
            throw Error(std::string("serialize: ") + what + " '" + s +
                        "' contains whitespace or '#'");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// complexes

inline void serialize_complex(std::string& out, const IotaComplex& c) {
    detail::check_token(c.name, "complex name");
    out += "complex " + c.name;
    if (c.auxiliary) out += " auxiliary";
    out += '\n';
    for (const auto& g : c.gens) {
        detail::check_token(g.name, "generator name");
        out += "gen " + g.name + ' ' + std::to_string(g.maslov) + ' ' +
               std::to_string(g.alexander) + '\n';
    }
    for (auto [x, y] : c.diff.entries())
        out += "diff " + c.gens[x].name + ' ' + c.gens[y].name + '\n';
    for (auto [x, y] : c.iota.entries())
        out += "iota " + c.gens[x].name + ' ' + c.gens[y].name + '\n';
    out += "end\n";
}

inline std::string serialize_complex(const IotaComplex& c) {
    std::string out;
    serialize_complex(out, c);
    return out;
}

inline std::string serialize_complexes(const std::vector<CxPtr>& cs) {
    std::string out;
    for (const auto& c : cs) {
        if (!out.empty()) out += '\n';
        serialize_complex(out, *c);
    }
    return out;
}

namespace detail {

// Parses one "complex ... end" block starting at lines[i]; advances i past it.
inline CxPtr parse_complex_block(const std::vector<Line>& lines, std::size_t& i) {
    const Line& head = lines[i];
    expect_arity(head, head.tok.size() == 3 && head.tok[2] == "auxiliary" ? 3 : 2);
    std::string name = head.tok[1];
    bool auxiliary = head.tok.size() == 3;
    std::vector<Generator> gens;
    std::vector<std::tuple<std::string, std::string, int>> diff, iota;
    std::set<std::pair<std::string, std::string>> seen_diff, seen_iota;
    for (++i; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const std::string& kw = l.tok[0];
        if (kw == "end") {
            expect_arity(l, 1);
            ++i;
            auto resolve = [&](const std::string& n, int at) {
                for (std::size_t k = 0; k < gens.size(); ++k)
                    if (gens[k].name == n) return;
                throw UnknownGenerator(at, "no generator named '" + n + "' in complex " + name);
            };
            std::vector<Arrow> da, ia;
            for (auto& [x, y, at] : diff) {
                resolve(x, at);
                resolve(y, at);
                da.push_back({x, y});
            }
            for (auto& [x, y, at] : iota) {
                resolve(x, at);
                resolve(y, at);
                ia.push_back({x, y});
            }
            return make_complex(name, std::move(gens), da, ia, auxiliary);
        } else if (kw == "gen") {
            expect_arity(l, 4);
            gens.push_back({l.tok[1], parse_int(l, l.tok[2]), parse_int(l, l.tok[3])});
        } else if (kw == "diff" || kw == "iota") {
            expect_arity(l, 3);
            auto& seen = kw == "diff" ? seen_diff : seen_iota;
            if (!seen.insert({l.tok[1], l.tok[2]}).second)
                throw DuplicateArrow(l.no, kw + " arrow " + l.tok[1] + " -> " + l.tok[2] +
                                               " listed twice");
            (kw == "diff" ? diff : iota).push_back({l.tok[1], l.tok[2], l.no});
        } else {
            throw SyntaxError(l.no, "unexpected '" + kw + "' inside a complex block");
        }
    }
    throw SyntaxError(head.no, "'complex " + name + "' block never ends");
}

inline std::vector<CxPtr> parse_complex_blocks(const std::vector<Line>& lines, std::size_t& i) {
    std::vector<CxPtr> out;
    std::set<std::string> names;
    while (i < lines.size() && lines[i].tok[0] == "complex") {
        int at = lines[i].no;
        CxPtr c = parse_complex_block(lines, i);
        if (!names.insert(c->name).second)
            throw SyntaxError(at, "duplicate complex name '" + c->name + "'");
        out.push_back(std::move(c));
    }
    return out;
}

inline CxPtr resolve_complex(const std::vector<CxPtr>& cs, const Line& l, const std::string& n) {
    for (const auto& c : cs)
        if (c->name == n) return c;
    throw SyntaxError(l.no, "no complex named '" + n + "' in this file");
}

}  // namespace detail

inline std::vector<CxPtr> parse_complexes(const std::string& text) {
    auto lines = detail::scan(text);
    std::size_t i = 0;
    auto out = detail::parse_complex_blocks(lines, i);
    if (i < lines.size())
        throw SyntaxError(lines[i].no, "expected 'complex', got '" + lines[i].tok[0] + "'");
    return out;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw Error("cannot write " + path);
}

inline std::vector<CxPtr> load_complexes(const std::string& path) {
    return parse_complexes(read_text_file(path));
}

inline void save_complexes(const std::string& path, const std::vector<CxPtr>& cs) {
    write_text_file(path, serialize_complexes(cs));
}

inline CxPtr find_complex(const std::vector<CxPtr>& cs, const std::string& name) {
    for (const auto& c : cs)
        if (c->name == name) return c;
    throw Error("no complex named '" + name + "'");
}

// ---------------------------------------------------------------------------
// graded maps

inline void serialize_map(std::string& out, const std::string& name, const GradedMap& f) {
    out += "map " + name + '\n';
    out += "src " + f.src->name + '\n';
    out += "dst " + f.dst->name + '\n';
    out += "degree " + std::to_string(f.degree) + '\n';
    out += std::string("character ") + character_name(f.chr) + '\n';
    for (auto [x, y] : f.mat.entries())
        out += "entry " + f.src->gens[x].name + ' ' + f.dst->gens[y].name + '\n';
    out += "end\n";
}

namespace detail {

// Parses one "map NAME ... end" block; returns (NAME, map). Every entry is
// checked against the declared degree and character at its own line.
inline std::pair<std::string, GradedMap> parse_map_block(const std::vector<Line>& lines,
                                                         std::size_t& i,
                                                         const std::vector<CxPtr>& cs) {
    const Line& head = lines[i];
    expect_arity(head, 2);
    std::string name = head.tok[1];
    CxPtr src, dst;
    std::optional<int> degree;
    std::optional<Character> chr;
    std::vector<std::tuple<std::string, std::string, int>> entries;
    std::set<std::pair<std::string, std::string>> seen;
    for (++i; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const std::string& kw = l.tok[0];
        if (kw == "end") {
            expect_arity(l, 1);
            ++i;
            if (!src || !dst || !degree || !chr)
                throw SyntaxError(head.no, "map " + name +
                                               " is missing src, dst, degree, or character");
            BitMatrix m(src->size(), dst->size());
            for (auto& [xn, yn, at] : entries) {
                int x = src->index_of(xn);
                if (x < 0)
                    throw UnknownGenerator(at, "no generator named '" + xn + "' in " + src->name);
                int y = dst->index_of(yn);
                if (y < 0)
                    throw UnknownGenerator(at, "no generator named '" + yn + "' in " + dst->name);
                if (!entry_admissible(*src, *dst, x, y, *degree, *chr))
                    throw SyntaxError(at, "entry " + xn + " -> " + yn + " inadmissible for " +
                                              character_name(*chr) + " degree " +
                                              std::to_string(*degree));
                m.set(x, y, true);
            }
            return {name, make_map(src, dst, *degree, *chr, std::move(m))};
        } else if (kw == "src" || kw == "dst") {
            expect_arity(l, 2);
            (kw == "src" ? src : dst) = resolve_complex(cs, l, l.tok[1]);
        } else if (kw == "degree") {
            expect_arity(l, 2);
            degree = parse_int(l, l.tok[1]);
        } else if (kw == "character") {
            expect_arity(l, 2);
            std::string v = l.tok[1];
            if (v == "filtered")
                chr = Character::Filtered;
            else if (v == "skew")
                chr = Character::Skew;
            else if (v == "none")
                chr = Character::None;
            else
                throw SyntaxError(l.no, "character must be filtered, skew, or none");
        } else if (kw == "entry") {
            expect_arity(l, 3);
            if (!seen.insert({l.tok[1], l.tok[2]}).second)
                throw DuplicateArrow(l.no, "entry " + l.tok[1] + " -> " + l.tok[2] +
                                               " listed twice");
            entries.push_back({l.tok[1], l.tok[2], l.no});
        } else {
            throw SyntaxError(l.no, "unexpected '" + kw + "' inside a map block");
        }
    }
    throw SyntaxError(head.no, "'map " + name + "' block never ends");
}

inline BitVec resolve_support(const Line& l, const CxPtr& c) {
    BitVec v(c->size());
    for (std::size_t k = 1; k < l.tok.size(); ++k) {
        int i = c->index_of(l.tok[k]);
        if (i < 0)
            throw UnknownGenerator(l.no, "no generator named '" + l.tok[k] + "' in " + c->name);
        v.set(i, true);
    }
    return v;
}

inline std::string support_names(const BitVec& v, const IotaComplex& c) {
    std::string out;
    for (int i : v.support()) out += ' ' + c.gens[i].name;
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// local-equivalence certificates

inline std::string serialize_certificate(const LocalEquivCertificate& cert) {
    const CxPtr &left = cert.F.src, &right = cert.F.dst;
    std::string out;
    serialize_complex(out, *left);
    if (right->name != left->name) {
        out += '\n';
        serialize_complex(out, *right);
    } else if (!structurally_equal(*left, *right)) {
        throw Error("serialize_certificate: distinct complexes share the name " + left->name);
    }
    out += "\ncertificate\n";
    out += "left " + left->name + '\n';
    out += "right " + right->name + '\n';
    serialize_map(out, "F", cert.F);
    serialize_map(out, "H_F", cert.H_F);
    serialize_map(out, "G", cert.G);
    serialize_map(out, "H_G", cert.H_G);
    out += "cycle_left" + detail::support_names(cert.cycle_left, *left) + '\n';
    out += "functional_left" + detail::support_names(cert.functional_left, *left) + '\n';
    out += "cycle_right" + detail::support_names(cert.cycle_right, *right) + '\n';
    out += "functional_right" + detail::support_names(cert.functional_right, *right) + '\n';
    out += "end\n";
    return out;
}

// Rebuilds the certificate bundle. Entry admissibility is enforced here;
// whether the maps actually certify anything is check_certificate's call.
inline LocalEquivCertificate parse_certificate(const std::string& text) {
    auto lines = detail::scan(text);
    std::size_t i = 0;
    auto cs = detail::parse_complex_blocks(lines, i);
    if (i >= lines.size() || lines[i].tok[0] != "certificate")
        throw SyntaxError(i < lines.size() ? lines[i].no : 1, "expected a 'certificate' block");
    const detail::Line& head = lines[i];
    detail::expect_arity(head, 1);
    CxPtr left, right;
    std::map<std::string, GradedMap> maps;
    std::map<std::string, detail::Line> supports;
    for (++i; i < lines.size();) {
        const detail::Line& l = lines[i];
        const std::string& kw = l.tok[0];
        if (kw == "end") {
            detail::expect_arity(l, 1);
            ++i;
            if (i < lines.size())
                throw SyntaxError(lines[i].no, "text after the certificate ends");
            if (!left || !right) throw SyntaxError(head.no, "missing 'left' or 'right'");
            for (const char* m : {"F", "H_F", "G", "H_G"})
                if (!maps.count(m))
                    throw SyntaxError(head.no, std::string("missing map ") + m);
            for (const char* s :
                 {"cycle_left", "functional_left", "cycle_right", "functional_right"})
                if (!supports.count(s))
                    throw SyntaxError(head.no, std::string("missing '") + s + "' evidence");
            for (const char* m : {"F", "H_F"}) {
                const GradedMap& f = maps.at(m);
                if (f.src != left || f.dst != right)
                    throw SyntaxError(head.no, std::string("map ") + m +
                                                   " must join left to right");
            }
            for (const char* m : {"G", "H_G"}) {
                const GradedMap& f = maps.at(m);
                if (f.src != right || f.dst != left)
                    throw SyntaxError(head.no, std::string("map ") + m +
                                                   " must join right to left");
            }
            return {maps.at("F"),
                    maps.at("H_F"),
                    maps.at("G"),
                    maps.at("H_G"),
                    detail::resolve_support(supports.at("cycle_left"), left),
                    detail::resolve_support(supports.at("functional_left"), left),
                    detail::resolve_support(supports.at("cycle_right"), right),
                    detail::resolve_support(supports.at("functional_right"), right)};
        } else if (kw == "left" || kw == "right") {
            detail::expect_arity(l, 2);
            (kw == "left" ? left : right) = detail::resolve_complex(cs, l, l.tok[1]);
            ++i;
        } else if (kw == "map") {
            auto [name, f] = detail::parse_map_block(lines, i, cs);
            if (name != "F" && name != "H_F" && name != "G" && name != "H_G")
                throw SyntaxError(l.no, "unexpected map '" + name + "' in a certificate");
            if (!maps.emplace(name, std::move(f)).second)
                throw SyntaxError(l.no, "map " + name + " given twice");
        } else if (kw == "cycle_left" || kw == "functional_left" || kw == "cycle_right" ||
                   kw == "functional_right") {
            if (!supports.emplace(kw, l).second)
                throw SyntaxError(l.no, "'" + kw + "' given twice");
            ++i;
        } else {
            throw SyntaxError(l.no, "unexpected '" + kw + "' inside a certificate");
        }
    }
    throw SyntaxError(head.no, "'certificate' block never ends");
}

inline LocalEquivCertificate load_certificate(const std::string& path) {
    return parse_certificate(read_text_file(path));
}

inline void save_certificate(const std::string& path, const LocalEquivCertificate& cert) {
    write_text_file(path, serialize_certificate(cert));
}

// ---------------------------------------------------------------------------
// split bundles

struct SplitBundle {
    CxPtr original, unit, acyclic, sum;
    GradedMap iota_prime, J, sum_to_complex, complex_to_sum;
    SplitReport report;
};

namespace detail {

inline const std::vector<std::pair<std::string, bool SplitReport::*>>& report_fields() {
    static const std::vector<std::pair<std::string, bool SplitReport::*>> f = {
        {"projections_idempotent", &SplitReport::projections_idempotent},
        {"five_term_identity", &SplitReport::five_term_identity},
        {"block_diagonal", &SplitReport::block_diagonal},
        {"unit_block_identity", &SplitReport::unit_block_identity},
        {"corrected_axiom_holds", &SplitReport::corrected_axiom_holds},
        {"acyclic_summand_valid", &SplitReport::acyclic_summand_valid},
    };
    return f;
}

}  // namespace detail

inline std::string serialize_split(const CxPtr& original, const SplitResult& s) {
    const CxPtr& sum = s.sum_to_complex.src;
    std::string out;
    std::set<std::string> names;
    for (const CxPtr& c : {original, s.unit_summand, s.acyclic_summand, sum}) {
        if (!names.insert(c->name).second)
            throw Error("serialize_split: complexes share the name " + c->name);
        if (!out.empty()) out += '\n';
        serialize_complex(out, *c);
    }
    out += "\nsplit\n";
    out += "original " + original->name + '\n';
    out += "unit " + s.unit_summand->name + '\n';
    out += "acyclic " + s.acyclic_summand->name + '\n';
    serialize_map(out, "iota_prime", s.iota_prime);
    serialize_map(out, "J", s.J);
    serialize_map(out, "sum_to_complex", s.sum_to_complex);
    serialize_map(out, "complex_to_sum", s.complex_to_sum);
    for (auto& [key, field] : detail::report_fields())
        out += "report " + key + (s.report.*field ? " true\n" : " false\n");
    out += "end\n";
    return out;
}

inline SplitBundle parse_split(const std::string& text) {
    auto lines = detail::scan(text);
    std::size_t i = 0;
    auto cs = detail::parse_complex_blocks(lines, i);
    if (i >= lines.size() || lines[i].tok[0] != "split")
        throw SyntaxError(i < lines.size() ? lines[i].no : 1, "expected a 'split' block");
    const detail::Line& head = lines[i];
    detail::expect_arity(head, 1);
    CxPtr original, unit, acyclic;
    std::map<std::string, GradedMap> maps;
    std::map<std::string, bool> report;
    for (++i; i < lines.size();) {
        const detail::Line& l = lines[i];
        const std::string& kw = l.tok[0];
        if (kw == "end") {
            detail::expect_arity(l, 1);
            ++i;
            if (i < lines.size())
                throw SyntaxError(lines[i].no, "text after the split ends");
            if (!original || !unit || !acyclic)
                throw SyntaxError(head.no, "missing 'original', 'unit', or 'acyclic'");
            for (const char* m : {"iota_prime", "J", "sum_to_complex", "complex_to_sum"})
                if (!maps.count(m))
                    throw SyntaxError(head.no, std::string("missing map ") + m);
            for (auto& [key, field] : detail::report_fields())
                if (!report.count(key))
                    throw SyntaxError(head.no, "missing 'report " + key + "'");
            for (const char* m : {"iota_prime", "J"}) {
                const GradedMap& f = maps.at(m);
                if (f.src != original || f.dst != original)
                    throw SyntaxError(head.no, std::string("map ") + m +
                                                   " must act on the original complex");
            }
            const GradedMap &to = maps.at("sum_to_complex"), &from = maps.at("complex_to_sum");
            if (to.src != from.dst || to.dst != original || from.src != original)
                throw SyntaxError(head.no,
                                  "basis maps must join the original complex and the sum");
            SplitBundle b{original, unit,          acyclic, to.src,
                          maps.at("iota_prime"),   maps.at("J"),
                          to,      from,           {}};
            for (auto& [key, field] : detail::report_fields()) b.report.*field = report.at(key);
            return b;
        } else if (kw == "original" || kw == "unit" || kw == "acyclic") {
            detail::expect_arity(l, 2);
            CxPtr& slot = kw == "original" ? original : kw == "unit" ? unit : acyclic;
            slot = detail::resolve_complex(cs, l, l.tok[1]);
            ++i;
        } else if (kw == "map") {
            auto [name, f] = detail::parse_map_block(lines, i, cs);
            if (name != "iota_prime" && name != "J" && name != "sum_to_complex" &&
                name != "complex_to_sum")
                throw SyntaxError(l.no, "unexpected map '" + name + "' in a split");
            if (!maps.emplace(name, std::move(f)).second)
                throw SyntaxError(l.no, "map " + name + " given twice");
        } else if (kw == "report") {
            detail::expect_arity(l, 3);
            bool known = false;
            for (auto& kv : detail::report_fields()) known |= kv.first == l.tok[1];
            if (!known) throw SyntaxError(l.no, "unknown report flag '" + l.tok[1] + "'");
            if (l.tok[2] != "true" && l.tok[2] != "false")
                throw SyntaxError(l.no, "report value must be true or false");
            if (!report.emplace(l.tok[1], l.tok[2] == "true").second)
                throw SyntaxError(l.no, "'report " + l.tok[1] + "' given twice");
            ++i;
        } else {
            throw SyntaxError(l.no, "unexpected '" + kw + "' inside a split");
        }
    }
    throw SyntaxError(head.no, "'split' block never ends");
}

}  // namespace icx::io
