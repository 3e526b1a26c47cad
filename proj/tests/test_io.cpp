#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "icx/corpus.hpp"
#include "icx/io.hpp"

using namespace icx;
using io::DuplicateArrow;
using io::SyntaxError;
using io::UnknownGenerator;

TEST_CASE("serializing and parsing the corpus is the identity") {
    auto cs = corpus::all();
    std::string text = io::serialize_complexes(cs);
    auto back = io::parse_complexes(text);
    REQUIRE(back.size() == cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) CHECK(identical_complex(*back[i], *cs[i]));
    CHECK(io::serialize_complexes(back) == text);
}

TEST_CASE("the shipped corpus file matches the built-in corpus") {
    auto fromfile = io::load_complexes(ICX_CORPUS_FILE);
    auto builtin = corpus::all();
    REQUIRE(fromfile.size() == builtin.size());
    for (std::size_t i = 0; i < builtin.size(); ++i)
        CHECK(identical_complex(*fromfile[i], *builtin[i]));
}

TEST_CASE("comments, blank lines, and free line order are accepted") {
    std::string text =
        "# a complex may list arrows before the generators they mention\n"
        "complex trefoil\n"
        "diff b a   # trailing comment\n"
        "\n"
        "gen a 0 1\n"
        "gen b -1 0\n"
        "gen c -2 -1\n"
        "diff b c\n"
        "iota a c\n"
        "iota c a\n"
        "iota b b\n"
        "end\n";
    auto cs = io::parse_complexes(text);
    REQUIRE(cs.size() == 1);
    CHECK(identical_complex(*cs[0], *corpus::trefoil()));
}

TEST_CASE("parsing reports malformed files by line") {
    auto line_of = [](const std::string& text) {
        try {
            io::parse_complexes(text);
        } catch (const io::ParseError& e) {
            return e.line;
        }
        return -1;
    };

    CHECK_THROWS_AS(io::parse_complexes("gen a 0 0\n"), SyntaxError);
    CHECK_THROWS_AS(io::parse_complexes("complex c\ngen a 0 zero\nend\n"), SyntaxError);
    CHECK_THROWS_AS(io::parse_complexes("complex c\ngen a 0\nend\n"), SyntaxError);
    CHECK_THROWS_AS(io::parse_complexes("complex c\nfoo a b\nend\n"), SyntaxError);
    CHECK_THROWS_AS(io::parse_complexes("complex c extra words\nend\n"), SyntaxError);
    CHECK_THROWS_AS(io::parse_complexes("complex c\ngen a 1 0\n"), SyntaxError);
    CHECK_THROWS_AS(io::parse_complexes("complex c\nend\ncomplex c\nend\n"), SyntaxError);
    CHECK(line_of("complex c\ngen a 0 zero\nend\n") == 2);
    CHECK(line_of("complex c\n# comment\n\ngen a 1 0\n") == 1);  // unterminated block

    std::string unknown = "complex c\ngen a 1 0\ngen b 0 0\ndiff b q\nend\n";
    CHECK_THROWS_AS(io::parse_complexes(unknown), UnknownGenerator);
    CHECK(line_of(unknown) == 4);

    std::string dup = "complex c\ngen a 1 0\ngen b 0 0\ndiff b a\ndiff b a\nend\n";
    CHECK_THROWS_AS(io::parse_complexes(dup), DuplicateArrow);
    CHECK(line_of(dup) == 5);
}

TEST_CASE("parsing does not validate; that is a separate pass") {
    // both arrows are structurally inadmissible, yet the file parses
    std::string text = "complex bad\ngen a 0 0\ngen b 0 0\ndiff a b\niota a a\nend\n";
    auto cs = io::parse_complexes(text);
    REQUIRE(cs.size() == 1);
    auto errs = validate_structural(*cs[0]);
    REQUIRE_FALSE(errs.empty());
    CHECK(errs[0].code == ErrorCode::ParityViolation);
}

TEST_CASE("complex files survive a trip through the filesystem") {
    namespace fs = std::filesystem;
    fs::path p = fs::temp_directory_path() / "icx_io_roundtrip.icx";
    io::save_complexes(p.string(), corpus::all());
    auto back = io::load_complexes(p.string());
    REQUIRE(back.size() == corpus::all().size());
    CHECK(identical_complex(*io::find_complex(back, "figure8"), *corpus::figure8()));
    CHECK_THROWS_AS(io::find_complex(back, "nonsense"), Error);
    fs::remove(p);
    CHECK_THROWS_AS(io::load_complexes(p.string()), Error);
}

TEST_CASE("a solver certificate survives serialization and still checks") {
    auto big = tensor(corpus::trefoil(), corpus::trefoil_mirror(), 1);
    auto d = decide_local_equivalence(big, corpus::unknot());
    REQUIRE(d.equivalent);
    std::string text = io::serialize_certificate(*d.certificate);
    LocalEquivCertificate back = io::parse_certificate(text);
    CHECK(check_certificate(back));
    CHECK(back.F.mat == d.certificate->F.mat);
    CHECK(back.H_G.mat == d.certificate->H_G.mat);
    CHECK(back.cycle_left == d.certificate->cycle_left);
    CHECK(back.functional_right == d.certificate->functional_right);
    CHECK(io::serialize_certificate(back) == text);
}

TEST_CASE("an identity certificate shares one complex block for both sides") {
    auto t = corpus::trefoil();
    auto cert = identity_certificate(t);
    std::string text = io::serialize_certificate(cert);
    // only one complex block, referenced as both left and right
    CHECK(text.find("complex trefoil") == text.rfind("complex trefoil"));
    LocalEquivCertificate back = io::parse_certificate(text);
    CHECK(back.F.src == back.F.dst);
    CHECK(check_certificate(back));
}

TEST_CASE("malformed certificate files are rejected") {
    auto cert = identity_certificate(corpus::unknot());
    std::string text = io::serialize_certificate(cert);

    auto drop_block = [&](const std::string& head) {
        std::string out;
        std::istringstream in(text);
        std::string line;
        bool skipping = false;
        while (std::getline(in, line)) {
            if (line == head) skipping = true;
            if (!skipping) out += line + '\n';
            if (skipping && line == "end") skipping = false;
        }
        return out;
    };
    CHECK_THROWS_AS(io::parse_certificate(drop_block("map G")), SyntaxError);
    CHECK_THROWS_AS(io::parse_certificate("complex e\ngen x 0 0\niota x x\nend\n"), SyntaxError);

    std::string wrong = text;
    wrong.replace(wrong.find("cycle_left e"), 12, "cycle_left q");
    CHECK_THROWS_AS(io::parse_certificate(wrong), UnknownGenerator);

    // an entry inadmissible for the declared character is a parse error:
    // a -> a is filtered of degree 0 on the trefoil but not skew
    std::string tref = io::serialize_certificate(identity_certificate(corpus::trefoil()));
    tref.replace(tref.find("character filtered"), 18, "character skew");
    CHECK_THROWS_AS(io::parse_certificate(tref), SyntaxError);
}

TEST_CASE("a split bundle survives serialization and still replays") {
    auto mix = corpus::mixbox();
    auto d = decide_local_equivalence(mix, corpus::unknot());
    REQUIRE(d.equivalent);
    SplitResult s = split_involution(mix, *d.certificate);
    std::string text = io::serialize_split(mix, s);

    io::SplitBundle b = io::parse_split(text);
    CHECK(identical_complex(*b.original, *mix));
    CHECK(identical_complex(*b.unit, *s.unit_summand));
    CHECK(identical_complex(*b.acyclic, *s.acyclic_summand));
    CHECK(b.iota_prime == s.iota_prime);
    CHECK(b.J == s.J);
    CHECK(b.sum_to_complex.mat == s.sum_to_complex.mat);
    CHECK(b.complex_to_sum.mat == s.complex_to_sum.mat);
    CHECK(b.report.five_term_identity);
    CHECK(b.report.acyclic_summand_valid);

    // the parsed maps still witness the five-term identity on the original
    GradedMap iota = make_map(b.original, b.original, 0, Character::Skew, b.original->iota);
    CHECK(verify_homotopy(iota, b.iota_prime, b.J));
    CHECK(io::serialize_split(b.original,
                              SplitResult{{}, b.unit, b.acyclic, b.sum_to_complex,
                                          b.complex_to_sum, b.iota_prime, b.J, b.report}) == text);
}
