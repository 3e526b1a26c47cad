// icx -- command line front end for the involutive complex library.
//
// Subcommands operate on complex files; see the format notes in
// include/icx/io.hpp. Exit codes: 0 success (including heuristic searches
// that come back inconclusive, which are reported but decide nothing),
// 1 a decidable negative answer, 2 bad input or internal failure.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "icx/corpus.hpp"
#include "icx/io.hpp"
#include "icx/random.hpp"

using namespace icx;
using nlohmann::json;

namespace {

struct Opts {
    std::string file, complex_name, left, right, out, cert, new_name;
    int variant = 1;
    bool deep = false;
    bool as_json = false;
};

struct Report {
    json j;
    std::vector<std::string> lines;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Report(const std::string& command) {
        j["command"] = command;
        j["inputs"] = json::object();
        j["result"] = json::object();
        j["certificates"] = json::array();
    }
    void say(const std::string& s) { lines.push_back(s); }
    void attach_certificate(const std::string& role, const std::string& text,
                            const std::string& path = "") {
        json c{{"role", role}, {"text", text}};
        if (!path.empty()) c["path"] = path;
        j["certificates"].push_back(std::move(c));
    }
    void flush(bool as_json) {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            start);
        j["timings"] = {{"total_ms", ms.count()}};
        if (as_json) {
            std::cout << j.dump(2) << '\n';
        } else {
            for (const auto& l : lines) std::cout << l << '\n';
        }
    }
};

const char* tag_name(HomologyType::Tag t) {
    switch (t) {
        case HomologyType::Tag::Unit: return "unit";
        case HomologyType::Tag::Acyclic: return "acyclic";
        default: return "other";
    }
}

json homology_json(const HomologyType& h) {
    json out{{"tag", tag_name(h.tag)}, {"h_even", h.h_even}, {"h_odd", h.h_odd}};
    if (h.tag == HomologyType::Tag::Unit) out["unit_parity"] = h.unit_parity;
    return out;
}

std::string homology_text(const HomologyType& h) {
    std::string out = tag_name(h.tag);
    if (h.tag == HomologyType::Tag::Unit)
        out += " (parity " + std::to_string(h.unit_parity) + ")";
    else if (h.tag == HomologyType::Tag::Other)
        out += " (h_even " + std::to_string(h.h_even) + ", h_odd " + std::to_string(h.h_odd) + ")";
    return out;
}

CxPtr with_name(const CxPtr& c, const std::string& name) {
    if (name.empty()) return c;
    auto out = std::make_shared<IotaComplex>(*c);
    out->name = name;
    return out;
}

// Commands past validate assume a structurally sound input.
const CxPtr& need_valid(const CxPtr& c) {
    auto errs = validate_structural(*c);
    if (!errs.empty())
        throw Error("complex " + c->name + " is not structurally valid: " + errs[0].message);
    return c;
}

std::vector<CxPtr> select(const std::vector<CxPtr>& cs, const std::string& name) {
    if (name.empty()) return cs;
    return {io::find_complex(cs, name)};
}

json map_json(const GradedMap& f) {
    json entries = json::array();
    for (auto [x, y] : f.mat.entries())
        entries.push_back({f.src->gens[x].name, f.dst->gens[y].name});
    return json{{"degree", f.degree},
                {"character", character_name(f.chr)},
                {"entries", std::move(entries)}};
}

// Emits the output complex the same way everywhere: to a file with -o,
// inline otherwise.
void emit_complex(Report& r, const Opts& o, const CxPtr& c) {
    std::string text = io::serialize_complex(*c);
    r.j["result"]["name"] = c->name;
    r.j["result"]["generators"] = c->size();
    r.j["result"]["homology"] = homology_json(homology_type(*c));
    r.j["complex"] = text;
    if (!o.out.empty()) {
        io::write_text_file(o.out, text);
        r.say("written to " + o.out);
    } else {
        r.say(text);
    }
}

int cmd_validate(const Opts& o, Report& r) {
    auto cs = select(io::load_complexes(o.file), o.complex_name);
    json results = json::array();
    bool all_ok = true;
    for (const auto& c : cs) {
        auto errs = o.deep ? deep_validate(c) : validate_structural(*c);
        json findings = json::array();
        for (const auto& e : errs)
            findings.push_back({{"code", error_code_name(e.code)}, {"message", e.message}});
        results.push_back({{"name", c->name},
                           {"auxiliary", c->auxiliary},
                           {"valid", errs.empty()},
                           {"findings", std::move(findings)}});
        if (errs.empty()) {
            r.say(c->name + ": valid" + (o.deep ? " (deep)" : ""));
        } else {
            all_ok = false;
            r.say(c->name + ": " + std::to_string(errs.size()) + " finding(s)");
            for (const auto& e : errs)
                r.say(std::string("  ") + error_code_name(e.code) + ": " + e.message);
        }
    }
    r.j["result"]["complexes"] = std::move(results);
    r.j["result"]["valid"] = all_ok;
    return all_ok ? 0 : 1;
}

int cmd_homology(const Opts& o, Report& r) {
    auto cs = select(io::load_complexes(o.file), o.complex_name);
    json results = json::array();
    for (const auto& c : cs) {
        need_valid(c);
        HomologyType h = homology_type(*c);
        results.push_back({{"name", c->name}, {"homology", homology_json(h)}});
        r.say(c->name + ": " + homology_text(h));
    }
    r.j["result"]["complexes"] = std::move(results);
    return 0;
}

int cmd_derive(const Opts& o, Report& r) {
    auto c = need_valid(io::find_complex(io::load_complexes(o.file), o.complex_name));
    GradedMap p = phi(c), q = psi(c);
    r.j["result"]["phi"] = map_json(p);
    r.j["result"]["psi"] = map_json(q);
    auto describe = [&](const char* label, const GradedMap& f) {
        auto es = f.mat.entries();
        r.say(std::string(label) + ": degree " + std::to_string(f.degree) + ", character " +
              character_name(f.chr) + ", " + std::to_string(es.size()) + " entr" +
              (es.size() == 1 ? "y" : "ies"));
        for (auto [x, y] : es)
            r.say("  " + f.src->gens[x].name + " -> " + f.dst->gens[y].name);
    };
    describe("phi", p);
    describe("psi", q);
    if (!o.out.empty()) {
        std::string text = io::serialize_complex(*c) + '\n';
        io::serialize_map(text, "phi", p);
        io::serialize_map(text, "psi", q);
        io::write_text_file(o.out, text);
        r.say("written to " + o.out);
    }
    return 0;
}

int cmd_tensor(const Opts& o, Report& r) {
    auto cs = io::load_complexes(o.file);
    auto a = need_valid(io::find_complex(cs, o.left));
    auto b = need_valid(io::find_complex(cs, o.right));
    CxPtr p = with_name(tensor(a, b, o.variant), o.new_name);
    r.j["inputs"]["variant"] = o.variant;
    emit_complex(r, o, p);
    return 0;
}

int cmd_dual(const Opts& o, Report& r) {
    auto c = need_valid(io::find_complex(io::load_complexes(o.file), o.complex_name));
    CxPtr d = with_name(dual(c), o.new_name);
    emit_complex(r, o, d);
    return 0;
}

int cmd_sum(const Opts& o, Report& r) {
    auto cs = io::load_complexes(o.file);
    auto a = need_valid(io::find_complex(cs, o.left));
    auto b = need_valid(io::find_complex(cs, o.right));
    CxPtr s = with_name(direct_sum(a, b), o.new_name);
    emit_complex(r, o, s);
    return 0;
}

int cmd_localeq(const Opts& o, Report& r) {
    auto cs = io::load_complexes(o.file);
    auto a = need_valid(io::find_complex(cs, o.left));
    auto b = o.right.empty() ? identity_complex()
                             : need_valid(io::find_complex(cs, o.right));
    LocalEquivDecision d = decide_local_equivalence(a, b);
    r.say("forward local map " + a->name + " -> " + b->name + ": " +
          (d.forward_exists ? "exists" : "none"));
    r.say("backward local map " + b->name + " -> " + a->name + ": " +
          (d.backward_exists ? "exists" : "none"));
    r.say(std::string("locally equivalent: ") + (d.equivalent ? "yes" : "no"));
    r.j["result"] = {{"equivalent", d.equivalent},
                     {"forward_exists", d.forward_exists},
                     {"backward_exists", d.backward_exists}};
    if (d.certificate) {
        std::string text = io::serialize_certificate(*d.certificate);
        if (!o.cert.empty()) {
            io::write_text_file(o.cert, text);
            r.say("certificate written to " + o.cert);
        }
        r.attach_certificate("local_equivalence", text, o.cert);
    }
    return d.equivalent ? 0 : 1;
}

// Obtains the certificate a splitting needs: from a file when given,
// otherwise by deciding local triviality on the spot. Returns nullopt when
// that decision is a no, which the caller reports as a negative answer.
std::optional<LocalEquivCertificate> trivializing_certificate(const Opts& o, Report& r,
                                                              const CxPtr& c) {
    if (!o.cert.empty()) return io::load_certificate(o.cert);
    LocalEquivDecision d = decide_local_equivalence(c, identity_complex());
    if (!d.equivalent) {
        r.say(c->name + " is not locally trivial; nothing to split off");
        r.j["result"]["locally_trivial"] = false;
        return std::nullopt;
    }
    return d.certificate;
}

int cmd_split(const Opts& o, Report& r) {
    auto c = need_valid(io::find_complex(io::load_complexes(o.file), o.complex_name));
    auto cert = trivializing_certificate(o, r, c);
    if (!cert) return 1;
    SplitResult s = split_involution(c, *cert);
    r.say("unit summand: " + s.unit_summand->name + " (generator " +
          s.unit_summand->gens[0].name + ")");
    r.say("acyclic summand: " + s.acyclic_summand->name + " (" +
          std::to_string(s.acyclic_summand->size()) + " generators)");
    auto flag = [&](const char* k, bool v) {
        r.say(std::string(k) + ": " + (v ? "yes" : "no"));
        r.j["result"][k] = v;
    };
    flag("projections_idempotent", s.report.projections_idempotent);
    flag("five_term_identity", s.report.five_term_identity);
    flag("block_diagonal", s.report.block_diagonal);
    flag("unit_block_identity", s.report.unit_block_identity);
    flag("corrected_axiom_holds", s.report.corrected_axiom_holds);
    flag("acyclic_summand_valid", s.report.acyclic_summand_valid);
    r.j["result"]["unit_generator"] = s.unit_summand->gens[0].name;
    r.j["result"]["acyclic_generators"] = s.acyclic_summand->size();
    std::string text = io::serialize_split(c, s);
    r.j["split"] = text;
    if (!o.out.empty()) {
        io::write_text_file(o.out, text);
        r.say("split written to " + o.out);
    }
    return 0;
}

int cmd_stable(const Opts& o, Report& r) {
    auto cs = io::load_complexes(o.file);
    auto a = need_valid(io::find_complex(cs, o.left));
    auto b = need_valid(io::find_complex(cs, o.right));
    r.j["inputs"]["variant"] = o.variant;
    std::optional<LocalEquivCertificate> cert;
    if (!o.cert.empty()) {
        cert = io::load_certificate(o.cert);
    } else {
        LocalEquivDecision d = decide_local_equivalence(a, b);
        if (!d.equivalent) {
            r.say(a->name + " and " + b->name +
                  " are not locally equivalent; no stable witness exists");
            r.j["result"]["locally_equivalent"] = false;
            return 1;
        }
        cert = d.certificate;
    }
    StableWitness w = stable_witness(a, b, *cert, o.variant);
    r.say("left companion " + w.left->name + ": " + std::to_string(w.left->size()) +
          " generators");
    r.say("right companion " + w.right->name + ": " + std::to_string(w.right->size()) +
          " generators");
    r.say(std::string("tensor association: ") + association_name(w.association));
    r.say(std::string("graded homology dimensions match: ") +
          (w.homology_dims_match ? "yes" : "no"));
    r.say(std::string("companions locally equivalent: ") +
          (w.decision.equivalent ? "yes" : "no"));
    r.say(std::string("homotopy equivalence search (heuristic): ") +
          (w.homotopy ? "found" : "inconclusive"));
    r.j["result"]["left"] = {{"name", w.left->name}, {"generators", w.left->size()},
                             {"homology", homology_json(w.homology_left)}};
    r.j["result"]["right"] = {{"name", w.right->name}, {"generators", w.right->size()},
                              {"homology", homology_json(w.homology_right)}};
    r.j["result"]["association"] = association_name(w.association);
    r.j["result"]["homology_dims_match"] = w.homology_dims_match;
    r.j["result"]["locally_equivalent"] = w.decision.equivalent;
    r.j["result"]["homotopy_equivalence"] = w.homotopy ? "found" : "inconclusive";
    if (w.decision.certificate)
        r.attach_certificate("companion_local_equivalence",
                             io::serialize_certificate(*w.decision.certificate));
    if (!o.out.empty()) {
        io::save_complexes(o.out, {w.left, w.right});
        r.say("companions written to " + o.out);
    }
    return w.decision.equivalent ? 0 : 1;
}

int cmd_selfcheck(const Opts&, Report& r) {
    bool ok = true;
    auto step = [&](const std::string& label, bool good) {
        r.say(label + ": " + (good ? "ok" : "FAILED"));
        r.j["result"][label] = good;
        ok &= good;
    };
    bool corpus_ok = true;
    for (const auto& c : corpus::all()) corpus_ok &= deep_validate(c).empty();
    step("corpus deep validation", corpus_ok);

    auto t = corpus::trefoil();
    step("trefoil vs unknot refuted", !decide_local_equivalence(t, corpus::unknot()).equivalent);

    auto big = tensor(t, corpus::trefoil_mirror(), 1);
    LocalEquivDecision d = decide_local_equivalence(big, corpus::unknot());
    step("trefoil x mirror locally trivial", d.equivalent && check_certificate(*d.certificate));
    if (d.equivalent) {
        SplitResult s = split_involution(big, *d.certificate);
        step("splitting off the unit summand",
             s.report.five_term_identity && s.report.block_diagonal &&
                 s.acyclic_summand->size() == 8);
    }

    std::mt19937_64 rng(7);
    bool randoms_ok = true;
    for (int i = 0; i < 10; ++i) {
        CxPtr c = random_complex(rng);
        randoms_ok &= validate_structural(*c).empty() &&
                      homology_type(*c).tag == HomologyType::Tag::Unit;
    }
    step("random complexes valid with unit homology", randoms_ok);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact involutive complexes over F2[U,U^-1]"};
    app.require_subcommand(1);
    Opts o;
    int rc = 0;

    auto add_file = [&](CLI::App* s) {
        s->add_option("file", o.file, "complex file to read")->required();
    };
    auto add_json = [&](CLI::App* s) { s->add_flag("--json", o.as_json, "emit a JSON report"); };
    auto add_out = [&](CLI::App* s) {
        s->add_option("-o,--output", o.out, "write the result to this file");
    };
    auto add_name = [&](CLI::App* s) {
        s->add_option("--name", o.new_name, "name for the result complex");
    };
    auto add_pair = [&](CLI::App* s) {
        s->add_option("--left", o.left, "name of the left complex")->required();
        s->add_option("--right", o.right, "name of the right complex")->required();
    };
    auto add_variant = [&](CLI::App* s) {
        s->add_option("--variant", o.variant, "involution correction, 1 or 2")
            ->check(CLI::IsMember({1, 2}));
    };

    auto wire = [&](CLI::App* s, int (*fn)(const Opts&, Report&)) {
        add_json(s);
        s->callback([&o, &rc, s, fn] {
            Report r(s->get_name());
            if (!o.file.empty()) r.j["inputs"]["file"] = o.file;
            if (!o.complex_name.empty()) r.j["inputs"]["complex"] = o.complex_name;
            if (!o.left.empty()) r.j["inputs"]["left"] = o.left;
            if (!o.right.empty()) r.j["inputs"]["right"] = o.right;
            rc = fn(o, r);
            r.j["exit_code"] = rc;
            r.flush(o.as_json);
        });
    };

    auto* validate = app.add_subcommand("validate", "check complexes in a file");
    add_file(validate);
    validate->add_option("--complex", o.complex_name, "check only this complex");
    validate->add_flag("--deep", o.deep, "also verify the involution axiom and homology");
    wire(validate, cmd_validate);

    auto* homology = app.add_subcommand("homology", "graded homology over F2[U,U^-1]");
    add_file(homology);
    homology->add_option("--complex", o.complex_name, "only this complex");
    wire(homology, cmd_homology);

    auto* derive = app.add_subcommand("derive", "formal derivatives phi and psi");
    add_file(derive);
    derive->add_option("--complex", o.complex_name, "complex to differentiate")->required();
    add_out(derive);
    wire(derive, cmd_derive);

    auto* tensorc = app.add_subcommand("tensor", "tensor product with corrected involution");
    add_file(tensorc);
    add_pair(tensorc);
    add_variant(tensorc);
    add_name(tensorc);
    add_out(tensorc);
    wire(tensorc, cmd_tensor);

    auto* dualc = app.add_subcommand("dual", "dual complex");
    add_file(dualc);
    dualc->add_option("--complex", o.complex_name, "complex to dualize")->required();
    add_name(dualc);
    add_out(dualc);
    wire(dualc, cmd_dual);

    auto* sumc = app.add_subcommand("sum", "direct sum");
    add_file(sumc);
    add_pair(sumc);
    add_name(sumc);
    add_out(sumc);
    wire(sumc, cmd_sum);

    auto* localeq = app.add_subcommand("localeq", "decide local equivalence");
    add_file(localeq);
    localeq->add_option("--left", o.left, "name of the left complex")->required();
    localeq->add_option("--right", o.right,
                        "name of the right complex; the trivial complex when omitted");
    localeq->add_option("--certificate", o.cert, "write the certificate to this file");
    wire(localeq, cmd_localeq);

    auto* split = app.add_subcommand("split", "split off the unit summand");
    add_file(split);
    split->add_option("--complex", o.complex_name, "complex to split")->required();
    split->add_option("--certificate", o.cert, "local triviality certificate to use");
    add_out(split);
    wire(split, cmd_split);

    auto* stable = app.add_subcommand("stable", "stable equivalence witness for a local pair");
    add_file(stable);
    add_pair(stable);
    add_variant(stable);
    stable->add_option("--certificate", o.cert, "local equivalence certificate to use");
    add_out(stable);
    wire(stable, cmd_stable);

    auto* selfcheck = app.add_subcommand("selfcheck", "run the built-in sanity suite");
    wire(selfcheck, cmd_selfcheck);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const io::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
