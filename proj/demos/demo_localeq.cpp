// Walkthrough of the local-equivalence solver: one pair refuted exactly,
// one pair settled with a certificate that replays by pure matrix algebra.
#include <cstdio>

#include "icx/corpus.hpp"
#include "icx/io.hpp"

using namespace icx;

namespace {

void print_map(const char* label, const GradedMap& f) {
    std::printf("  %s : %s -> %s  (degree %+d, %s)\n", label, f.src->name.c_str(),
                f.dst->name.c_str(), f.degree, character_name(f.chr));
    auto es = f.mat.entries();
    if (es.empty()) std::printf("      (zero)\n");
    for (auto [x, y] : es) {
        int q = *entry_exponent(*f.src, *f.dst, x, y, f.degree);
        if (q == 0)
            std::printf("      %s -> %s\n", f.src->gens[x].name.c_str(),
                        f.dst->gens[y].name.c_str());
        else
            std::printf("      %s -> U^%d %s\n", f.src->gens[x].name.c_str(), q,
                        f.dst->gens[y].name.c_str());
    }
}

void report(const CxPtr& a, const CxPtr& b) {
    std::printf("== %s vs %s ==\n", a->name.c_str(), b->name.c_str());
    LocalEquivDecision d = decide_local_equivalence(a, b);
    std::printf("  forward local map:  %s\n", d.forward_exists ? "exists" : "none");
    std::printf("  backward local map: %s\n", d.backward_exists ? "exists" : "none");
    std::printf("  locally equivalent: %s\n", d.equivalent ? "yes" : "no");
    if (d.certificate) {
        print_map("F", d.certificate->F);
        print_map("G", d.certificate->G);
        std::printf("  certificate replays: %s\n",
                    check_certificate(*d.certificate) ? "yes" : "no");
    }
    std::printf("\n");
}

}  // namespace

int main() {
    CxPtr e = corpus::unknot();
    CxPtr t = corpus::trefoil();

    // The trefoil complex maps onto the trivial one, but every candidate
    // entry of a map coming back violates the filtration, so the solver
    // refutes the pair outright rather than timing out.
    report(t, e);

    // Pairing with the mirror cancels the obstruction.
    CxPtr p = tensor(t, dual(t), 1);
    report(p, e);

    // The whole bundle is plain text; save it, mail it, replay it later.
    LocalEquivDecision d = decide_local_equivalence(p, e);
    std::printf("%s", io::serialize_certificate(*d.certificate).c_str());
    return 0;
}
