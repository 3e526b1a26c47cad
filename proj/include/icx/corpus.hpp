// corpus.hpp -- the built-in example complexes used by tests and demos.
// data/corpus.icx holds the same complexes in file form; a test keeps the
// two in sync.
#pragma once

#include "complex.hpp"

namespace icx::corpus {

inline CxPtr unknot() {
    return make_complex("unknot", {{"e", 0, 0}}, {}, {{"e", "e"}});
}

// Left-handed trefoil: a staircase of length three. iota swaps the two ends
// of the staircase and fixes the middle.
inline CxPtr trefoil() {
    return make_complex("trefoil",
                        {{"a", 0, 1}, {"b", -1, 0}, {"c", -2, -1}},
                        {{"b", "a"}, {"b", "c"}},
                        {{"a", "c"}, {"c", "a"}, {"b", "b"}});
}

// Mirror staircase, literally the dual of the trefoil.
inline CxPtr trefoil_mirror() {
    return make_complex("trefoil_mirror",
                        {{"a", 0, -1}, {"b", 1, 0}, {"c", 2, 1}},
                        {{"a", "b"}, {"c", "b"}},
                        {{"a", "c"}, {"c", "a"}, {"b", "b"}});
}

// A single cancelling pair. Acyclic, hence declared auxiliary.
inline CxPtr box2() {
    return make_complex("box2", {{"p", 0, 0}, {"q", -1, 0}}, {{"p", "q"}}, {{"p", "p"}, {"q", "q"}},
                        /*auxiliary=*/true);
}

// A square with all Alexander gradings zero. Acyclic, auxiliary.
inline CxPtr square4() {
    return make_complex("square4",
                        {{"s", 1, 0}, {"m1", 0, 0}, {"m2", 0, 0}, {"t", -1, 0}},
                        {{"s", "m1"}, {"s", "m2"}, {"m1", "t"}, {"m2", "t"}},
                        {{"s", "s"}, {"m1", "m1"}, {"m2", "m2"}, {"t", "t"}},
                        /*auxiliary=*/true);
}

// Unit summand plus a cancelling pair, with an involution that mixes the
// two summands. Locally trivial but not split as given.
inline CxPtr mixbox() {
    return make_complex("mixbox",
                        {{"e", 0, 0}, {"p", 0, 0}, {"q", -1, 0}},
                        {{"p", "q"}},
                        {{"e", "e"}, {"p", "e"}, {"p", "p"}, {"q", "q"}});
}

// Figure-eight pattern: a box plus a fixed unit generator, with an
// involution mixing the unit generator into the box. The involution axiom
// holds on the nose (the derivative correction equals iota^2 + id exactly).
inline CxPtr figure8() {
    return make_complex("figure8",
                        {{"e", 0, 0}, {"a", 1, 1}, {"b", 0, 0}, {"c", -1, -1}, {"d", 0, 0}},
                        {{"b", "a"}, {"b", "c"}, {"a", "d"}, {"c", "d"}},
                        {{"e", "e"}, {"e", "d"}, {"b", "e"}, {"b", "b"},
                         {"a", "c"}, {"c", "a"}, {"d", "d"}});
}

inline std::vector<CxPtr> all() {
    return {unknot(), trefoil(), trefoil_mirror(), box2(), square4(), mixbox(), figure8()};
}

}  // namespace icx::corpus
