// Lifts binary matroids to their two- and three-copy set systems and reads
// planarity off the lift.
#include "circlerep/recognize.hpp"

#include <iostream>

using namespace circlerep;

int main() {
    for (const char* name : {"K4", "K5"}) {
        LoopedGraph g = named_graph(name);
        BinaryMatroidRep m = graphic_matroid(g);
        SemiMultimatroid z2 = z2_of_matroid(m);
        SemiMultimatroid z3 = z3_of_matroid(m);
        std::cout << "cycle matroid of " << name << ": rank " << m.rank() << ", " << m.size()
                  << " elements\n";
        std::cout << "  two-copy lift: " << z2.circuits().size() << " circuits, "
                  << mm_class_name(classify(z2)) << "\n";
        std::cout << "  three-copy lift: " << z3.circuits().size() << " circuits, "
                  << mm_class_name(classify(z3)) << "\n";
        std::cout << "  planar: " << (matroid_is_planar(m) ? "yes" : "no") << "\n";
    }

    BinaryMatroidRep f = fano_matroid();
    std::cout << "Fano: two-copy lift has " << z2_of_matroid(f).circuits().size()
              << " circuits and planar says " << (matroid_is_planar(f) ? "yes" : "no") << "\n";
    return 0;
}
