// Walks one chord diagram from its double occurrence word to the signed
// matrix of a base-point choice, then checks the determinant property.
#include "circlerep/signed_ias.hpp"

#include <iostream>

using namespace circlerep;

int main() {
    EulerSystem es = parse_dow("abcdbacd");
    const FourRegular& g = es.graph();
    std::cout << "crossings:";
    for (const auto& v : g.vertex_labels) std::cout << " " << v;
    std::cout << "\n";

    LoopedGraph il = interlacement(es);
    std::cout << "interlacement edges:";
    for (const auto& [a, b] : il.edges()) std::cout << " " << a << b;
    std::cout << "\n\n";

    for (int base : {7, 6}) {
        SignedIas s = signed_ias(es, based_fundamentals(es, {base}));
        std::cout << "base edge " << base << ":\n";
        for (std::size_t i = 0; i < s.matrix.row_count(); ++i) {
            std::cout << "  " << s.matrix.row_labels()[i] << " |";
            for (std::size_t j = 0; j < s.matrix.col_count(); ++j)
                std::cout << " " << s.matrix.at_pos(i, j);
            std::cout << "\n";
        }
        auto dets = transversal_determinants(s);
        std::cout << "  " << dets.by_kinds.size() << " partition determinants, "
                  << (dets.transversely_unimodular ? "all" : "NOT all") << " in {-1,0,1}\n\n";
    }
    return 0;
}
