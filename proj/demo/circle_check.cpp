// Decides circle graph membership for a wheel and for its rim, and digs up
// the obstruction hiding in the wheel.
#include "circlerep/recognize.hpp"

#include <iostream>

using namespace circlerep;

int main() {
    LoopedGraph wheel = named_graph("W5");
    CircleCheck w = is_circle(wheel);
    std::cout << "W5 is a circle graph: " << (w.circle ? "yes" : "no") << "\n";
    if (!w.circle)
        std::cout << "  equation family " << w.conflict->family << " over " << w.conflict->terms.size()
                  << " variables has no solution\n";

    ObstructionScan scan = find_obstruction(wheel);
    if (scan.found) std::cout << "  witness: " << scan.found->name << " as a vertex-minor\n";

    LoopedGraph rim = named_graph("C5");
    CircleCheck c = is_circle(rim);
    std::cout << "C5 is a circle graph: " << (c.circle ? "yes" : "no") << "\n";
    if (auto words = realize(rim)) {
        std::cout << "  chord diagram:";
        for (const auto& word : *words) std::cout << " " << word;
        std::cout << "\n";
        // and the matrix it carries is the plain interlacement matrix over GF(2)
        std::cout << "  GF(2) representation matches the interlacement matrix: "
                  << (represent_over(rim, FieldSpec::gf2()) == ias_matrix(rim) ? "yes" : "no") << "\n";
    }
    return 0;
}
