// Walks the root system of the 3-Kronecker quiver: enumerates positive real
// roots by height, classifies a few lattice vectors, and shows that the
// reflections preserve the Cartan pairing.

#include <iostream>

#include "kronfrob/kronfrob.hpp"

using namespace kronfrob;

int main() {
    const QuiverParams params(3);

    std::cout << "positive real roots up to height 12:\n";
    for (const auto& v : enumerate_positive_real_roots(params, 12))
        std::cout << "  (" << v.a1 << ", " << v.a2 << ")  height " << v.height() << "\n";

    std::cout << "\nclassification on the diagonal:\n";
    for (long k = 1; k <= 4; ++k) {
        const RootVector v{k, k};
        std::cout << "  (" << k << ", " << k << ")  imaginary: "
                  << (is_positive_imaginary_root(params, v) ? "yes" : "no") << "\n";
    }

    const RootVector u{5, 2}, w{1, 7};
    std::cout << "\nI(u, w) = " << bilinear_I(params, u, w)
              << ",  I(r1 u, r1 w) = "
              << bilinear_I(params, reflect(params, 1, u), reflect(params, 1, w)) << "\n";
    return 0;
}
