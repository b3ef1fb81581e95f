// Tours the Frobenius structure: picks a point on the quotient, converts it
// through the chart tower, evaluates the tensors, and continues the periods
// around a discriminant puncture to recover a Weyl reflection.

#include <iostream>

#include "kronfrob/kronfrob.hpp"

using namespace kronfrob;

namespace {
void print(const char* label, Complex z) {
    std::cout << label << " = " << z.real() << (z.imag() < 0 ? " - " : " + ")
              << std::abs(z.imag()) << "i\n";
}
}  // namespace

int main() {
    const auto frame = build_frame(QuiverParams(3));
    print("h", frame.h);

    const Complex s1(0.8, 0.4), s2(0.1, -0.2);
    const auto y = inverse_chart(frame, s1, s2);
    const auto x = covering_map(y.c1, y.c2);
    const auto [t1, t2] = flat_coords(frame, s1, s2);
    print("t1", t1);
    print("t2", t2);

    print("potential", potential(frame, t1, t2));
    print("discriminant", discriminant(frame, {Chart::Quotient, s1, s2}));

    const auto [u1, u2] = canonical_coords(frame, s1, s2);
    const auto [e1, e2] = euler_multiplication(frame, t1, t2).m.eigenvalues();
    print("u1", u1);
    print("eig(C_E) matching u1", std::abs(e1 - u1) < std::abs(e2 - u1) ? e1 : e2);

    const auto [x1, x2] = periods(frame, s1, s2);
    print("x1 x2 - t2", x1 * x2 - t2);
    print("x1 - e^{y1}", x1 - x.c1);

    const auto [m1, m2] = monodromy_matrices(frame);
    std::cout << "monodromy around +2i:\n";
    for (int i = 0; i < 2; ++i) {
        std::cout << "  ";
        for (int j = 0; j < 2; ++j) std::cout << m1.m.m[i][j].real() << " ";
        std::cout << "\n";
    }
    std::cout << "(nu = " << frame.nu << ", 1/nu = " << 1.0 / frame.nu << ")\n";
    return 0;
}
