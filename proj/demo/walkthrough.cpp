// A short tour: build multi-indexed polynomials, their recurrence table, and
// check the recurrence, regeneration and orthogonality at the shipped presets.

#include <cstdio>
#include <iostream>

#include "miop/miop.hpp"

using namespace miop;

int main() {
    auto L = preset(Family::L);
    auto D = IndexSet::parse("I1,II1");
    std::cout << "family " << L.describe() << ", D = " << D.to_string() << ", ell = " << D.ell() << "\n";

    auto pair = build_LJ(L, D, 5);
    std::cout << "Xi_D(eta)   = " << to_string(pair.Xi) << "\n";
    for (long n = 0; n <= 2; ++n) std::cout << "P_{D," << n << "}(eta) = " << to_string(pair.at(n)) << "\n";

    // depth-2 table: 3+2M = 7 coefficient polynomials per n
    auto table = build_rtable_LJ(L, D.M(), -3, 4);
    std::cout << "\nR^[2]_{0,k}(eta), k = -3..3:\n";
    for (int k = -3; k <= 3; ++k) std::cout << "  k=" << k << ": " << to_string(table.at(2, 0, k)) << "\n";

    auto rrp = check_rrp(pair, table, -3, 2);
    std::cout << "\nrecurrence on n in [-3, 2]: " << (rrp.pass ? "exact zero" : "FAILED") << "\n";

    auto big = build_LJ(L, D, 8);
    auto regen = regenerate_from_initial(big, build_rtable_LJ(L, D.M(), -3, 8), 8);
    std::cout << "P_{D,3..8} regenerated from P_{D,0..2}: " << (regen.pass ? "identical" : "FAILED") << "\n";

    // the same battery in the Askey-Wilson case, where z-shifts do the work
    auto AW = preset(Family::AW);
    std::cout << "\n" << AW.describe() << "\n";
    for (const auto& r : run_suite<SqrtQRational>(AW, D))
        std::cout << "  " << r.identity << ": " << (r.pass ? "pass" : "fail") << "\n";

    // orthogonality by quadrature
    Weight w(L, D, big.Xi);
    std::cout << "\nquadrature, L, D = " << D.to_string() << "\n";
    for (long n = 0; n <= 3; ++n) {
        auto d = orthogonality_check(w, big, n, n);
        auto o = orthogonality_check(w, big, n, n + 1);
        std::printf("  n=%ld  <P_n,P_n> = %.15Lg (expected %.15Lg)  <P_n,P_{n+1}>/scale = %.1Le\n", n, d.integral,
                    d.expected, o.rel_err);
    }
    return rrp.pass && regen.pass ? 0 : 1;
}
