// Walkthrough: certify a quadratic twist, assemble the Coleman bound over
// the best small prime, and cross-check with a height-bounded search.

#include <iostream>

#include "twistbound/certify.hpp"
#include "twistbound/search.hpp"

int main() {
    using namespace twistbound;

    const IntegerPolynomial f{1, 0, 0, 0, 0, 1};  // x^5 + 1

    const auto cert = certify_independence(f, Int(7), 2);
    std::cout << "certificate for 7*y^2 = x^5 + 1:\n" << cert.to_json().dump(2) << "\n\n";

    const auto [prime, data] = best_coleman_prime(f, Int(1), 1, 20);
    std::cout << "best Coleman prime for y^2 = x^5 + 1 at rank 1: p = " << prime
              << ", bound " << data.bound << " (" << data.residue_count << " residue points + "
              << data.f_value << " + " << data.delta_correction << ")\n\n";

    const HyperellipticTwist curve(f, Int(7));
    const auto report = pair_by_involution(search_hyperelliptic(curve, 50));
    std::cout << "points of height <= 50 on 7*y^2 = x^5 + 1:\n";
    for (const auto& point : report.points) std::cout << "  " << point.to_string() << "\n";
    return 0;
}
