// Sup errors of the classical Durrmeyer operator and the order-II
// modification on x^2 and |x - 1/2|, side by side.

#include "bdm/analysis.hpp"
#include "bdm/operator.hpp"

#include <cmath>
#include <cstdio>

int main() {
    const bdm::FunctionModel fs[] = {bdm::corpus::monomial(2), bdm::corpus::abs_half()};
    for (const auto& f : fs) {
        std::printf("%s\n%6s %14s %14s %14s\n", f.name().c_str(), "n", "classical", "order-II", "mu=2");
        for (int n = 8; n <= 256; n *= 2) {
            double classical = 0.0;
            for (double x : bdm::uniform_grid(bdm::kDefaultSupGrid))
                classical = std::max(classical, std::abs(bdm::apply_classical(f, n, x) - f(x)));
            const double order2 = bdm::sup_error(f, bdm::OperatorParams(n, 1.0));
            const double bezier = bdm::sup_error(f, bdm::OperatorParams(n, 2.0));
            std::printf("%6d %14.6e %14.6e %14.6e\n", n, classical, order2, bezier);
        }
        std::printf("\n");
    }
}
