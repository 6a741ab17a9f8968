// Hilbert series of the three exterior algebras on W(B2), and the two flat
// connections theta_1, theta_2 of the quartic algebra.

#include <iostream>

#include "weylcalc/calculus.hpp"
#include "weylcalc/connections.hpp"

int main() {
  using namespace weylcalc;
  RootSystem b2 = build_root_system(RootType::B, 2);

  auto print = [](const char* name, const std::vector<std::size_t>& dims) {
    std::cout << name << ":";
    for (auto d : dims) std::cout << ' ' << d;
    std::cout << '\n';
  };
  print("quad", hilbert_dims(*make_quad(b2), 8));
  print("quar", hilbert_dims(*make_quar(b2), 8));
  print("woronowicz", woronowicz_dims(b2, 5));

  auto quar = make_quar(b2);
  for (int i = 1; i <= 2; ++i) {
    NCPoly theta = theta_i(b2, i);
    std::cout << "theta_" << i << " = " << theta.to_string(b2.labels()) << '\n';
    NCPoly f = curvature(*quar, -theta);
    std::cout << "  F(-theta_" << i << ") = " << (f.is_zero() ? "0" : f.to_string(b2.labels())) << '\n';
  }
}
