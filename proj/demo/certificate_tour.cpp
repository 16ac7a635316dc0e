// Builds the k = 2 certificate, prints its pieces and runs the exact checks.

#include <iostream>

#include "silverprox/certificate.hpp"
#include "silverprox/identity.hpp"

using namespace silverprox;

namespace {

void print_grid(const char* name, const ExactGrid& g) {
  std::cout << name << " (indices " << g.first_index() << ".." << g.last_index() << ")\n";
  for (std::size_t i = g.first_index(); i <= g.last_index(); ++i) {
    for (std::size_t j = g.first_index(); j <= g.last_index(); ++j) std::cout << "  " << g(i, j);
    std::cout << '\n';
  }
}

}  // namespace

int main() {
  const auto b = CertificateBundle::build(2);
  std::cout << "schedule:";
  for (const auto& a : b.schedule.pi) std::cout << ' ' << a;
  std::cout << "\n\n";
  print_grid("lambda bar", b.lambda.bar);
  print_grid("mu bar", b.mu.bar);
  print_grid("S", b.slack.s);

  std::cout << "\nnonneg: " << check_multipliers_nonneg(b).pass << "\nlaplacian: " << check_laplacian(b).pass
            << "\nschur: " << check_schur_psd(b).pass << '\n';
  const auto id = verify_descent_identity(b, 10, 3, 1);
  std::cout << "identity: " << id.failures.size() << " failures in " << id.trials << " trials\n";
}
