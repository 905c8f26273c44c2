// Cost model at the optimal radius, then one simulated hybrid run.
#include <cstdio>

#include "hybrid_search/hybrid.hpp"
#include "hybrid_search/query_model.hpp"

int main() {
  namespace hs = hybrid_search;

  for (long long n : {12, 100, 1000}) {
    const auto best = hs::k_opt(n);
    std::printf("n=%-5lld k*=%-3lld log10 G=%.6f  (closed form %.6f)\n", n, best.k_star,
                best.model.gain.log10(), hs::g_min_closed_form(n).log10());
  }

  hs::Rng rng(42);
  const hs::SolutionInstance inst(hs::random_bitstring(12, rng));
  const auto rec = hs::hybrid_search(inst, 2, hs::Engine::statevector, rng);
  std::printf("hybrid n=12 k=2: %llu oracle calls, %llu threshold, %llu equality, %llu restarts\n",
              static_cast<unsigned long long>(rec.ledger.quantum_oracle_calls),
              static_cast<unsigned long long>(rec.ledger.threshold_queries),
              static_cast<unsigned long long>(rec.ledger.equality_queries),
              static_cast<unsigned long long>(rec.restarts));
}
