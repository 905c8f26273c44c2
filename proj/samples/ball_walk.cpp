// Lists a small Hamming ball shell by shell, with each member's rank.
#include <cstdio>

#include "hybrid_search/ball_index.hpp"

int main() {
  namespace hs = hybrid_search;
  const hs::BallSpec ball(hs::BitString::from_uint(6, 0b101100), 2);
  for (const auto& x : hs::ball_iter(ball)) {
    std::printf("%s  d=%zu  rank=%s\n", x.to_string().c_str(),
                hs::hamming_distance(x, ball.center), hs::ball_rank(ball, x).str().c_str());
  }
  std::printf("volume %s\n", hs::ball_count(6, 2).str().c_str());
}
