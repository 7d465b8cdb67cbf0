#include "zonoshape/polytope.hpp"

namespace zonoshape {

PolytopeSampler::PolytopeSampler(Polytope<double> p) : polytope_(std::move(p)) {
  require(!polytope_.empty(), ErrorKind::Degenerate, "cannot sample from an empty polytope");
  double total = 0.0;
  for (const auto& s : polytope_.simplices) {
    total += simplex_volume<double>(s);
    cumulative_.push_back(total);
  }
}

}  // namespace zonoshape
