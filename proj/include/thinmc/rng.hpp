// Seedable random streams with portable normal and gamma draws.
//
// The generator is mt19937_64, but the normal and gamma transformations are
// implemented here (Box-Muller, Marsaglia-Tsang) instead of using
// std::normal_distribution, whose output differs between standard libraries.
// A (seed, stream) pair fully determines the draw sequence.

#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace thinmc {

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  // Uniform on [0, 1).
  double uniform();

  // Standard normal via Box-Muller; one spare is cached between calls.
  double normal();

  // Vector of iid standard normals.
  Eigen::VectorXd normal_vector(int dim);

  // Gamma(shape, 1), shape > 0.
  double gamma(double shape);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace thinmc
