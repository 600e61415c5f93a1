#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ssprobe/embedstore.hpp"
#include "ssprobe/stimuli.hpp"

namespace ssprobe {

/// Planted-direction fixture: class means at +delta*u (round) and -delta*u
/// (sharp) for a random unit vector u, plus isotropic N(0, sigma^2) noise.
struct FixtureSpec {
  std::size_t dim = 16;
  std::size_t itemsPerClassPerModality = 100;
  double delta = 1.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

namespace fixture {

/// Standard normal draws by the Box-Muller transform over std::mt19937_64.
/// Uniforms take the top 53 bits of each output: u = (x >> 11) * 2^-53, and
/// the radius uses 1 - u so log() never sees zero. Each pair of uniforms
/// yields two normals (cos branch first).
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double next();

 private:
  double uniform();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool hasSpare_ = false;
};

struct FixturePair {
  EmbeddingSet images;
  EmbeddingSet audio;
};

void checkSpec(const FixtureSpec& spec);

/// Draw order: u, then every image row (round block, then sharp), then every
/// audio row. Ids: "fx-img-<class>-<k>" and "fx-aud-<class>-<k>".
FixturePair synthFixture(const FixtureSpec& spec);

/// Same construction with rows named and labelled after the manifest's
/// image and audio stimuli (itemsPerClassPerModality is ignored).
FixturePair synthFromManifest(const FixtureSpec& spec, const DatasetManifest& manifest);

}  // namespace fixture
}  // namespace ssprobe
