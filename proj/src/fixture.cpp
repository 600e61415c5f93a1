#include "ssprobe/fixture.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ssprobe/error.hpp"

namespace ssprobe::fixture {

double GaussianSource::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianSource::next() {
  if (hasSpare_) {
    hasSpare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(theta);
  hasSpare_ = true;
  return radius * std::cos(theta);
}

void checkSpec(const FixtureSpec& spec) {
  if (spec.dim < 2) throw Error(ErrorCode::InvalidArgument, "fixture dim must be >= 2");
  if (spec.itemsPerClassPerModality < 1) {
    throw Error(ErrorCode::InvalidArgument, "fixture needs at least one item per class");
  }
  if (!(spec.delta >= 0.0) || !std::isfinite(spec.delta)) {
    throw Error(ErrorCode::InvalidArgument, "fixture delta must be finite and >= 0");
  }
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) {
    throw Error(ErrorCode::InvalidArgument, "fixture sigma must be finite and >= 0");
  }
}

namespace {

struct Row {
  std::string id;
  Label label;
};

std::vector<double> unitVector(GaussianSource& gauss, std::size_t dim) {
  std::vector<double> u(dim);
  double sq = 0.0;
  do {
    sq = 0.0;
    for (auto& x : u) {
      x = gauss.next();
      sq += x * x;
    }
  } while (sq == 0.0);
  const double norm = std::sqrt(sq);
  for (auto& x : u) x /= norm;
  return u;
}

EmbeddingSet draw(GaussianSource& gauss, const FixtureSpec& spec, const std::vector<double>& u,
                  const std::vector<Row>& rows, Modality modality) {
  EmbeddingSet set;
  set.modelId = "fixture";
  set.modality = modality;
  set.dim = spec.dim;
  set.matrix.reserve(rows.size() * spec.dim);
  for (const auto& r : rows) {
    const double sign = r.label == Label::round ? 1.0 : -1.0;
    for (std::size_t k = 0; k < spec.dim; ++k) {
      const double noise = gauss.next();
      set.matrix.push_back(static_cast<float>(sign * spec.delta * u[k] + spec.sigma * noise));
    }
    set.items.push_back({r.id, r.label, {}});
  }
  return set;
}

FixturePair build(const FixtureSpec& spec, const std::vector<Row>& imageRows,
                  const std::vector<Row>& audioRows) {
  GaussianSource gauss(spec.seed);
  const auto u = unitVector(gauss, spec.dim);
  FixturePair pair;
  pair.images = draw(gauss, spec, u, imageRows, Modality::image);
  pair.audio = draw(gauss, spec, u, audioRows, Modality::audio);
  return pair;
}

std::vector<Row> syntheticRows(std::string_view prefix, std::size_t perClass) {
  std::vector<Row> rows;
  for (Label label : {Label::round, Label::sharp}) {
    for (std::size_t k = 0; k < perClass; ++k) {
      rows.push_back({std::string(prefix) + std::string(to_string(label)) + "-" + std::to_string(k),
                      label});
    }
  }
  return rows;
}

}  // namespace

FixturePair synthFixture(const FixtureSpec& spec) {
  checkSpec(spec);
  return build(spec, syntheticRows("fx-img-", spec.itemsPerClassPerModality),
               syntheticRows("fx-aud-", spec.itemsPerClassPerModality));
}

FixturePair synthFromManifest(const FixtureSpec& spec, const DatasetManifest& manifest) {
  FixtureSpec checked = spec;
  checked.itemsPerClassPerModality = 1;
  checkSpec(checked);
  std::vector<Row> images;
  for (const auto& img : manifest.images) images.push_back({img.id, img.label});
  std::vector<Row> audio;
  for (const auto& a : manifest.audio) audio.push_back({a.id, a.label()});
  return build(spec, images, audio);
}

}  // namespace ssprobe::fixture
