#include "ssprobe/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "fileio.hpp"
#include "ssprobe/embedstore.hpp"
#include "ssprobe/error.hpp"
#include "ssprobe/fixture.hpp"
#include "ssprobe/metrics.hpp"
#include "ssprobe/probe.hpp"
#include "ssprobe/report.hpp"
#include "ssprobe/stimuli.hpp"

namespace ssprobe::cli {
namespace {

namespace fs = std::filesystem;

// Thrown for flag combinations CLI11 cannot express; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& outPath, std::ostream& out) {
  if (outPath.empty()) {
    out << text;
  } else {
    detail::writeFile(outPath, text);
  }
}

void ensureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create directory " + dir.string());
}

struct Options {
  std::string out;
  int speakers = 4;
  int seeds = 25;
  std::string images;
  std::string audio;
  std::string text;
  std::string score = "geometric";
  bool normalizeRows = false;
  int permRounds = 0;
  std::uint64_t seed = 0;
  std::string format;
  std::string manifest;
  std::vector<std::string> inputs;
  FixtureSpec fixture;
};

int genStimuli(const Options& o, std::ostream& out) {
  const fs::path dir(o.out);
  ensureDir(dir);
  const auto speakers = stimuli::defaultSpeakers(o.speakers);
  const auto manifest = stimuli::buildManifest(o.seeds, speakers);
  const auto path = dir / "manifest.json";
  stimuli::writeManifest(manifest, path);
  out << "wrote " << path.string() << ": " << manifest.images.size() << " image prompts, "
      << manifest.audio.size() << " audio requests\n";
  return kExitOk;
}

int synthFixtureCmd(const Options& o, std::ostream& out) {
  const fs::path dir(o.out);
  ensureDir(dir);
  FixtureSpec spec = o.fixture;
  spec.seed = o.seed;
  const auto pair = o.manifest.empty()
                        ? fixture::synthFixture(spec)
                        : fixture::synthFromManifest(spec, stimuli::readManifest(o.manifest));
  embedstore::writeSet(pair.images, dir / "images.embs");
  embedstore::writeSet(pair.audio, dir / "audio.embs");
  out << "wrote " << (dir / "images.embs").string() << " (" << pair.images.size() << " x "
      << pair.images.dim << ") and " << (dir / "audio.embs").string() << " ("
      << pair.audio.size() << " x " << pair.audio.dim << ")\n";
  return kExitOk;
}

int validateStore(const Options& o, std::ostream& out) {
  int status = kExitOk;
  for (const auto& path : o.inputs) {
    EmbeddingSet set;
    try {
      set = embedstore::readSet(path);
    } catch (const Error& e) {
      out << path << ": " << e.what() << "\n";
      status = kExitValidation;
      continue;
    }
    const auto findings = embedstore::validateSet(set);
    if (findings.empty()) {
      out << path << ": ok (" << set.size() << " x " << set.dim << ", " << to_string(set.modality)
          << ", model " << set.modelId << ")\n";
      continue;
    }
    status = kExitValidation;
    out << path << ": " << findings.size() << " finding(s)\n";
    for (const auto& f : findings) out << "  " << embedstore::describe(f) << "\n";
  }
  return status;
}

int probeCmd(const Options& o, std::ostream& out) {
  if (o.audio.empty() == o.text.empty()) {
    throw UsageError("probe needs exactly one of --audio or --text");
  }
  const auto type = parseScoreType(o.score);
  const auto images = embedstore::readSet(o.images, Modality::image);
  const auto sounds = o.audio.empty() ? embedstore::readSet(o.text, Modality::text)
                                      : embedstore::readSet(o.audio, Modality::audio);
  const ProbeOptions options{o.normalizeRows};
  const auto table = *type == ScoreType::geometric ? probe::geometricScores(images, sounds, options)
                                                   : probe::phoneticScores(sounds, images, options);
  emit(probe::scoreTableCsv(table), o.out, out);
  return kExitOk;
}

int evalCmd(const Options& o, std::ostream& out) {
  std::vector<EvalResult> results;
  metrics::EvalOptions options;
  if (o.permRounds > 0) options.permutationRounds = o.permRounds;
  options.seed = o.seed;
  for (const auto& path : o.inputs) {
    results.push_back(metrics::evaluate(probe::readScoreTable(path), options));
  }
  const auto text = o.format == "md" ? report::summaryMarkdown(results)
                                     : report::summaryCsv(results);
  emit(text, o.out, out);
  return kExitOk;
}

int reportCmd(const Options& o, std::ostream& out) {
  if (o.inputs.size() != 1) throw UsageError("report takes exactly one score file");
  const auto manifest = stimuli::readManifest(o.manifest);
  const auto table = probe::readScoreTable(o.inputs.front());
  const auto profiles = report::phoneGroupMeans(table, manifest);
  const auto text =
      o.format == "svg"
          ? report::plotSvg(report::plotData(profiles),
                            table.modelId + " " + std::string(to_string(table.scoreType)))
          : report::profilesCsv(profiles);
  emit(text, o.out, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sound-symbolism probing toolkit: stimuli, embedding stores, scores, metrics"};
  app.name("ssprobe");
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen-stimuli", "Write the image-prompt and audio request manifest");
  gen->add_option("--out", o.out, "Output directory")->required();
  gen->add_option("--speakers", o.speakers, "Number of speaker identities")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seeds", o.seeds, "Seeds per adjective")->check(CLI::PositiveNumber);

  auto* synth = app.add_subcommand("synth-fixture", "Write a planted-direction embedding fixture");
  synth->add_option("--out", o.out, "Output directory")->required();
  synth->add_option("--dim", o.fixture.dim, "Embedding dimension (>= 2)");
  synth->add_option("--per-class", o.fixture.itemsPerClassPerModality,
                    "Items per class per modality");
  synth->add_option("--delta", o.fixture.delta, "Planted class separation");
  synth->add_option("--sigma", o.fixture.sigma, "Isotropic noise scale");
  synth->add_option("--seed", o.seed, "Generator seed");
  synth->add_option("--manifest", o.manifest, "Name rows after this manifest's stimuli")
      ->check(CLI::ExistingFile);

  auto* validate = app.add_subcommand("validate-store", "Check embedding store files");
  validate->add_option("paths", o.inputs, "Sidecar (.embs) or fixture CSV paths")->required();

  auto* probeApp = app.add_subcommand("probe", "Project queries onto a class-mean direction");
  probeApp->add_option("--images", o.images, "Image embedding set")->required();
  probeApp->add_option("--audio", o.audio, "Audio embedding set");
  probeApp->add_option("--text", o.text, "Text (pseudoword) embedding set, replaces --audio");
  probeApp->add_option("--score", o.score, "Score type")
      ->check(CLI::IsMember({"geometric", "phonetic"}));
  probeApp->add_flag("--normalize-rows", o.normalizeRows, "L2-normalise source rows first");
  probeApp->add_option("--out", o.out, "Score CSV path (default stdout)");

  auto* evalApp = app.add_subcommand("eval", "AUC and Kendall tau-b per score file");
  evalApp->add_option("scores", o.inputs, "Score CSV files")->required();
  evalApp->add_option("--perm-rounds", o.permRounds, "Permutation test rounds (0 = off)")
      ->check(CLI::NonNegativeNumber);
  evalApp->add_option("--seed", o.seed, "Permutation seed");
  evalApp->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "md"}));
  evalApp->add_option("--out", o.out, "Output path (default stdout)");

  auto* reportApp = app.add_subcommand("report", "Per-phone score profiles for audio scores");
  reportApp->add_option("scores", o.inputs, "Score CSV with audio stimulus ids")->required();
  reportApp->add_option("--manifest", o.manifest, "Dataset manifest")->required();
  reportApp->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "svg"}));
  reportApp->add_option("--out", o.out, "Output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return genStimuli(o, out);
    if (synth->parsed()) return synthFixtureCmd(o, out);
    if (validate->parsed()) return validateStore(o, out);
    if (probeApp->parsed()) return probeCmd(o, out);
    if (evalApp->parsed()) return evalCmd(o, out);
    if (reportApp->parsed()) return reportCmd(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ssprobe::cli
