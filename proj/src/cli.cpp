// submig: command-line driver for synthesizing MSR data, imaging it with
// subspace migration, evaluating the Bessel closed form and comparing maps.
//
// Exit status: 0 success, 1 computation error, 2 usage/config error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "submig/cli.hpp"
#include "submig/submig.hpp"

namespace {

using namespace submig;

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SceneOptions {
  std::string scene_path;
  std::string preset;
  std::optional<double> wavelength;
  std::optional<double> omega;
  std::optional<int> n_directions;
};

struct GridOptions {
  std::vector<double> bounds;
  std::vector<std::size_t> res;

  ImagingGridSpec spec() const {
    ImagingGridSpec g;
    if (!bounds.empty()) {
      g.x_min = bounds[0];
      g.x_max = bounds[1];
      g.y_min = bounds[2];
      g.y_max = bounds[3];
    }
    if (!res.empty()) {
      g.nx = res[0];
      g.ny = res.size() > 1 ? res[1] : res[0];
    }
    try {
      g.validate();
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    return g;
  }
};

void add_scene_options(CLI::App* cmd, SceneOptions& o, bool with_directions) {
  auto* scene = cmd->add_option("--scene", o.scene_path, "Scene file")->check(CLI::ExistingFile);
  auto* preset = cmd->add_option("--preset", o.preset, "Built-in scene")
                     ->check(CLI::IsMember({"fig2", "fig3"}));
  scene->excludes(preset);
  preset->excludes(scene);
  auto* wl = cmd->add_option("--wavelength", o.wavelength, "Wavelength of the probing wave");
  auto* om = cmd->add_option("--omega", o.omega, "Angular frequency of the probing wave");
  wl->excludes(om);
  om->excludes(wl);
  if (with_directions)
    cmd->add_option("--n-directions", o.n_directions, "Number of incident/observation directions");
}

struct ResolvedScene {
  SceneConfig scene;
  FrequencySpec freq;
  int n_directions;
};

ResolvedScene resolve_scene(const SceneOptions& o) {
  std::optional<SceneConfig> scene;
  std::optional<double> default_wavelength;
  int n = 16;
  if (!o.preset.empty()) {
    auto p = find_preset(o.preset);
    scene = p->scene;
    default_wavelength = p->wavelength;
    n = p->n_directions;
  } else if (!o.scene_path.empty()) {
    scene = io::read_file(o.scene_path, [](std::istream& is) { return io::read_scene(is); });
  } else {
    throw UsageError("one of --scene or --preset is required");
  }
  if (o.n_directions) n = *o.n_directions;

  std::optional<FrequencySpec> freq;
  if (o.omega)
    freq = FrequencySpec::from_omega(*o.omega);
  else if (o.wavelength)
    freq = FrequencySpec::from_wavelength(*o.wavelength);
  else if (default_wavelength)
    freq = FrequencySpec::from_wavelength(*default_wavelength);
  else
    throw UsageError("one of --wavelength or --omega is required with --scene");
  return {std::move(*scene), *freq, n};
}

std::string path_for_eta(const std::string& out, double eta, std::size_t count) {
  if (count == 1) return out;
  const std::filesystem::path p(out);
  std::ostringstream name;
  name << p.stem().string() << "_eta" << eta << p.extension().string();
  return (p.parent_path() / name.str()).string();
}

void write_image_outputs(const ImageMap& map, const std::string& out, const std::string& pgm,
                         std::size_t count) {
  const std::string path = path_for_eta(out, map.eta, count);
  io::write_file(path, [&](std::ostream& os) { io::write_image(os, map); });
  std::cout << "wrote " << path << '\n';
  if (!pgm.empty()) {
    const std::string pgm_path = path_for_eta(pgm, map.eta, count);
    io::write_file(pgm_path, [&](std::ostream& os) { io::write_pgm(os, map); });
    std::cout << "wrote " << pgm_path << '\n';
  }
}

void emit_text(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    io::write_file(out, [&](std::ostream& os) { os << text; });
    std::cout << "wrote " << out << '\n';
  }
}

}  // namespace

namespace submig::cli {

int run(int argc, char** argv) {
  CLI::App app{"Subspace migration imaging of small inclusions"};
  app.require_subcommand(1);

  // synthesize
  SceneOptions syn_scene;
  std::optional<double> snr_db;
  std::uint64_t seed = 0;
  std::string syn_out;
  auto* syn = app.add_subcommand("synthesize", "Write the MSR matrix of a scene");
  add_scene_options(syn, syn_scene, true);
  syn->add_option("--snr-db", snr_db, "Add complex Gaussian noise at this SNR (dB)");
  syn->add_option("--seed", seed, "Noise seed");
  syn->add_option("--out", syn_out, "Output MSR file")->required();

  // image
  std::string msr_path;
  std::vector<double> img_eta;
  GridOptions img_grid;
  std::optional<std::size_t> fixed_rank;
  std::optional<double> rank_tau;
  std::string img_out, img_pgm;
  auto* img = app.add_subcommand("image", "Evaluate the imaging functional from an MSR file");
  img->add_option("--msr", msr_path, "Input MSR file")->required()->check(CLI::ExistingFile);
  img->add_option("--eta", img_eta, "Test frequency (repeatable)")->required();
  img->add_option("--grid", img_grid.bounds, "xmin xmax ymin ymax")->expected(4);
  img->add_option("--res", img_grid.res, "nx [ny]")->expected(1, 2);
  auto* rk = img->add_option("--rank", fixed_rank, "Fixed signal-space rank");
  auto* ra = img->add_option("--rank-auto", rank_tau, "Relative singular value threshold");
  rk->excludes(ra);
  ra->excludes(rk);
  img->add_option("--out", img_out, "Output image file")->required();
  img->add_option("--pgm", img_pgm, "Optional PGM preview");

  // analytic
  SceneOptions ana_scene;
  std::vector<double> ana_eta;
  GridOptions ana_grid;
  std::string ana_out, ana_pgm;
  auto* ana = app.add_subcommand("analytic", "Evaluate the Bessel closed form on a grid");
  add_scene_options(ana, ana_scene, false);
  ana->add_option("--eta", ana_eta, "Test frequency (repeatable)")->required();
  ana->add_option("--grid", ana_grid.bounds, "xmin xmax ymin ymax")->expected(4);
  ana->add_option("--res", ana_grid.res, "nx [ny]")->expected(1, 2);
  ana->add_option("--out", ana_out, "Output image file")->required();
  ana->add_option("--pgm", ana_pgm, "Optional PGM preview");

  // compare
  std::string cmp_a, cmp_b, cmp_out;
  auto* cmp = app.add_subcommand("compare", "Compare two image files on the same grid");
  cmp->add_option("image_a", cmp_a, "First image")->required()->check(CLI::ExistingFile);
  cmp->add_option("image_b", cmp_b, "Second image")->required()->check(CLI::ExistingFile);
  cmp->add_option("--out", cmp_out, "Report file (default stdout)");

  // peaks
  std::string pk_image, pk_out;
  double pk_threshold = 0.5;
  double pk_sep = 0.1;
  auto* pk = app.add_subcommand("peaks", "Extract local maxima from an image file");
  pk->add_option("--image", pk_image, "Input image")->required()->check(CLI::ExistingFile);
  pk->add_option("--threshold", pk_threshold, "Fraction of the global maximum")->capture_default_str();
  pk->add_option("--min-separation", pk_sep, "Minimum distance between peaks")->capture_default_str();
  pk->add_option("--out", pk_out, "Peaks file (default stdout)");

  // predict
  SceneOptions pr_scene;
  double pr_eta = 0.0;
  std::string pr_out;
  auto* pr = app.add_subcommand("predict", "Predicted peak locations (omega/eta) z_m");
  add_scene_options(pr, pr_scene, false);
  pr->add_option("--eta", pr_eta, "Test frequency")->required();
  pr->add_option("--out", pr_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*syn) {
      const auto rs = resolve_scene(syn_scene);
      for (const auto& w : validate_scene(rs.scene, rs.freq)) std::cerr << "warning: " << w.message << '\n';
      const auto dirs = make_directions(rs.n_directions);
      auto msr = assemble_msr(rs.scene, rs.freq, dirs);
      if (snr_db) msr = add_noise(msr, *snr_db, seed);
      io::write_file(syn_out, [&](std::ostream& os) { io::write_msr(os, msr); });
      std::cout << "wrote " << syn_out << '\n';
    } else if (*img) {
      const auto msr = io::read_file(msr_path, [](std::istream& is) { return io::read_msr(is); });
      const auto dirs = make_directions(static_cast<int>(msr.size()));
      const RankMode mode = fixed_rank ? RankMode{FixedRank{*fixed_rank}}
                                       : RankMode{AutoRank{rank_tau.value_or(0.01)}};
      const auto factors = select_rank(decompose(msr), mode);
      std::cerr << "rank: " << *factors.rank
                << (fixed_rank ? " (fixed)" : " (auto, tau=" + std::to_string(rank_tau.value_or(0.01)) + ")")
                << '\n';
      const auto grid = img_grid.spec();
      for (double eta : img_eta)
        write_image_outputs(image_grid(grid, eta, factors, dirs), img_out, img_pgm, img_eta.size());
    } else if (*ana) {
      const auto rs = resolve_scene(ana_scene);
      const auto grid = ana_grid.spec();
      for (double eta : ana_eta)
        write_image_outputs(analytic_image_grid(grid, eta, rs.scene, rs.freq.omega()), ana_out,
                            ana_pgm, ana_eta.size());
    } else if (*cmp) {
      const auto read = [](std::istream& is) { return io::read_image(is); };
      const auto a = io::read_file(cmp_a, read);
      const auto b = io::read_file(cmp_b, read);
      if (!(a.grid == b.grid)) throw UsageError("compare: image grids differ");
      const auto c = io::compare_images(a, b);
      std::ostringstream os;
      os << std::setprecision(17);
      os << "max_abs_diff " << c.max_abs_diff << '\n'
         << "rmse " << c.rmse << '\n'
         << "argmax_a " << c.argmax_a.x << ' ' << c.argmax_a.y << '\n'
         << "argmax_b " << c.argmax_b.x << ' ' << c.argmax_b.y << '\n';
      emit_text(cmp_out, os.str());
    } else if (*pk) {
      const auto image = io::read_file(pk_image, [](std::istream& is) { return io::read_image(is); });
      std::ostringstream os;
      io::write_peaks(os, extract_peaks(image, pk_threshold, pk_sep));
      emit_text(pk_out, os.str());
    } else if (*pr) {
      const auto rs = resolve_scene(pr_scene);
      std::ostringstream os;
      io::write_points(os, predict_peaks(rs.scene, rs.freq.omega(), pr_eta));
      emit_text(pr_out, os.str());
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace submig::cli
