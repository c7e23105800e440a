#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "trilink/dump.hpp"
#include "trilink/gauss.hpp"
#include "trilink/geometry.hpp"
#include "trilink/link_io.hpp"
#include "trilink/spectral.hpp"

namespace trilink::cli {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Options {
  std::string preset;
  std::string link_file;
  int grid = 128;
  int samples = 512;
  std::string method = "fourier";
  int cutoff = -1;
  std::string what = "form";
  std::string out_file;
  std::uint64_t seed = 0;
  long trials = 1000000;
  bool human = false;
  bool grid_given = false;
};

class IoError : public Error {
 public:
  using Error::Error;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

struct LoadedLink {
  Link3<double> link;
  json identity;
};

LoadedLink load(const Options& o) {
  if (!o.preset.empty() && !o.link_file.empty()) {
    throw InvalidArgument("--preset and --link are mutually exclusive");
  }
  if (!o.link_file.empty()) {
    std::ifstream in(o.link_file, std::ios::binary);
    if (!in) throw ParseError(o.link_file, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return {load_link(text), json{{"source", "file"}, {"path", o.link_file},
                                  {"fnv1a64", fnv1a_hex(text)}}};
  }
  const std::string name = o.preset.empty() ? "borromean" : o.preset;
  return {preset(name), json{{"source", "preset"}, {"name", name}}};
}

json flags_json(const Options& o, const std::string& command) {
  json f{{"command", command}, {"grid", o.grid}, {"samples", o.samples}};
  if (!o.preset.empty()) f["preset"] = o.preset;
  if (!o.link_file.empty()) f["link"] = o.link_file;
  if (command == "mu") f["method"] = o.method;
  if (o.cutoff >= 0) f["cutoff"] = o.cutoff;
  if (command == "dump") f["what"] = o.what;
  if (!o.out_file.empty()) f["out"] = o.out_file;
  if (command == "bridge-check") {
    f["seed"] = o.seed;
    f["trials"] = o.trials;
  }
  return f;
}

json triple_json(const Vec3<double>& raw, const Rounded<double>& r) {
  return json{{"raw", {raw(0), raw(1), raw(2)}},
              {"rounded", {r.values[0], r.values[1], r.values[2]}},
              {"residual", r.residual},
              {"converged", r.converged()}};
}

json mu_json(double raw, const std::string& method, int grid, int cutoff) {
  const long rounded = std::lround(raw);
  const double residual = std::abs(raw - double(rounded));
  return json{{"raw", raw},          {"rounded", rounded}, {"residual", residual},
              {"converged", residual < kRoundingAcceptance},
              {"method", method},    {"grid", grid},       {"cutoff", cutoff}};
}

json cmd_invariants(const Options& o) {
  const auto loaded = load(o);
  json report{{"link", loaded.identity}};
  json timings;

  auto start = Clock::now();
  const InvariantReport<double> inv = invariant_report(loaded.link, o.samples, o.grid);
  timings["pairwise_and_degrees"] = seconds_since(start);
  report["pairwise"] = triple_json(inv.gauss.raw(), inv.gauss.rounded);
  report["degrees"] = triple_json(inv.degrees, inv.degrees_rounded);

  const auto& v = inv.gauss.rounded.values;
  if (inv.gauss.rounded.converged() && v[0] == 0 && v[1] == 0 && v[2] == 0) {
    start = Clock::now();
    const Grid3Field<double> form = characteristic_form(loaded.link, o.grid);
    const FourierField<double> coeffs = dft3(form);
    timings["form"] = seconds_since(start);
    start = Clock::now();
    const int cutoff = o.cutoff >= 0 ? o.cutoff : full_mode_cutoff(o.grid);
    json mu = mu_json(mu_fourier(coeffs, cutoff), "fourier", o.grid, cutoff);
    timings["mu_fourier"] = seconds_since(start);
    start = Clock::now();
    const double wh = whitehead_integral(idft3(least_norm_primitive(coeffs)), form);
    timings["mu_whitehead"] = seconds_since(start);
    mu["whitehead_raw"] = wh;
    report["mu"] = mu;
  } else {
    report["mu"] = nullptr;
    report["mu_skipped"] = "pairwise linking numbers are not all zero";
  }
  report["timings_s"] = timings;
  return report;
}

json cmd_mu(const Options& o) {
  const auto loaded = load(o);
  json report{{"link", loaded.identity}};
  json timings;
  const auto start = Clock::now();
  if (o.method == "fourier") {
    const FourierField<double> coeffs = dft3(characteristic_form(loaded.link, o.grid));
    timings["form"] = seconds_since(start);
    const int cutoff = o.cutoff >= 0 ? o.cutoff : full_mode_cutoff(o.grid);
    json mu = mu_json(mu_fourier(coeffs, cutoff), o.method, o.grid, cutoff);
    if (cutoff != full_mode_cutoff(o.grid)) mu["raw_full_range"] = mu_fourier(coeffs);
    report["mu"] = mu;
  } else if (o.method == "whitehead") {
    report["mu"] = mu_json(mu_whitehead(loaded.link, o.grid), o.method, o.grid,
                           full_mode_cutoff(o.grid));
  } else if (o.method == "helicity") {
    const int cutoff = o.cutoff >= 0 ? o.cutoff : o.grid / 2;
    report["mu"] = mu_json(mu_helicity(loaded.link, o.grid, cutoff), o.method, o.grid, cutoff);
  } else if (o.method == "spherical") {
    report["mu"] = mu_json(mu_spherical(loaded.link, o.grid), o.method, o.grid,
                           full_mode_cutoff(o.grid));
  } else {
    throw InvalidArgument("unknown method '" + o.method + "'");
  }
  timings["total"] = seconds_since(start);
  report["timings_s"] = timings;
  return report;
}

void write_dump(const Options& o, std::ostream& stdout_stream) {
  std::ofstream file;
  std::ostream* out = &stdout_stream;
  if (!o.out_file.empty()) {
    file.open(o.out_file, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + o.out_file + "' for writing");
    out = &file;
  }
  if (o.what == "phi2d") {
    write_phi2d_csv(*out, o.cutoff >= 0 ? o.cutoff : 15, o.grid_given ? o.grid : 240);
  } else if (o.what == "field" || o.what == "form") {
    const auto loaded = load(o);
    const Grid3Field<double> field = sample_gauss_field(loaded.link, o.grid);
    if (o.what == "field") {
      write_field_csv(*out, field);
    } else {
      write_form_csv(*out, pullback_area_form(field));
    }
  } else {
    throw InvalidArgument("unknown dump kind '" + o.what + "'");
  }
  out->flush();
  if (!*out) throw IoError("write failed");
}

json cmd_bridge_check(const Options& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  auto point = [&] { return Vec3<double>(coord(rng), coord(rng), coord(rng)); };
  double min_gap = 1.0;
  double sum_gap = 0.0;
  double max_rel = 0.0;
  long count = 0;
  while (count < o.trials) {
    const Vec3<double> x = point(), y = point(), z = point();
    try {
      const double gap = bridge_gap(x, y, z);
      const auto lift = based_lift(x, y, z);
      const Vec3<double> spherical = key_map_spherical(lift[0], lift[1], lift[2]);
      const Vec3<double> scaled = bridge_scale(x, y, z) * reduced_bridge_map(x, y, z);
      max_rel = std::max(max_rel, (spherical - scaled).norm() / scaled.norm());
      min_gap = std::min(min_gap, gap);
      sum_gap += gap;
      ++count;
    } catch (const DegenerateInput&) {
      // redraw
    }
  }
  return json{{"trials", count},
              {"seed", o.seed},
              {"min_gap", min_gap},
              {"mean_gap", count ? sum_gap / double(count) : 0.0},
              {"max_scaling_relative_error", max_rel},
              {"non_antipodal", min_gap > -1.0}};
}

void print_human(const json& report, std::ostream& out) {
  auto triple = [&](const char* label, const json& t) {
    out << std::left << std::setw(12) << label;
    for (int i = 0; i < 3; ++i) {
      out << std::setw(6) << t["rounded"][i].get<long>() << "(" << std::setprecision(10)
          << t["raw"][i].get<double>() << ")  ";
    }
    out << "residual " << t["residual"].get<double>() << '\n';
  };
  if (report.contains("link")) out << "link        " << report["link"].dump() << '\n';
  if (report.contains("pairwise")) triple("lk (p,q,r)", report["pairwise"]);
  if (report.contains("degrees")) triple("degrees", report["degrees"]);
  if (report.contains("mu") && !report["mu"].is_null()) {
    const json& mu = report["mu"];
    out << "mu          " << mu["rounded"].get<long>() << "  raw " << std::setprecision(12)
        << mu["raw"].get<double>() << "  method " << mu["method"].get<std::string>() << "  N "
        << mu["grid"].get<int>() << "  cutoff " << mu["cutoff"].get<int>() << '\n';
    if (mu.contains("whitehead_raw")) {
      out << "            whitehead raw " << mu["whitehead_raw"].get<double>() << '\n';
    }
  } else if (report.contains("mu_skipped")) {
    out << "mu          skipped: " << report["mu_skipped"].get<std::string>() << '\n';
  }
  if (report.contains("min_gap")) {
    out << "trials      " << report["trials"].get<long>() << '\n'
        << "min gap     " << std::setprecision(17) << report["min_gap"].get<double>() << '\n'
        << "mean gap    " << report["mean_gap"].get<double>() << '\n'
        << "max rel err " << report["max_scaling_relative_error"].get<double>() << '\n';
  }
  if (report.contains("timings_s")) {
    for (const auto& [stage, t] : report["timings_s"].items()) {
      out << "time        " << stage << " " << std::setprecision(4) << t.get<double>() << " s\n";
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Pairwise and triple linking invariants of three-component links"};
  app.require_subcommand(1);

  auto add_link = [&](CLI::App* c) {
    c->add_option("--preset", o.preset, "built-in link: borromean, split-unlink, borromean-reversed");
    c->add_option("--link", o.link_file, "link document (JSON)");
  };
  auto add_grid = [&](CLI::App* c, int def) {
    o.grid = def;
    c->add_option("--grid", o.grid, "grid points per torus axis")->check(CLI::PositiveNumber);
  };

  auto* inv = app.add_subcommand("invariants", "pairwise linking numbers, degrees and mu");
  add_link(inv);
  add_grid(inv, 128);
  inv->add_option("--samples", o.samples, "Gauss integral samples per curve")
      ->check(CLI::PositiveNumber);
  inv->add_option("--cutoff", o.cutoff, "mode cutoff |n_i| <= K for mu");
  inv->add_flag("--human", o.human, "tabular output");

  auto* mu = app.add_subcommand("mu", "triple linking number by one formula");
  add_link(mu);
  add_grid(mu, 128);
  mu->add_option("--method", o.method, "fourier | whitehead | helicity | spherical")
      ->check(CLI::IsMember({"fourier", "whitehead", "helicity", "spherical"}));
  mu->add_option("--cutoff", o.cutoff, "mode cutoff (fourier, helicity)");
  mu->add_flag("--human", o.human, "tabular output");

  auto* dump = app.add_subcommand("dump", "write grid data as CSV");
  add_link(dump);
  dump->add_option("--grid", o.grid, "grid points per axis (phi2d: intervals per axis)")
      ->check(CLI::PositiveNumber);
  dump->add_option("--what", o.what, "field | form | phi2d")
      ->check(CLI::IsMember({"field", "form", "phi2d"}));
  dump->add_option("--cutoff", o.cutoff, "phi2d mode cutoff (default 15)");
  dump->add_option("--out", o.out_file, "output file (default stdout)");

  auto* bridge = app.add_subcommand("bridge-check", "sample the Euclidean/spherical key map bridge");
  bridge->add_option("--trials", o.trials, "random triples")->check(CLI::PositiveNumber);
  bridge->add_option("--seed", o.seed, "generator seed");
  bridge->add_flag("--human", o.human, "tabular output");

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  o.grid_given = dump->count("--grid") > 0;

  try {
    json report;
    std::string command;
    if (*inv) {
      command = "invariants";
      report = cmd_invariants(o);
    } else if (*mu) {
      command = "mu";
      report = cmd_mu(o);
    } else if (*dump) {
      write_dump(o, out);
      return kOk;
    } else {
      command = "bridge-check";
      report = cmd_bridge_check(o);
    }
    report["flags"] = flags_json(o, command);
    if (o.human) {
      print_human(report, out);
    } else {
      out << report.dump(2) << '\n';
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const DisjointnessViolation& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const UnknownPreset& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const NotNullHomologous& e) {
    err << "error: " << e.what() << '\n';
    return kNotNullHomologous;
  } catch (const CorrespondenceMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kCorrespondenceMismatch;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace trilink::cli
