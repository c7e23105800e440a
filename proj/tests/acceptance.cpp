// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "trilink/dump.hpp"
#include "trilink/gauss.hpp"
#include "trilink/geometry.hpp"
#include "trilink/link_io.hpp"
#include "trilink/spectral.hpp"

namespace {

using namespace trilink;
using trilink::testing::hopf_a;
using trilink::testing::hopf_b;
using trilink::testing::hopf_plus_split;
using trilink::testing::random_point;
using trilink::testing::random_rotation;
using Clock = std::chrono::steady_clock;

const double kPi = std::numbers::pi;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

/// Collects checks for one criterion; the detail line lists every measured value.
struct Criterion {
  std::ostringstream detail;
  bool ok = true;

  void check(bool pass, const std::string& what) {
    if (!pass) ok = false;
    detail << (pass ? "" : "[failed] ") << what << "; ";
  }
};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double mu_at(const Link3<double>& link, int n) { return mu_fourier(dft3(characteristic_form(link, n))); }

void ac1(Criterion& c) {
  const auto link = preset("borromean");
  auto start = Clock::now();
  const auto coeffs = dft3(characteristic_form(link, 256));
  const double restricted = mu_fourier(coeffs, 64);
  const double full = mu_fourier(coeffs);
  const double t256 = seconds_since(start);
  c.check(std::abs(restricted + 1) <= 1e-5, "N=256 |n|<=64: " + fmt(restricted));
  c.check(std::abs(full + 1) <= 1e-5, "N=256 full range: " + fmt(full));
  c.check(t256 < 300, "N=256 time " + fmt(t256) + " s");
  start = Clock::now();
  const double mu64 = mu_at(link, 64);
  const double t64 = seconds_since(start);
  c.check(std::abs(mu64 + 1) < 1e-2, "N=64: " + fmt(mu64));
  c.check(t64 < 5, "N=64 time " + fmt(t64) + " s");
}

void ac2(Criterion& c) {
  const double hopf = pairwise_linking(hopf_a(), hopf_b(), 512);
  c.check(std::abs(std::abs(hopf) - 1) < 1e-6, "Hopf pair " + fmt(hopf));
  const double split = pairwise_linking(hopf_a(), trilink::testing::far_circle(), 512);
  c.check(std::abs(split) < 1e-9, "split pair " + fmt(split));
  const auto b = pairwise_report(preset("borromean"), 512);
  for (double v : {b.lk_yz, b.lk_zx, b.lk_xy}) c.check(std::abs(v) < 1e-6, "borromean pair " + fmt(v));
}

void ac3(Criterion& c) {
  static const char* slots[] = {"s/(Y,Z)", "t/(Z,X)", "u/(X,Y)"};
  for (int slot = 0; slot < 3; ++slot) {
    const auto link = hopf_plus_split(slot);
    const Vec3<double> gauss = pairwise_report(link, 512).raw();
    for (int axis = 0; axis < 3; ++axis) {
      const double deg = subtorus_degree(link, static_cast<Axis>(axis), 0.0, 128);
      const bool pass = std::lround(deg) == std::lround(gauss(axis)) &&
                        std::abs(deg - gauss(axis)) < 1e-2;
      if (!pass || axis == slot) {
        c.check(pass, std::string("Hopf in ") + slots[slot] + " axis " +
                          axis_name(static_cast<Axis>(axis)) + ": degree " + fmt(deg) +
                          " vs Lk " + fmt(gauss(axis)));
      }
    }
  }
  const auto link = preset("borromean");
  const Vec3<double> gauss = pairwise_report(link, 512).raw();
  for (int axis = 0; axis < 3; ++axis) {
    const double deg = subtorus_degree(link, static_cast<Axis>(axis), 0.0, 128);
    c.check(std::lround(deg) == 0 && std::lround(gauss(axis)) == 0,
            std::string("borromean ") + axis_name(static_cast<Axis>(axis)) + ": degree " +
                fmt(deg) + ", Lk " + fmt(gauss(axis)));
  }
}

void ac4(Criterion& c) {
  for (const char* name : {"borromean", "split-unlink"}) {
    const auto link = preset(name);
    const double four = mu_at(link, 64);
    const double wh = mu_whitehead(link, 64);
    c.check(std::abs(four - wh) < 1e-9,
            std::string(name) + " whitehead-fourier " + fmt(wh - four));
  }
  const auto link = preset("borromean");
  const double hel = mu_helicity(link, 16, 8);
  const double four = mu_fourier(dft3(characteristic_form(link, 16)), 8);
  c.check(std::abs(hel - four) < 1e-6,
          "helicity N=16/8 " + fmt(hel) + " vs fourier " + fmt(four));
}

void ac5(Criterion& c) {
  // N = 256: below that the sampled form is not closed to 1e-8 (its low-mode
  // divergence is ~1e-4 at N = 64), and an exact perturbation pairs with it.
  const int n = 256;
  const auto form = characteristic_form(preset("borromean"), n);
  const auto alpha = idft3(least_norm_primitive(dft3(form)));
  const double base = whitehead_integral(alpha, form);
  std::mt19937_64 rng(2024);
  double worst = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto perturbed = alpha;
    trilink::testing::add_random_exact_form(perturbed, rng, 6, 4);
    worst = std::max(worst, std::abs(whitehead_integral(perturbed, form) - base));
  }
  c.check(worst < 1e-8, "N=256 max change over 10 exact perturbations " + fmt(worst));
}

void ac6(Criterion& c) {
  constexpr int kTrials = 100000;
  constexpr double kTol = 1e-12;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> t(-2.0, 3.0);
  double equi = 0, scale = 0, sign = 0, ortho = 0, min_norm = 1e300;
  for (int i = 0; i < kTrials; ++i) {
    const auto x = random_point(rng), y = random_point(rng), z = random_point(rng);
    const Vec3<double> f = normalized_key_map(x, y, z);

    const Mat3<double> R = random_rotation(rng);
    const Vec3<double> v = random_point(rng, 5.0);
    equi = std::max(equi, (normalized_key_map<double>(R * x + v, R * y + v, R * z + v) - R * f).norm());

    for (double s : {0.1, 1.0, 10.0}) {
      scale = std::max(scale, (normalized_key_map<double>(s * x, s * y, s * z) - f).norm());
    }

    sign = std::max({sign, (normalized_key_map(y, z, x) - f).norm(),
                     (normalized_key_map(z, x, y) - f).norm(),
                     (normalized_key_map(y, x, z) + f).norm(),
                     (normalized_key_map(x, z, y) + f).norm(),
                     (normalized_key_map(z, y, x) + f).norm()});

    const auto parts = key_map_parts(x, y, z);
    ortho = std::max(ortho, std::abs(parts.tangential.dot(parts.normal)));

    // Half the draws are pushed to within 1e-9 of collinear.
    Vec3<double> w = z;
    if (i % 2) w = x + t(rng) * (y - x) + 1e-9 * random_point(rng);
    min_norm = std::min(min_norm, key_map(x, y, w).norm());
  }
  c.check(equi < kTol, "rotation/translation " + fmt(equi));
  c.check(scale < kTol, "scale " + fmt(scale));
  c.check(sign < kTol, "six permutations " + fmt(sign));
  c.check(min_norm > 0, "min |F| " + fmt(min_norm));
  c.check(ortho < kTol, "tangential.normal " + fmt(ortho));
}

void ac7(Criterion& c) {
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto x = random_point(rng), y = random_point(rng), z = random_point(rng);
    const auto lift = based_lift(x, y, z);
    const Vec3<double> lhs = key_map_spherical(lift[0], lift[1], lift[2]);
    const Vec3<double> rhs = bridge_scale(x, y, z) * reduced_bridge_map(x, y, z);
    worst = std::max(worst, (lhs - rhs).norm() / rhs.norm());
  }
  c.check(worst < 1e-10, "C-scaling relative error " + fmt(worst));

  std::mt19937_64 seeded(1234);
  double lowest = 1;
  for (int i = 0; i < 1000000; ++i) {
    lowest = std::min(lowest, bridge_gap(random_point(seeded), random_point(seeded), random_point(seeded)));
  }
  c.check(lowest > -1, "min bridge_gap over 1e6 " + fmt(lowest));

  for (const auto& name : preset_names()) {
    const auto link = preset(name);
    const double sph = mu_spherical(link, 128);
    const double four = mu_at(link, 128);
    c.check(std::lround(sph) == std::lround(four),
            name + " spherical " + fmt(sph) + " vs fourier " + fmt(four));
  }
}

void ac8(Criterion& c) {
  const double mu = mu_at(preset("borromean-reversed"), 128);
  c.check(std::lround(mu) == 1 && std::abs(mu - 1) < kRoundingAcceptance,
          "borromean-reversed " + fmt(mu));
}

void ac9(Criterion& c) {
  std::mt19937_64 rng(9);
  double even = 0, perm = 0;
  for (int i = 0; i < 50; ++i) {
    const Vec3<double> x = random_point(rng, 4.0);
    const double v = phi(x, 8);
    even = std::max(even, std::abs(phi(Vec3<double>(-x), 8) - v));
    perm = std::max({perm, std::abs(phi(Vec3<double>(x(1), x(0), x(2)), 8) - v),
                     std::abs(phi(Vec3<double>(x(1), x(2), x(0)), 8) - v)});
  }
  c.check(even < 1e-12, "evenness " + fmt(even));
  c.check(perm < 1e-12, "permutation " + fmt(perm));

  const Grid3Field<double> grid(16);
  double mean = 0;
  for (int j = 0; j < 16; ++j) {
    for (int k = 0; k < 16; ++k) {
      for (int l = 0; l < 16; ++l) mean += phi(grid.node(j, k, l), 6);
    }
  }
  mean /= 4096;
  c.check(std::abs(mean) < 1e-10, "grid mean " + fmt(mean));

  double naive = 0;
  for (int a = -15; a <= 15; ++a) {
    for (int b = -15; b <= 15; ++b) {
      for (int d = -15; d <= 15; ++d) {
        if (a || b || d) naive += ((a + b + d) % 2 ? -1.0 : 1.0) / double(a * a + b * b + d * d);
      }
    }
  }
  naive /= 8 * kPi * kPi * kPi;
  const double series = phi(Vec3<double>(kPi, kPi, kPi), 15);
  c.check(std::abs(series - naive) < 1e-12, "phi(pi,pi,pi) " + fmt(series) + " vs naive " + fmt(naive));

  const int intervals = 240;
  double best = -1e300, bx1 = 0, bx2 = 0;
  for (int i = 0; i <= intervals; ++i) {
    for (int j = 0; j <= intervals; ++j) {
      const double x1 = phi2d_coordinate(i, intervals);
      const double x2 = phi2d_coordinate(j, intervals);
      const double v = phi2d(x1, x2, 15);
      if (v > best) {
        best = v;
        bx1 = x1;
        bx2 = x2;
      }
    }
  }
  const double spacing = 6 * kPi / intervals;
  auto lattice_distance = [](double x) { return std::abs(x - 2 * kPi * std::round(x / (2 * kPi))); };
  c.check(lattice_distance(bx1) <= spacing / 2 && lattice_distance(bx2) <= spacing / 2,
          "phi2d max at (" + fmt(bx1) + ", " + fmt(bx2) + ")");
  const double saddle = phi2d(kPi, 0.0, 15);
  c.check(saddle < best, "edge midpoint " + fmt(saddle) + " < max " + fmt(best));
}

void ac10(Criterion& c) {
  const auto link = preset("borromean");
  const double base = mu_at(link, 64);
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> scale(0.2, 5.0);
  double worst = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto moved = transform_link(link, random_rotation(rng), random_point(rng, 10), scale(rng));
    worst = std::max(worst, std::abs(mu_at(moved, 64) - base));
  }
  c.check(worst < 1e-6, "max drift over 5 isometries " + fmt(worst));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Criterion&)>>> criteria{
      {"AC1 borromean mu reproduction", ac1},
      {"AC2 pairwise linking", ac2},
      {"AC3 degree correspondence", ac3},
      {"AC4 formula equivalence", ac4},
      {"AC5 gauge independence", ac5},
      {"AC6 key map symmetries", ac6},
      {"AC7 bridge suite", ac7},
      {"AC8 orientation sensitivity", ac8},
      {"AC9 phi properties", ac9},
      {"AC10 transform invariance", ac10},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Criterion c;
    const auto start = Clock::now();
    try {
      run(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %s (%.1f s): %s\n", c.ok ? "PASS" : "FAIL", name, seconds_since(start),
                c.detail.str().c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
