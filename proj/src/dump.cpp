#include "trilink/dump.hpp"

#include <charconv>
#include <numbers>
#include <system_error>

#include "trilink/spectral.hpp"

namespace trilink {
namespace {

// Shortest round-trip representation, independent of stream state.
void put(std::ostream& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

}  // namespace

void write_grid_csv(std::ostream& out, const Grid3Field<double>& field,
                    const std::array<std::string, 3>& value_columns) {
  out << "j,k,l,s,t,u," << value_columns[0] << ',' << value_columns[1] << ','
      << value_columns[2] << '\n';
  const int n = field.n;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const Vec3<double> x = field.node(j, k, l);
        const auto v = field.at(j, k, l);
        out << j << ',' << k << ',' << l;
        for (int c = 0; c < 3; ++c) {
          out << ',';
          put(out, x(c));
        }
        for (int c = 0; c < 3; ++c) {
          out << ',';
          put(out, v(c));
        }
        out << '\n';
      }
    }
  }
}

void write_form_csv(std::ostream& out, const Grid3Field<double>& form) {
  write_grid_csv(out, form, {"px", "py", "pz"});
}

void write_field_csv(std::ostream& out, const Grid3Field<double>& field) {
  write_grid_csv(out, field, {"Fx", "Fy", "Fz"});
}

double phi2d_coordinate(int i, int intervals) {
  const double half_width = 3.0 * std::numbers::pi;
  return -half_width + 2.0 * half_width * double(i) / double(intervals);
}

void write_phi2d_csv(std::ostream& out, int cutoff, int intervals) {
  if (intervals < 2) throw InvalidArgument("phi2d needs at least 2 intervals");
  out << "x1,x2,phi\n";
  for (int i = 0; i <= intervals; ++i) {
    const double x1 = phi2d_coordinate(i, intervals);
    for (int j = 0; j <= intervals; ++j) {
      const double x2 = phi2d_coordinate(j, intervals);
      put(out, x1);
      out << ',';
      put(out, x2);
      out << ',';
      put(out, phi2d(x1, x2, cutoff));
      out << '\n';
    }
  }
}

}  // namespace trilink
