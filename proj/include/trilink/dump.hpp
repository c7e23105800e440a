#pragma once

#include <array>
#include <ostream>
#include <string>

#include "trilink/grid.hpp"

namespace trilink {

/// CSV of a grid field, one row per node in (j, k, l) row-major order:
///   j,k,l,s,t,u,<c0>,<c1>,<c2>
void write_grid_csv(std::ostream& out, const Grid3Field<double>& field,
                    const std::array<std::string, 3>& value_columns);

/// Characteristic form dump, columns px,py,pz hold (p, q, r).
void write_form_csv(std::ostream& out, const Grid3Field<double>& form);

/// Sampled key map dump, columns Fx,Fy,Fz.
void write_field_csv(std::ostream& out, const Grid3Field<double>& field);

/// 2-torus fundamental solution on a (intervals + 1)^2 node grid covering
/// [-3 pi, 3 pi]^2, header x1,x2,phi. Rows run over x2 fastest.
void write_phi2d_csv(std::ostream& out, int cutoff, int intervals);

/// Node coordinate i of the phi2d grid.
double phi2d_coordinate(int i, int intervals);

}  // namespace trilink
