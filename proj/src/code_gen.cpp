#include <stdexcept>
#include <string>
#include <vector>

#include "cssdec/css_code.hpp"

namespace cssdec {

namespace {

using Rows = std::vector<std::vector<std::uint32_t>>;

}  // namespace

CssCode gen_toric(std::size_t d) {
  if (d < 2) throw std::invalid_argument("gen_toric: distance must be >= 2");
  const std::size_t n = 2 * d * d;
  // Horizontal edge (r,c) joins sites (r,c)-(r,c+1); vertical edge (r,c)
  // joins (r,c)-(r+1,c). Periodic in both directions.
  auto h_edge = [d](std::size_t r, std::size_t c) { return static_cast<std::uint32_t>(r * d + c); };
  auto v_edge = [d](std::size_t r, std::size_t c) {
    return static_cast<std::uint32_t>(d * d + r * d + c);
  };

  Rows vertex_rows, plaquette_rows;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      vertex_rows.push_back({h_edge(r, c), h_edge(r, (c + d - 1) % d), v_edge(r, c),
                             v_edge((r + d - 1) % d, c)});
      plaquette_rows.push_back(
          {h_edge(r, c), h_edge((r + 1) % d, c), v_edge(r, c), v_edge(r, (c + 1) % d)});
    }
  }
  BitMatrix hx = BitMatrix::from_rows(n, std::move(vertex_rows));
  BitMatrix hz = BitMatrix::from_rows(n, std::move(plaquette_rows));
  return make_css_code("toric-d" + std::to_string(d), d, std::move(hx), std::move(hz));
}

CssCode gen_rotated_surface(std::size_t d) {
  if (d < 3 || d % 2 == 0)
    throw std::invalid_argument("gen_rotated_surface: distance must be odd and >= 3");
  const std::size_t n = d * d;
  auto qubit = [d](long r, long c) { return static_cast<std::uint32_t>(r * long(d) + c); };
  auto in_grid = [d](long r, long c) {
    return r >= 0 && c >= 0 && r < long(d) && c < long(d);
  };

  // Plaquette (pr,pc) covers the four qubits at its corners, clipped to the
  // grid. Checkerboard type in the bulk; weight-2 halves survive on the
  // top/bottom boundary for X and left/right for Z.
  Rows x_rows, z_rows;
  for (long pr = -1; pr < long(d); ++pr) {
    for (long pc = -1; pc < long(d); ++pc) {
      std::vector<std::uint32_t> support;
      for (long dr = 0; dr <= 1; ++dr)
        for (long dc = 0; dc <= 1; ++dc)
          if (in_grid(pr + dr, pc + dc)) support.push_back(qubit(pr + dr, pc + dc));
      if (support.size() < 2) continue;
      const bool x_type = ((pr + pc) % 2 + 2) % 2 == 0;
      if (support.size() == 2) {
        const bool top_bottom = (pr == -1 || pr == long(d) - 1);
        if (top_bottom && !x_type) continue;
        if (!top_bottom && x_type) continue;
      }
      (x_type ? x_rows : z_rows).push_back(std::move(support));
    }
  }
  BitMatrix hx = BitMatrix::from_rows(n, std::move(x_rows));
  BitMatrix hz = BitMatrix::from_rows(n, std::move(z_rows));
  return make_css_code("surface-d" + std::to_string(d), d, std::move(hx), std::move(hz));
}

CssCode gen_color_666(std::size_t d) {
  if (d < 3 || d % 2 == 0)
    throw std::invalid_argument("gen_color_666: distance must be odd and >= 3");
  // Triangular patch of the triangular lattice with corners (0,0), (s,0),
  // (0,s). Sites are 3-colored by (i - j) mod 3; the color-1 sites are face
  // centers (hexagons clipped at the boundary), the rest carry qubits.
  const long s = 3 * (long(d) - 1) / 2;
  auto color = [](long i, long j) { return ((i - j) % 3 + 3) % 3; };
  auto in_patch = [s](long i, long j) { return i >= 0 && j >= 0 && i + j <= s; };

  std::vector<std::int32_t> qubit_id((s + 1) * (s + 1), -1);
  auto flat = [s](long i, long j) { return static_cast<std::size_t>(i * (s + 1) + j); };
  std::int32_t next_id = 0;
  for (long i = 0; i <= s; ++i)
    for (long j = 0; j + i <= s; ++j)
      if (color(i, j) != 1) qubit_id[flat(i, j)] = next_id++;
  const std::size_t n = static_cast<std::size_t>(next_id);

  static const long kDirs[6][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};
  Rows face_rows;
  for (long i = 0; i <= s; ++i) {
    for (long j = 0; j + i <= s; ++j) {
      if (color(i, j) != 1) continue;
      std::vector<std::uint32_t> face;
      for (const auto& dir : kDirs) {
        long ni = i + dir[0], nj = j + dir[1];
        if (in_patch(ni, nj)) face.push_back(static_cast<std::uint32_t>(qubit_id[flat(ni, nj)]));
      }
      face_rows.push_back(std::move(face));
    }
  }
  BitMatrix h = BitMatrix::from_rows(n, face_rows);
  BitMatrix h2 = BitMatrix::from_rows(n, std::move(face_rows));
  return make_css_code("color666-d" + std::to_string(d), d, std::move(h), std::move(h2));
}

}  // namespace cssdec
