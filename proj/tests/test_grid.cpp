#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "sns/grid.hpp"

using namespace sns;

namespace {

GridSpec small_grid(int m = 16) {
  GridSpec s;
  s.m_tangential = s.m_normal = m;
  return s;
}

}  // namespace

TEST_CASE("grid spec defaults and refinement") {
  const GridSpec s;
  CHECK_NOTHROW(s.validate());
  CHECK(s.steps() == 250);
  CHECK(s.rows(Slab::Half) == 129);
  CHECK(s.rows(Slab::Full) == 256);
  const GridSpec f = s.refined(2);
  CHECK(f.m_tangential == 256);
  CHECK(f.m_normal == 256);
  CHECK(f.dt == s.dt);
  CHECK(!f.same_space(s));
  CHECK(f.same_space(s.refined(2)));
}

TEST_CASE("grid spec rejects bad values") {
  GridSpec s = small_grid();
  s.m_normal = 0;
  CHECK_THROWS(s.validate());
  s = small_grid();
  s.dt = -1e-3;
  CHECK_THROWS(s.validate());
  s = small_grid();
  s.n = 4;
  CHECK_THROWS(s.validate());
}

TEST_CASE("coordinates: wall first, then upward; tangential from -L") {
  const GridSpec s = small_grid();
  CHECK(s.normal_coordinate(Slab::Half, 0) == 0.0);
  CHECK(s.normal_coordinate(Slab::Half, s.m_normal) == doctest::Approx(s.H));
  const Point p = s.point(Slab::Half, 0);
  CHECK(p[0] == doctest::Approx(-s.L));
  CHECK(p[1] == 0.0);
  CHECK(s.normal_coordinate(Slab::Full, 0) == doctest::Approx(-s.H));
}

TEST_CASE("lp norms are exact for constants and low trigonometric profiles") {
  const GridSpec s = small_grid();
  const auto one = ScalarField::sample(s, Slab::Half, [](const Point&) { return 1.0; });
  CHECK(lp_norm(one, 2.0) == doctest::Approx(std::sqrt(2.0 * s.L * s.H)).epsilon(1e-14));
  CHECK(lp_norm(one, 1.0) == doctest::Approx(2.0 * s.L * s.H).epsilon(1e-14));
  // sin^2 integrates to pi/2 over [0, pi]; the trapezoid is exact for cos(2x).
  const auto sn = ScalarField::sample(s, Slab::Half, [](const Point& x) { return std::sin(x[1]); });
  CHECK(lp_norm(sn, 2.0) == doctest::Approx(std::numbers::pi).epsilon(1e-13));
  CHECK(lp_norm(sn, std::numeric_limits<double>::infinity()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("extensions") {
  const GridSpec s = small_grid();
  const auto f = ScalarField::sample(s, Slab::Half, [](const Point& x) { return std::exp(x[0]) * x[1] * x[1]; });
  const ScalarField z = zero_extend(f);
  CHECK(z.slab() == Slab::Full);
  // x_n = H and x_n = -H are one periodic row; the zero extension keeps
  // the lower copy, so restriction recovers every row but the top one.
  const ScalarField back = restrict_to_half(z);
  for (int r = 0; r < s.m_normal; ++r) CHECK((back.row(r) == f.row(r)).all());
  CHECK((back.row(s.m_normal) == 0.0).all());
  const ScalarField m = mirror_extend(f);
  // Mirror extension lives on the reflected rows only.
  for (int r = 1; r < s.m_normal; ++r) {
    const double xn = s.normal_coordinate(Slab::Half, r);
    for (int c = 0; c < s.tangential_count(); ++c) {
      const int full_row_up = s.m_normal + r;
      const int full_row_down = s.m_normal - r;
      CHECK(z.row(full_row_down)[c] == 0.0);
      CHECK(m.row(full_row_down)[c] == f.row(r)[c]);
      CHECK(m.row(full_row_up)[c] == 0.0);
      CHECK(s.normal_coordinate(Slab::Full, full_row_up) == doctest::Approx(xn));
    }
  }
  const ScalarField e = extend(f, Extension::Even);
  const ScalarField o = extend(f, Extension::Odd);
  CHECK((e.values() - (z.values() + m.values())).abs().maxCoeff() < 1e-15);
  // Odd: zero - mirror, except the rows x_n = 0 and x_n = -H which it sets to 0.
  for (int r = 0; r < 2 * s.m_normal; ++r) {
    if (r == 0 || r == s.m_normal)
      CHECK((o.row(r) == 0.0).all());
    else
      CHECK((o.row(r) - (z.row(r) - m.row(r))).abs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("reflection moves a peak at height h to depth -h") {
  const GridSpec s = small_grid(32);
  const double h = s.normal_coordinate(Slab::Half, 10);
  const auto f = ScalarField::sample(s, Slab::Half, [&](const Point& x) {
    return std::exp(-(x[0] * x[0] + (x[1] - h) * (x[1] - h)) / 0.1);
  });
  const ScalarField r = reflect(f);
  const int col = s.tangential_count() / 2;  // x' = 0
  CHECK(s.point(Slab::Full, static_cast<std::size_t>(s.m_normal - 10) * s.tangential_count() + col)[1] ==
        doctest::Approx(-h));
  CHECK(r.row(s.m_normal - 10)[col] == doctest::Approx(f.values().maxCoeff()).epsilon(1e-15));
}

TEST_CASE("field container round trip") {
  const GridSpec s = small_grid();
  VectorField v(s, Slab::Half);
  v[0] = ScalarField::sample(s, Slab::Half, [](const Point& x) { return std::sin(x[0]) * x[1]; });
  v[1] = ScalarField::sample(s, Slab::Half, [](const Point& x) { return std::cos(3 * x[0]) - x[1]; });
  const auto dir = std::filesystem::temp_directory_path() / "sns_test_grid";
  std::filesystem::create_directories(dir);
  write_field(dir / "v.bin", v);
  const VectorField w = read_field(dir / "v.bin");
  CHECK(w.spec() == v.spec());
  CHECK(w.dim() == 2);
  CHECK((w[0].values() == v[0].values()).all());
  CHECK((w[1].values() == v[1].values()).all());
  CHECK(checksum(w) == checksum(v));
  // size: 8 magic + 5 int64 + 2 float64 + samples
  CHECK(std::filesystem::file_size(dir / "v.bin") == 8 + 5 * 8 + 2 * 8 + 2 * s.size(Slab::Half) * 8);

  std::ofstream(dir / "bad.bin") << "NOTAFIELD";
  CHECK_THROWS(read_field(dir / "bad.bin"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a("", 0) == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a", 1) == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("series manifest lists index, time and checksum") {
  const GridSpec s = small_grid();
  VectorSeries series;
  series.dt = 0.01;
  for (int k = 0; k < 5; ++k) {
    VectorField v(s, Slab::Half);
    v[0].values().setConstant(k);
    series.samples.push_back(v);
  }
  const auto dir = std::filesystem::temp_directory_path() / "sns_test_series";
  std::filesystem::remove_all(dir);
  write_series(dir, series, 2);
  std::ifstream in(dir / "manifest.csv");
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "index,t,checksum");
  int count = 0;
  while (std::getline(in, line)) ++count;
  CHECK(count == 3);  // 0, 2, 4
  std::filesystem::remove_all(dir);
}
