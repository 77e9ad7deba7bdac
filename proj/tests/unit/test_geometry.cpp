#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "geometry.hpp"
#include "oracles.hpp"

using namespace uso;

namespace {

// Direct 8x8 DLT solve with h33 = 1, no normalization.
std::array<double, 9> dlt_oracle(const std::array<Correspondence, 4>& c) {
  Eigen::Matrix<double, 8, 8> a;
  Eigen::Matrix<double, 8, 1> b;
  for (int k = 0; k < 4; ++k) {
    const double x = c[k].pixel.x, y = c[k].pixel.y, u = c[k].court.x, v = c[k].court.y;
    a.row(2 * k) << x, y, 1, 0, 0, 0, -u * x, -u * y;
    a.row(2 * k + 1) << 0, 0, 0, x, y, 1, -v * x, -v * y;
    b(2 * k) = u;
    b(2 * k + 1) = v;
  }
  const Eigen::Matrix<double, 8, 1> h = a.fullPivLu().solve(b);
  return {h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), 1.0};
}

Point2D apply(const std::array<double, 9>& m, Point2D p) {
  const double w = m[6] * p.x + m[7] * p.y + m[8];
  return {(m[0] * p.x + m[1] * p.y + m[2]) / w, (m[3] * p.x + m[4] * p.y + m[5]) / w};
}

Homography random_homography(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> jitter(-0.3, 0.3), persp(-2e-4, 2e-4), shift(-50.0, 50.0);
  std::uniform_real_distribution<double> scale(0.02, 0.2);
  const double s = scale(rng);
  return Homography({s * (1 + jitter(rng)), s * jitter(rng), shift(rng), s * jitter(rng),
                     s * (1 + jitter(rng)), shift(rng), persp(rng), persp(rng), 1.0});
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("unit square maps onto the 3v3 court") {
  const std::array<Correspondence, 4> c{{{{0, 0}, {0, 0}}, {{1, 0}, {54, 0}}, {{1, 1}, {54, 20}}, {{0, 1}, {0, 20}}}};
  const auto h = estimate_homography(c);
  const auto oracle = dlt_oracle(c);
  for (int i = 0; i < 9; ++i) CHECK(h.matrix()[i] == doctest::Approx(oracle[i]).epsilon(1e-12));

  const Point2D mid = project(h, {0.5, 0.5});
  const Point2D mid_oracle = apply(oracle, {0.5, 0.5});
  CHECK(mid.x == doctest::Approx(27.0).epsilon(1e-12));
  CHECK(mid.y == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(std::abs(mid.x - mid_oracle.x) < 1e-9);
  const Point2D origin = project(h, {0, 0});
  CHECK(std::abs(origin.x) < 1e-12);
  CHECK(std::abs(origin.y) < 1e-12);
}

TEST_CASE("identity correspondences give the identity") {
  const std::array<Correspondence, 4> c{{{{1, 2}, {1, 2}}, {{7, 3}, {7, 3}}, {{6, 9}, {6, 9}}, {{-2, 5}, {-2, 5}}}};
  const auto h = estimate_homography(c);
  const std::array<double, 9> id{1, 0, 0, 0, 1, 0, 0, 0, 1};
  for (int i = 0; i < 9; ++i) CHECK(std::abs(h.matrix()[i] - id[i]) < 1e-12);
}

TEST_CASE("degenerate correspondence sets are rejected") {
  SUBCASE("three collinear points") {
    const std::array<Correspondence, 4> c{{{{0, 0}, {0, 0}}, {{1, 1}, {5, 0}}, {{2, 2}, {9, 3}}, {{0, 3}, {1, 8}}}};
    CHECK_THROWS_AS(estimate_homography(c), Error);
    try {
      estimate_homography(c);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateConfiguration);
    }
  }
  SUBCASE("fewer than four") {
    const std::array<Correspondence, 3> c{{{{0, 0}, {0, 0}}, {{1, 0}, {1, 0}}, {{0, 1}, {0, 1}}}};
    try {
      estimate_homography(c);
      FAIL("expected TooFewPoints");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TooFewPoints);
    }
  }
  SUBCASE("all points on one line") {
    std::vector<Correspondence> c;
    for (int i = 0; i < 6; ++i) c.push_back({{double(i), 2.0 * i}, {double(i), 0.0}});
    CHECK_THROWS_AS(estimate_homography(c), Error);
  }
}

TEST_CASE("project examples") {
  CHECK(project(Homography(), {3, 4}) == Point2D{3, 4});
  const auto p = project(Homography({2, 0, 0, 0, 2, 0, 0, 0, 1}), {3, 4});
  CHECK(p == Point2D{6, 8});
  const Homography h({1, 0, 0, 0, 1, 0, 1, 0, 1});
  try {
    project(h, {-1, 0});
    FAIL("expected PointAtInfinity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PointAtInfinity);
  }
}

TEST_CASE("random homographies are recovered and invert cleanly") {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> px(0, 1920), py(0, 1080);
  for (int trial = 0; trial < 100; ++trial) {
    const Homography truth = random_homography(rng);
    const int n = 4 + trial % 5;
    std::vector<Correspondence> pairs;
    for (int k = 0; k < n; ++k) {
      const Point2D pix{px(rng), py(rng)};
      pairs.push_back({pix, project(truth, pix)});
    }
    const auto h = estimate_homography(pairs);
    for (int k = 0; k < 20; ++k) {
      const Point2D pix{px(rng), py(rng)};
      CHECK(distance(project(h, pix), project(truth, pix)) <= 1e-6);
      const Point2D court = project(truth, pix);
      CHECK(distance(project(truth, project(truth.inverse(), court)), court) <= 1e-9);
    }
  }
}

TEST_CASE("bbox_center") {
  CHECK(bbox_center({0, 0, 10, 20}) == Point2D{5, 10});
  CHECK(bbox_center({-2, -2, 2, 2}) == Point2D{0, 0});
  CHECK(bbox_center({1, 1, 2, 3}) == Point2D{1.5, 2});
}

TEST_CASE("standardize_direction") {
  const auto f = FieldSpec::threes();
  Frame frame;
  frame.players.push_back({1, Team::Offense, {10, 5}, {2, 1}});
  frame.players.push_back({4, Team::Defense, {30, 18}, {-1, 0}});
  frame.disc = {{10.5, 5}, {0.5, 0}};

  CHECK(standardize_direction(frame, AttackDirection::PlusX, f) == frame);
  const Frame m = standardize_direction(frame, AttackDirection::MinusX, f);
  CHECK(m.players[0].position == Point2D{44, 5});
  CHECK(m.players[0].velocity == Vec2{-2, 1});
  CHECK(m.disc.velocity == Vec2{-0.5, 0});
  CHECK(standardize_direction(m, AttackDirection::MinusX, f) == frame);

  frame.players[1].position = {30, 23};
  try {
    standardize_direction(frame, AttackDirection::PlusX, f);
    FAIL("expected OutOfBounds");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfBounds);
  }
}

TEST_CASE("attacking end zone membership") {
  const auto f = FieldSpec::threes();
  CHECK(in_attacking_endzone(f, {50, 10}));
  CHECK(in_attacking_endzone(f, {44, 10}));
  CHECK_FALSE(in_attacking_endzone(f, {43.99, 10}));
}

TEST_CASE("endzone_angle examples match the vector-angle oracle") {
  const auto f = FieldSpec::threes();
  CHECK(endzone_angle(f, {34, 10}) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
  const double a = endzone_angle(f, {43.9, 10});
  CHECK(a == doctest::Approx(2 * std::atan(100.0)).epsilon(1e-14));
  CHECK(std::abs(a - testing::vector_angle(f, {43.9, 10})) < 1e-12);
  CHECK(std::abs(a - 3.12159) < 5e-6);
  const double b = endzone_angle(f, {34, 0});
  CHECK(std::abs(b - testing::vector_angle(f, {34, 0})) < 1e-12);
  CHECK(std::abs(b - 1.10715) < 5e-6);
  try {
    endzone_angle(f, {45, 10});
    FAIL("expected InsideEndzone");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsideEndzone);
  }

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0, 43.9), uy(0, 20);
  for (int i = 0; i < 500; ++i) {
    const Point2D p{ux(rng), uy(rng)};
    CHECK(std::abs(endzone_angle(f, p) - testing::vector_angle(f, p)) < 1e-9);
  }
}

TEST_CASE("endzone_angle decreases along rays and tends to pi at the front line") {
  const auto f = FieldSpec::threes();
  const Point2D mid{f.front_line_x(), f.width / 2};
  for (double deg = -80; deg <= 80; deg += 10) {
    const double th = std::numbers::pi - deg * std::numbers::pi / 180.0;
    double previous = std::numbers::pi;
    for (double r = 0.05; r < 40.0; r += 0.25) {
      const Point2D p{mid.x + r * std::cos(th), mid.y + r * std::sin(th)};
      if (!f.contains(p)) break;
      const double a = endzone_angle(f, p);
      CHECK(a < previous);
      previous = a;
    }
  }
  for (double y = 0.5; y < f.width; y += 0.5)
    CHECK(endzone_angle(f, {f.front_line_x() - 1e-3, y}) >= std::numbers::pi - 0.01);
}

TEST_CASE("homography and correspondence files") {
  const auto path = temp_file("uso_test_h.txt");
  const Homography h({0.1, 0.02, 3, -0.01, 0.09, 4, 1e-4, -2e-4, 1});
  write_homography(path.string(), h);
  const auto back = read_homography(path.string());
  for (int i = 0; i < 9; ++i) CHECK(back.matrix()[i] == h.matrix()[i]);

  const auto cpath = temp_file("uso_test_c.txt");
  {
    std::ofstream out(cpath);
    out << "# px py cx cy\n0 0 0 0\n1 0 54 0\n1 1 54 20\n0 1 0 20\n";
  }
  const auto c = read_correspondences(cpath.string());
  REQUIRE(c.size() == 4);
  CHECK(c[2].court == Point2D{54, 20});
  std::filesystem::remove(path);
  std::filesystem::remove(cpath);
}
