#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "grid.hpp"
#include "oracles.hpp"
#include "pitch_control.hpp"

using namespace uso;

namespace {

Frame make_frame(std::vector<PlayerState> players) {
  Frame f;
  f.players = std::move(players);
  f.disc.position = f.players.front().position;
  return f;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("eligible players") {
  const ModelParams params;
  const auto f = make_frame({{3, Team::Offense, {10, 10}, {}},
                             {1, Team::Offense, {11, 10}, {}},
                             {4, Team::Defense, {12.9, 10}, {}},
                             {5, Team::Defense, {13.1, 10}, {}}});
  const auto e = eligible_players(f, 3, params);
  std::vector<PlayerId> ids;
  for (const auto& p : e) ids.push_back(p.id);
  CHECK(ids == std::vector<PlayerId>{1, 5});
  try {
    eligible_players(f, 99, params);
    FAIL("expected HolderNotFound");
  } catch (const Error& e2) {
    CHECK(e2.kind() == ErrorKind::HolderNotFound);
  }
}

TEST_CASE("time to intercept, arrival law and flight time") {
  const ModelParams params;
  CHECK(time_to_intercept({1, Team::Offense, {0, 0}, {}}, {10, 0}, params) == doctest::Approx(2.7).epsilon(1e-14));
  CHECK(time_to_intercept({1, Team::Offense, {4, 4}, {}}, {4, 4}, params) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(time_to_intercept({1, Team::Offense, {0, 0}, {5, 0}}, {3.5, 0}, params) ==
        doctest::Approx(0.7).epsilon(1e-14));

  CHECK(arrival_probability(2.0, 2.0, 0.45) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(arrival_probability(2.0 + 20 * 0.45, 2.0, 0.45) >= 1.0 - 1e-9);
  const double expected = 1.0 / (1.0 + std::exp(-std::numbers::pi / std::sqrt(3.0)));
  CHECK(arrival_probability(2.45, 2.0, 0.45) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(expected - 0.8598) < 5e-5);

  CHECK(disc_flight_time({0, 0}, {9, 12}, params) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(disc_flight_time({3, 3}, {3, 3}, params) == 0.0);
  CHECK(disc_flight_time({0, 0}, {30, 0}, params) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("unopposed attacker takes the point") {
  const ModelParams params;
  const auto f = make_frame({{1, Team::Offense, {10, 10}, {}}, {2, Team::Offense, {20, 10}, {}}});
  const auto r = compute_ppcf_at(f, 1, {25, 10}, params);
  CHECK(r.offense >= 1.0 - params.epsilon_converge - 1e-12);
  CHECK(r.defense == 0.0);
}

TEST_CASE("no eligible players gives zero control") {
  const ModelParams params;
  const auto f = make_frame({{1, Team::Offense, {10, 10}, {}}, {4, Team::Defense, {11, 10}, {}}});
  const auto r = compute_ppcf_at(f, 1, {25, 10}, params);
  CHECK(r.offense == 0.0);
  CHECK(r.defense == 0.0);
}

TEST_CASE("mirror-symmetric attacker and defender split the mass") {
  const ModelParams params;
  const auto f = make_frame({{1, Team::Offense, {20, 2}, {}},
                             {2, Team::Offense, {25, 14}, {0, -1}},
                             {4, Team::Defense, {25, 6}, {0, 1}}});
  const auto r = compute_ppcf_at(f, 1, {25, 10}, params);
  CHECK(std::abs(r.offense - r.defense) <= 1e-6);
  CHECK(r.offense + r.defense > 0.9);
}

TEST_CASE("reference example matches fine-step Euler") {
  const ModelParams params;
  // Attacker 5 m, defender 10 m and holder 15 m from the target.
  const Point2D target{30, 10};
  const auto f = make_frame({{1, Team::Offense, {15, 10}, {}},
                             {2, Team::Offense, {30, 15}, {}},
                             {4, Team::Defense, {40, 10}, {}}});
  const auto r = compute_ppcf_at(f, 1, target, params);
  const auto ref = testing::euler_ppcf(f, 1, target, params, 1e-4);
  CHECK(r.offense > 0.9);
  CHECK(r.offense <= 1.0);
  CHECK(std::abs(r.offense - ref.offense) <= 1e-3);
  CHECK(std::abs(r.defense - ref.defense) <= 1e-3);
  MESSAGE("offense " << r.offense << " reference " << ref.offense);
}

TEST_CASE("step-size consistency against the Euler oracle") {
  const ModelParams params;
  const auto field = FieldSpec::threes();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ux(0, field.length), uy(0, field.width);
  for (int k = 0; k < 30; ++k) {
    const auto f = testing::random_frame(rng, field, params.max_speed);
    const Point2D target{ux(rng), uy(rng)};
    const auto r = compute_ppcf_at(f, 1, target, params);
    const auto ref = testing::euler_ppcf(f, 1, target, params, 1e-3);
    CHECK(std::abs(r.offense - ref.offense) <= 1e-3);
    CHECK(std::abs(r.defense - ref.defense) <= 1e-3);
  }
}

TEST_CASE("total mass is non-decreasing in the horizon") {
  const auto field = FieldSpec::threes();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(0, field.length), uy(0, field.width);
  for (int k = 0; k < 20; ++k) {
    ModelParams params;
    const auto f = testing::random_frame(rng, field, params.max_speed);
    const Point2D target{ux(rng), uy(rng)};
    double previous = 0.0;
    for (double h : {0.2, 0.5, 1.0, 2.0, 4.0, 10.0}) {
      params.horizon = h;
      const auto r = compute_ppcf_at(f, 1, target, params);
      CHECK(r.offense + r.defense >= previous);
      previous = r.offense + r.defense;
    }
  }
}

TEST_CASE("translation leaves the point value unchanged") {
  const ModelParams params;
  const auto f = make_frame({{1, Team::Offense, {12, 8}, {}},
                             {2, Team::Offense, {18, 12}, {1, 2}},
                             {3, Team::Offense, {9, 3}, {-1, 0}},
                             {4, Team::Defense, {20, 10}, {0.5, -0.5}},
                             {5, Team::Defense, {14, 9}, {}}});
  const Point2D target{22, 11};
  const auto r = compute_ppcf_at(f, 1, target, params);
  auto moved = f;
  const Vec2 shift{7.25, 3.5};
  for (auto& p : moved.players) p.position = p.position + shift;
  moved.disc.position = moved.disc.position + shift;
  const auto m = compute_ppcf_at(moved, 1, target + shift, params);
  CHECK(std::abs(r.offense - m.offense) <= 1e-12);
  CHECK(std::abs(r.defense - m.defense) <= 1e-12);
}

TEST_CASE("grid field properties") {
  const ModelParams params;
  const auto field = FieldSpec::threes();
  const auto grid = GridSpec::covering(field, params.grid_cell);
  CHECK(grid.nx == 108);
  CHECK(grid.ny == 40);
  std::mt19937_64 rng(42);
  const auto f = testing::random_frame(rng, field, params.max_speed);
  const auto a = compute_ppcf_grid(f, 1, grid, field, params, 1);

  SUBCASE("probability bounds") {
    for (std::size_t i = 0; i < a.offense.size(); ++i) {
      CHECK(a.offense[i] >= 0.0);
      CHECK(a.defense[i] >= 0.0);
      CHECK(a.offense[i] + a.defense[i] <= 1.0 + 1e-9);
    }
  }
  SUBCASE("y-flip") {
    const auto b = compute_ppcf_grid(testing::mirror_y(f, field.width), 1, grid, field, params, 1);
    double worst = 0.0;
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) {
        worst = std::max(worst, std::abs(a.offense[grid.index(i, j)] - b.offense[grid.index(i, grid.ny - 1 - j)]));
        worst = std::max(worst, std::abs(a.defense[grid.index(i, j)] - b.defense[grid.index(i, grid.ny - 1 - j)]));
      }
    CHECK(worst <= 1e-9);
  }
  SUBCASE("worker count does not change the field") {
    const auto b = compute_ppcf_grid(f, 1, grid, field, params, 3);
    CHECK(a.offense == b.offense);
    CHECK(a.defense == b.defense);
  }
  SUBCASE("holder velocity never matters") {
    auto g = f;
    g.players[0].velocity = {4.0, -3.0};
    const auto b = compute_ppcf_grid(g, 1, grid, field, params, 1);
    CHECK(a.offense == b.offense);
    CHECK(a.defense == b.defense);
  }
}

TEST_CASE("all markers excluded leaves the offense unopposed") {
  const ModelParams params;
  const auto field = FieldSpec::threes();
  const auto grid = GridSpec::covering(field, 1.0);
  const auto f = make_frame({{1, Team::Offense, {20, 10}, {}},
                             {2, Team::Offense, {30, 5}, {}},
                             {3, Team::Offense, {35, 15}, {}},
                             {4, Team::Defense, {22, 10}, {}},
                             {5, Team::Defense, {20, 12.5}, {}},
                             {6, Team::Defense, {18, 9}, {}}});
  const auto a = compute_ppcf_grid(f, 1, grid, field, params, 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!a.in_court[i]) continue;
    CHECK(a.offense[i] >= 1.0 - params.epsilon_converge - 1e-12);
    CHECK(a.defense[i] == 0.0);
  }
}

TEST_CASE("marker radius boundary") {
  const ModelParams params;
  const auto field = FieldSpec::threes();
  const auto grid = GridSpec::covering(field, params.grid_cell);
  const auto base = [&](double gap) {
    return make_frame({{1, Team::Offense, {20, 10}, {}},
                       {2, Team::Offense, {30, 5}, {}},
                       {3, Team::Offense, {30, 15}, {}},
                       {4, Team::Defense, {20 + gap, 10}, {}},
                       {5, Team::Defense, {35, 8}, {}},
                       {6, Team::Defense, {35, 13}, {}}});
  };
  const auto in = compute_ppcf_grid(base(2.99), 1, grid, field, params, 1);
  const auto out = compute_ppcf_grid(base(3.01), 1, grid, field, params, 1);
  CHECK(max_abs_diff(in.offense, out.offense) > 0.0);
  const auto near = grid.index(45, 20);  // cell at (22.75, 10.25), beside the marker
  CHECK(in.offense[near] > out.offense[near]);
  CHECK(eligible_players(base(3.0), 1, params).size() == 4);
}
