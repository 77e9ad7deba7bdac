// Exercises libuso through its C header only.

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "uso/uso.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("uso_capi_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config handle") {
  uso_config* cfg = uso_config_new();
  REQUIRE(cfg != nullptr);
  CHECK(uso_config_set(cfg, "field", "official") == USO_OK);
  CHECK(std::string(uso_config_text(cfg)).find("field = official") != std::string::npos);
  CHECK(uso_config_set(cfg, "no_such_key", "1") == USO_ERR_CONFIG);
  CHECK(std::strlen(uso_last_error()) > 0);
  CHECK(uso_config_set(cfg, "dt", "-1") == USO_ERR_CONFIG);
  CHECK(std::string(uso_config_text(cfg)).find("dt = 0.04") != std::string::npos);
  CHECK(uso_config_load(cfg, "/nonexistent/uso.cfg") != USO_OK);
  CHECK(uso_config_set(nullptr, "dt", "1") == USO_ERR_INPUT);
  uso_config_free(cfg);
}

TEST_CASE("errors are reported per thread") {
  uso_config* cfg = uso_config_new();
  CHECK(uso_config_set(cfg, "bogus", "1") == USO_ERR_CONFIG);
  std::string other;
  std::thread([&] { other = uso_last_error(); }).join();
  CHECK(other.empty());
  CHECK(std::string(uso_last_error()).find("bogus") != std::string::npos);
  uso_config_free(cfg);
}

TEST_CASE("synth, load, series and status codes") {
  const auto dir = scratch("synth");
  uso_config* cfg = uso_config_new();
  CHECK(uso_synth(cfg, "static", dir.c_str()) == USO_OK);
  CHECK(uso_synth(cfg, "no_such_scenario", dir.c_str()) == USO_ERR_CONFIG);

  uso_set* set = nullptr;
  REQUIRE(uso_set_load((dir / "static").c_str(), &set) == USO_OK);
  CHECK(uso_set_frame_count(set) == 60);
  CHECK(uso_set_pass_count(set) == 3);

  std::vector<double> one(60), two(60);
  CHECK(uso_score_series(cfg, set, 1, one.data(), one.size()) == USO_OK);
  CHECK(uso_score_series(cfg, set, 2, two.data(), two.size()) == USO_OK);
  CHECK(one == two);
  for (double v : one) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  CHECK(uso_heatmap(cfg, set, 999, "uso", (dir / "h").c_str(), 1) == USO_ERR_INPUT);
  CHECK(uso_heatmap(cfg, set, 0, "w_area", (dir / "h").c_str(), 1) == USO_OK);
  CHECK(fs::exists(dir / "h" / "w_area_frame_000000.pgm"));

  uso_set* bad = nullptr;
  CHECK(uso_set_load((dir / "missing").c_str(), &bad) == USO_ERR_INPUT);
  CHECK(bad == nullptr);

  CHECK(uso_synth(cfg, "marked_holder", dir.c_str()) == USO_OK);
  uso_set* marked = nullptr;
  REQUIRE(uso_set_load((dir / "marked_holder").c_str(), &marked) == USO_OK);
  const uso_set* only[] = {marked};
  CHECK(uso_evaluate(cfg, only, 1, USO_FORMAT_CSV, (dir / "e").c_str(), 1) == USO_ERR_EVALUATE);

  uso_set_free(marked);
  uso_set_free(set);
  uso_config_free(cfg);
  fs::remove_all(dir);
}

TEST_CASE("homography helpers") {
  const double pts[] = {0, 0, 0, 0, 1, 0, 54, 0, 1, 1, 54, 20, 0, 1, 0, 20};
  double h[9];
  REQUIRE(uso_estimate_homography(pts, 4, h) == USO_OK);
  CHECK(h[8] == 1.0);
  double x = 0, y = 0;
  REQUIRE(uso_project(h, 0.5, 0.5, &x, &y) == USO_OK);
  CHECK(std::abs(x - 27.0) < 1e-9);
  CHECK(std::abs(y - 10.0) < 1e-9);
  const double collinear[] = {0, 0, 0, 0, 1, 1, 5, 0, 2, 2, 9, 3, 0, 3, 1, 8};
  CHECK(uso_estimate_homography(collinear, 4, h) == USO_ERR_INPUT);
}
