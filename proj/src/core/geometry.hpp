#pragma once

#include <array>
#include <span>
#include <string>

#include "types.hpp"

namespace uso {

// Court model in the canonical frame: (0,0) is the defending-side left corner,
// x runs along the long axis and the offense always attacks +x.
struct FieldSpec {
  double length = 54.0;
  double width = 20.0;
  double endzone_depth = 10.0;

  static FieldSpec official() { return {100.0, 37.0, 18.0}; }
  static FieldSpec threes() { return {54.0, 20.0, 10.0}; }

  double front_line_x() const { return length - endzone_depth; }
  double diagonal() const { return std::hypot(length, width); }

  // Throws Error(Config) when the invariants do not hold.
  void validate() const;
  bool contains(Point2D p, double tolerance = 0.0) const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Tolerance for annotation noise placing players slightly outside the lines.
inline constexpr double kOutOfBoundsTolerance = 2.0;

struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;
};

// 3x3 projective map, row-major, normalized so that m[8] == 1.
class Homography {
public:
  Homography();  // identity
  explicit Homography(const std::array<double, 9>& m);

  const std::array<double, 9>& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_[row * 3 + col]; }
  double determinant() const;
  Homography inverse() const;

private:
  std::array<double, 9> m_;
};

struct Correspondence {
  Point2D pixel;
  Point2D court;
};

// Normalized DLT. Exactly determined for four points, least squares beyond.
Homography estimate_homography(std::span<const Correspondence> correspondences);

Point2D project(const Homography& h, Point2D p);

Point2D bbox_center(const BBox& b);

enum class AttackDirection { PlusX, MinusX };

Frame standardize_direction(const Frame& frame, AttackDirection attacking, const FieldSpec& field);

bool in_attacking_endzone(const FieldSpec& field, Point2D p);

// Angle subtended at p by the attacking end-zone front line, in (0, pi).
double endzone_angle(const FieldSpec& field, Point2D p);

// Plain-text IO: nine numbers for a homography, `px py cx cy` lines for
// correspondences.
Homography read_homography(const std::string& path);
void write_homography(const std::string& path, const Homography& h);
std::vector<Correspondence> read_correspondences(const std::string& path);

}  // namespace uso
