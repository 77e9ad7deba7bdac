#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "error.hpp"

namespace uso {

void FieldSpec::validate() const {
  if (!(endzone_depth > 0.0) || !(length > 2.0 * endzone_depth) || !(width > 0.0) ||
      !std::isfinite(length) || !std::isfinite(width)) {
    std::ostringstream msg;
    msg << "invalid field " << length << "x" << width << " with end zone " << endzone_depth;
    throw Error(ErrorKind::Config, msg.str());
  }
}

bool FieldSpec::contains(Point2D p, double tolerance) const {
  return p.x >= -tolerance && p.x <= length + tolerance && p.y >= -tolerance &&
         p.y <= width + tolerance;
}

namespace {

std::array<double, 9> normalized(std::array<double, 9> m) {
  if (std::abs(m[8]) > 1e-12) {
    const double s = m[8];
    for (auto& v : m) v /= s;
    m[8] = 1.0;
  } else {
    double norm = 0.0;
    for (double v : m) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (auto& v : m) v /= norm;
    }
  }
  return m;
}

double det3(const std::array<double, 9>& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

std::array<double, 9> multiply(const std::array<double, 9>& a, const std::array<double, 9>& b) {
  std::array<double, 9> c{};
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < 3; ++k) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) s += a[r * 3 + j] * b[j * 3 + k];
      c[r * 3 + k] = s;
    }
  }
  return c;
}

// Similarity moving the centroid to the origin with mean distance sqrt(2).
struct Normalizer {
  double cx = 0.0;
  double cy = 0.0;
  double scale = 1.0;

  Point2D apply(Point2D p) const { return {(p.x - cx) * scale, (p.y - cy) * scale}; }
  std::array<double, 9> matrix() const {
    return {scale, 0.0, -scale * cx, 0.0, scale, -scale * cy, 0.0, 0.0, 1.0};
  }
  std::array<double, 9> inverse_matrix() const {
    return {1.0 / scale, 0.0, cx, 0.0, 1.0 / scale, cy, 0.0, 0.0, 1.0};
  }
};

Normalizer make_normalizer(const std::vector<Point2D>& pts) {
  Normalizer n;
  for (const auto& p : pts) {
    n.cx += p.x;
    n.cy += p.y;
  }
  n.cx /= static_cast<double>(pts.size());
  n.cy /= static_cast<double>(pts.size());
  double mean = 0.0;
  for (const auto& p : pts) mean += std::hypot(p.x - n.cx, p.y - n.cy);
  mean /= static_cast<double>(pts.size());
  if (!(mean > 0.0)) {
    throw Error(ErrorKind::DegenerateConfiguration, "all points coincide");
  }
  n.scale = std::numbers::sqrt2 / mean;
  return n;
}

bool collinear(Point2D a, Point2D b, Point2D c) {
  const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return std::abs(cross) < 1e-9;
}

void check_points(const std::vector<Point2D>& pts, const char* which) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) < 1e-9) {
        throw Error(ErrorKind::DegenerateConfiguration,
                    std::string("duplicate ") + which + " points " + std::to_string(i) + " and " +
                        std::to_string(j));
      }
    }
  }
  // With exactly four points any collinear triple leaves the map undetermined.
  // Larger sets only need to span the plane; rank is checked in the solve.
  if (n == 4) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          if (collinear(pts[i], pts[j], pts[k])) {
            throw Error(ErrorKind::DegenerateConfiguration,
                        std::string("collinear ") + which + " points " + std::to_string(i) + "," +
                            std::to_string(j) + "," + std::to_string(k));
          }
  }
}

// Householder QR least squares for a tall rows x 8 system (row-major A).
std::array<double, 8> solve_least_squares(std::vector<double> a, std::vector<double> b,
                                          std::size_t rows) {
  constexpr std::size_t cols = 8;
  std::array<double, cols> diag{};
  for (std::size_t k = 0; k < cols; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < rows; ++i) norm += a[i * cols + k] * a[i * cols + k];
    norm = std::sqrt(norm);
    if (norm < 1e-12) {
      throw Error(ErrorKind::DegenerateConfiguration, "correspondences do not determine a homography");
    }
    const double alpha = a[k * cols + k] > 0.0 ? -norm : norm;
    // v = x - alpha e1, stored in column k below the diagonal.
    a[k * cols + k] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < rows; ++i) vnorm2 += a[i * cols + k] * a[i * cols + k];
    if (vnorm2 > 0.0) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        double dot = 0.0;
        for (std::size_t i = k; i < rows; ++i) dot += a[i * cols + k] * a[i * cols + j];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < rows; ++i) a[i * cols + j] -= f * a[i * cols + k];
      }
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += a[i * cols + k] * b[i];
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < rows; ++i) b[i] -= f * a[i * cols + k];
    }
    diag[k] = alpha;
  }
  double max_diag = 0.0;
  for (double d : diag) max_diag = std::max(max_diag, std::abs(d));
  for (double d : diag) {
    if (std::abs(d) < 1e-10 * max_diag) {
      throw Error(ErrorKind::DegenerateConfiguration, "correspondences do not determine a homography");
    }
  }
  std::array<double, cols> x{};
  for (std::size_t k = cols; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < cols; ++j) s -= a[k * cols + j] * x[j];
    x[k] = s / diag[k];
  }
  return x;
}

}  // namespace

Homography::Homography() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

Homography::Homography(const std::array<double, 9>& m) : m_(normalized(m)) {
  for (double v : m_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::DegenerateConfiguration, "non-finite homography");
  }
  if (std::abs(det3(m_)) <= 1e-12) {
    throw Error(ErrorKind::DegenerateConfiguration, "homography is not invertible");
  }
}

double Homography::determinant() const { return det3(m_); }

Homography Homography::inverse() const {
  const auto& m = m_;
  const double d = det3(m);
  std::array<double, 9> inv{
      (m[4] * m[8] - m[5] * m[7]) / d, (m[2] * m[7] - m[1] * m[8]) / d,
      (m[1] * m[5] - m[2] * m[4]) / d, (m[5] * m[6] - m[3] * m[8]) / d,
      (m[0] * m[8] - m[2] * m[6]) / d, (m[2] * m[3] - m[0] * m[5]) / d,
      (m[3] * m[7] - m[4] * m[6]) / d, (m[1] * m[6] - m[0] * m[7]) / d,
      (m[0] * m[4] - m[1] * m[3]) / d};
  return Homography(inv);
}

Homography estimate_homography(std::span<const Correspondence> correspondences) {
  const std::size_t n = correspondences.size();
  if (n < 4) {
    throw Error(ErrorKind::TooFewPoints,
                "need at least 4 correspondences, got " + std::to_string(n));
  }
  std::vector<Point2D> src, dst;
  src.reserve(n);
  dst.reserve(n);
  for (const auto& c : correspondences) {
    src.push_back(c.pixel);
    dst.push_back(c.court);
  }
  const Normalizer ns = make_normalizer(src);
  const Normalizer nd = make_normalizer(dst);
  for (auto& p : src) p = ns.apply(p);
  for (auto& p : dst) p = nd.apply(p);
  check_points(src, "source");
  check_points(dst, "target");

  const std::size_t rows = 2 * n;
  std::vector<double> a(rows * 8, 0.0);
  std::vector<double> b(rows, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = src[i].x, y = src[i].y, u = dst[i].x, v = dst[i].y;
    double* r0 = &a[(2 * i) * 8];
    double* r1 = &a[(2 * i + 1) * 8];
    r0[0] = x; r0[1] = y; r0[2] = 1.0; r0[6] = -u * x; r0[7] = -u * y;
    r1[3] = x; r1[4] = y; r1[5] = 1.0; r1[6] = -v * x; r1[7] = -v * y;
    b[2 * i] = u;
    b[2 * i + 1] = v;
  }
  const auto h = solve_least_squares(std::move(a), std::move(b), rows);
  const std::array<double, 9> hn{h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], 1.0};
  return Homography(multiply(nd.inverse_matrix(), multiply(hn, ns.matrix())));
}

Point2D project(const Homography& h, Point2D p) {
  const auto& m = h.matrix();
  const double u = m[0] * p.x + m[1] * p.y + m[2];
  const double v = m[3] * p.x + m[4] * p.y + m[5];
  const double w = m[6] * p.x + m[7] * p.y + m[8];
  if (std::abs(w) < 1e-12) {
    std::ostringstream msg;
    msg << "(" << p.x << ", " << p.y << ") maps to the line at infinity";
    throw Error(ErrorKind::PointAtInfinity, msg.str());
  }
  return {u / w, v / w};
}

Point2D bbox_center(const BBox& b) { return {(b.x1 + b.x2) / 2.0, (b.y1 + b.y2) / 2.0}; }

Frame standardize_direction(const Frame& frame, AttackDirection attacking, const FieldSpec& field) {
  auto check = [&](Point2D p, PlayerId id) {
    if (!field.contains(p, kOutOfBoundsTolerance)) {
      std::ostringstream msg;
      msg << "frame " << frame.index << " entity " << id << " at (" << p.x << ", " << p.y
          << ") is outside the court";
      throw Error(ErrorKind::OutOfBounds, msg.str());
    }
  };
  for (const auto& p : frame.players) check(p.position, p.id);
  check(frame.disc.position, kDiscId);

  if (attacking == AttackDirection::PlusX) return frame;
  Frame out = frame;
  for (auto& p : out.players) {
    p.position.x = field.length - p.position.x;
    p.velocity.x = -p.velocity.x;
  }
  out.disc.position.x = field.length - out.disc.position.x;
  out.disc.velocity.x = -out.disc.velocity.x;
  return out;
}

bool in_attacking_endzone(const FieldSpec& field, Point2D p) {
  return p.x >= field.front_line_x() && p.x <= field.length && p.y >= 0.0 && p.y <= field.width;
}

double endzone_angle(const FieldSpec& field, Point2D p) {
  if (in_attacking_endzone(field, p)) {
    std::ostringstream msg;
    msg << "(" << p.x << ", " << p.y << ") lies in the attacking end zone";
    throw Error(ErrorKind::InsideEndzone, msg.str());
  }
  const double fx = field.front_line_x();
  const double ax = fx - p.x, ay = -p.y;
  const double bx = fx - p.x, by = field.width - p.y;
  const double cross = ax * by - ay * bx;
  const double dot = ax * bx + ay * by;
  return std::atan2(std::abs(cross), dot);
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return in;
}

}  // namespace

Homography read_homography(const std::string& path) {
  auto in = open_input(path);
  std::array<double, 9> m{};
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(in >> m[i])) {
      throw Error(ErrorKind::SchemaError,
                  path + ": expected 9 numbers, read " + std::to_string(i));
    }
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorKind::SchemaError, path + ": trailing data after 9 numbers");
  return Homography(m);
}

void write_homography(const std::string& path, const Homography& h) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out.precision(17);
  const auto& m = h.matrix();
  for (int r = 0; r < 3; ++r) {
    out << m[r * 3] << ' ' << m[r * 3 + 1] << ' ' << m[r * 3 + 2] << '\n';
  }
}

std::vector<Correspondence> read_correspondences(const std::string& path) {
  auto in = open_input(path);
  std::vector<Correspondence> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream ls(line);
    Correspondence c;
    std::string extra;
    if (!(ls >> c.pixel.x >> c.pixel.y >> c.court.x >> c.court.y) || (ls >> extra)) {
      throw Error(ErrorKind::SchemaError,
                  path + ":" + std::to_string(lineno) + ": expected `px py cx cy`");
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace uso
