#pragma once

#include <cmath>
#include <complex>

namespace stratwave {

using cplx = std::complex<double>;

/// A point (x1, x2) in the plane; x2 is the vertical (stratification) axis.
struct Point2 {
    double x1 = 0.0;
    double x2 = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
inline Point2 operator*(double c, Point2 p) { return {c * p.x1, c * p.x2}; }

inline double dot(Point2 a, Point2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double norm(Point2 p) { return std::hypot(p.x1, p.x2); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

}  // namespace stratwave
