#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mdflow {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3& operator+=(Vec3& a, const Vec3& b) { a[0] += b[0]; a[1] += b[1]; a[2] += b[2]; return a; }

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n};
}

/// Error categories map to CLI exit codes: config 2, mesh 3, solver 4.
enum class ErrorClass { Internal = 1, Config = 2, Mesh = 3, Solver = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }

 private:
  ErrorClass cls_;
};

// geometry
struct NonAxisAligned : Error {
  explicit NonAxisAligned(const std::string& m) : Error(ErrorClass::Mesh, "NonAxisAligned: " + m) {}
};
struct OverlappingFractures : Error {
  explicit OverlappingFractures(const std::string& m) : Error(ErrorClass::Mesh, "OverlappingFractures: " + m) {}
};
struct NonConformingFracture : Error {
  explicit NonConformingFracture(const std::string& m) : Error(ErrorClass::Mesh, "NonConformingFracture: " + m) {}
};
struct UnsupportedIntersection : Error {
  explicit UnsupportedIntersection(const std::string& m) : Error(ErrorClass::Mesh, "UnsupportedIntersection: " + m) {}
};
struct DegenerateCell : Error {
  explicit DegenerateCell(const std::string& m) : Error(ErrorClass::Mesh, "DegenerateCell: " + m) {}
};

// grid graph
struct NonConsecutiveDims : Error {
  explicit NonConsecutiveDims(const std::string& m) : Error(ErrorClass::Internal, "NonConsecutiveDims: " + m) {}
};

// flow / transport
struct MissingKappa : Error {
  explicit MissingKappa(const std::string& m) : Error(ErrorClass::Config, "MissingKappa: " + m) {}
};
struct MissingFlux : Error {
  explicit MissingFlux(const std::string& m) : Error(ErrorClass::Internal, "MissingFlux: " + m) {}
};
struct NonPositiveInput : Error {
  explicit NonPositiveInput(const std::string& m) : Error(ErrorClass::Config, "NonPositiveInput: " + m) {}
};

// linalg
struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& m) : Error(ErrorClass::Internal, "IndexOutOfRange: " + m) {}
};
struct UnknownBlock : Error {
  explicit UnknownBlock(const std::string& m) : Error(ErrorClass::Internal, "UnknownBlock: " + m) {}
};
struct SingularSystem : Error {
  explicit SingularSystem(const std::string& m) : Error(ErrorClass::Solver, "SingularSystem: " + m) {}
};

// io
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error(ErrorClass::Config, "ParseError: " + m) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& m) : Error(ErrorClass::Config, "ValidationError: " + m) {}
};
struct FormatError : Error {
  explicit FormatError(const std::string& m) : Error(ErrorClass::Mesh, "FormatError: " + m) {}
};
struct NonConformingMesh : Error {
  explicit NonConformingMesh(const std::string& m) : Error(ErrorClass::Mesh, "NonConformingMesh: " + m) {}
};

enum class Scheme { Tpfa, Vem };

inline std::string to_string(Scheme s) { return s == Scheme::Tpfa ? "tpfa" : "vem"; }

}  // namespace mdflow
