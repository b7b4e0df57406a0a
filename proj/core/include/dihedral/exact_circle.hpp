#pragma once

// Exact arithmetic on the doubled circle: the circle R/Z with every point of
// Z + theta Z split into a left copy t- and a right copy t+.
//
// theta is a real quadratic irrational, so every comparison reduces to integer
// sign checks and nothing is ever rounded.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dihedral/matrix.hpp"

namespace dihedral {

/// theta = (p + q sqrt(d)) / r
struct ThetaSpec
{
  Integer p, q, d, r;

  bool operator==(ThetaSpec const &other) const = default;
};

/// a + b * theta with rational coefficients.
struct QuadExt
{
  Rational a;
  Rational b;

  QuadExt() = default;
  QuadExt(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_))
  {
    a.canonicalize();
    b.canonicalize();
  }
  static QuadExt integer(long v) { return {Rational(v), Rational(0)}; }
  static QuadExt theta_multiple(long k) { return {Rational(0), Rational(k)}; }

  QuadExt operator+(QuadExt const &o) const { return {a + o.a, b + o.b}; }
  QuadExt operator-(QuadExt const &o) const { return {a - o.a, b - o.b}; }
  QuadExt operator-() const { return {-a, -b}; }
  QuadExt scaled(Rational const &k) const { return {a * k, b * k}; }

  bool operator==(QuadExt const &o) const { return a == o.a && b == o.b; }

  /// True iff the value lies in Z + theta Z.
  bool is_lattice_point() const { return a.get_den() == 1 && b.get_den() == 1; }

  /// e.g. "(1+θ)/2", "θ/2", "1/2", "3θ-1"
  std::string to_string() const;
};

/// The real quadratic field Q(theta) with exact order.
class QuadField
{
 public:
  /// Validates d > 1 squarefree, q != 0, r != 0 and 0 < theta < 1.
  /// Normalizes the sign so that r > 0.
  explicit QuadField(ThetaSpec spec);

  /// (sqrt(5) - 1) / 2
  static QuadField golden();

  ThetaSpec const &spec() const { return spec_; }
  QuadExt theta() const { return {Rational(0), Rational(1)}; }

  int sign(QuadExt const &x) const;
  std::strong_ordering compare(QuadExt const &x, QuadExt const &y) const;

  Integer floor(QuadExt const &x) const;
  /// x - floor(x), in [0, 1)
  QuadExt frac(QuadExt const &x) const;

  QuadExt multiply(QuadExt const &x, QuadExt const &y) const;
  QuadExt inverse(QuadExt const &x) const;

  double approx(QuadExt const &x) const;

  /// Denominators q_0 = 1, q_1, ... of the continued-fraction convergents.
  std::vector<Integer> convergent_denominators(std::size_t count) const;
  /// Smallest convergent denominator strictly greater than bound.
  Integer denominator_above(QuadExt const &bound) const;

 private:
  ThetaSpec spec_;
  Rational trace_; // theta + theta'
  Rational norm_;  // theta * theta'
  long double theta_approx_;
};

/// The point m + n theta of Z + theta Z reduced into [0, 1).
/// Canonical: m = -floor(n theta), so the pair is determined by n.
struct CutPoint
{
  std::int64_t m = 0;
  std::int64_t n = 0;

  QuadExt value() const { return {Rational(m), Rational(n)}; }
  bool operator==(CutPoint const &other) const = default;
};

/// The clopen set [left+, right+): every point strictly between left and right
/// going counterclockwise, together with left+ and right-.
struct Arc
{
  CutPoint left;
  CutPoint right;

  bool operator==(Arc const &other) const = default;
};

/// Finite union of disjoint arcs in normal form: sorted by left endpoint,
/// no two arcs adjacent. The full circle carries its own flag.
class ClopenSet
{
 public:
  static ClopenSet empty() { return ClopenSet(); }
  static ClopenSet full()
  {
    ClopenSet s;
    s.full_ = true;
    return s;
  }

  bool is_empty() const { return !full_ && arcs_.empty(); }
  bool is_full() const { return full_; }
  std::vector<Arc> const &arcs() const { return arcs_; }

  bool operator==(ClopenSet const &other) const = default;

 private:
  friend class DoubledCircle;
  std::vector<Arc> arcs_;
  bool full_ = false;
};

enum class Side
{
  interior,
  minus,
  plus
};

/// A point of the doubled circle. Lattice values carry a side; other values
/// are interior.
struct CirclePoint
{
  QuadExt value;
  Side side = Side::interior;

  bool operator==(CirclePoint const &other) const = default;
};

/// Set algebra and the rotation/flip maps on the doubled circle over a field.
class DoubledCircle
{
 public:
  explicit DoubledCircle(QuadField field);

  QuadField const &field() const { return field_; }

  CutPoint cut(std::int64_t n) const;
  /// Order of cut points by value in [0, 1).
  std::strong_ordering compare(CutPoint const &a, CutPoint const &b) const;

  /// [left+, right+); left and right must differ.
  ClopenSet arc(CutPoint const &left, CutPoint const &right) const;
  ClopenSet arc(std::int64_t left_n, std::int64_t right_n) const { return arc(cut(left_n), cut(right_n)); }
  /// Union of arbitrary (possibly overlapping) arcs, in normal form.
  ClopenSet normalize(std::vector<Arc> const &arcs) const;

  ClopenSet unite(ClopenSet const &a, ClopenSet const &b) const;
  ClopenSet intersect(ClopenSet const &a, ClopenSet const &b) const;
  ClopenSet difference(ClopenSet const &a, ClopenSet const &b) const;
  ClopenSet symmetric_difference(ClopenSet const &a, ClopenSet const &b) const;
  ClopenSet complement(ClopenSet const &a) const;

  bool disjoint(ClopenSet const &a, ClopenSet const &b) const;
  bool subset(ClopenSet const &a, ClopenSet const &b) const;
  /// Pairwise disjoint with union the whole circle.
  bool is_partition(std::span<ClopenSet const> parts) const;

  /// Image under x -> x + k theta.
  ClopenSet rotate(ClopenSet const &s, std::int64_t k) const;
  /// Image under x -> -x (with t+ <-> (-t)-).
  ClopenSet flip(ClopenSet const &s) const;

  /// Total arc length, an element of Z + theta Z.
  QuadExt length(ClopenSet const &s) const;

  /// Interior point for non-lattice values; lattice values need an explicit side.
  CirclePoint point(QuadExt const &value, Side side = Side::interior) const;
  bool contains(ClopenSet const &s, CirclePoint const &x) const;
  CirclePoint rotate(CirclePoint const &x, std::int64_t k) const;
  CirclePoint flip(CirclePoint const &x) const;

 private:
  // Internal linear form: strictly increasing toggle points in [0, 1]; the
  // set is [t0, t1) u [t2, t3) u ... The value 1 is encoded as m = 1, n = 0.
  using Toggles = std::vector<CutPoint>;

  Toggles to_toggles(ClopenSet const &s) const;
  ClopenSet from_toggles(Toggles const &t) const;
  template <class Op> Toggles combine(Toggles const &a, Toggles const &b, Op op) const;

  int value_compare(CutPoint const &a, CutPoint const &b) const;

  QuadField field_;
};

} // namespace dihedral
