#include "dihedral/exact_circle.hpp"

#include <algorithm>
#include <cmath>

#include "dihedral/errors.hpp"

namespace dihedral {

std::string QuadExt::to_string() const
{
  Integer den = lcm(a.get_den(), b.get_den());
  Rational ra = a * den, rb = b * den;
  Integer na = ra.get_num(), nb = rb.get_num();

  std::string num;
  int terms = 0;
  if (na != 0) {
    num = na.get_str();
    ++terms;
  }
  if (nb != 0) {
    std::string coeff;
    if (nb == 1)
      coeff = "";
    else if (nb == -1)
      coeff = "-";
    else
      coeff = nb.get_str();
    std::string term = coeff + "θ";
    if (terms > 0 && nb > 0)
      num += "+";
    num += term;
    ++terms;
  }
  if (terms == 0)
    return "0";
  if (den == 1)
    return num;
  if (terms > 1)
    return "(" + num + ")/" + den.get_str();
  return num + "/" + den.get_str();
}

// --- QuadField ------------------------------------------------------------

namespace {

bool squarefree(Integer d)
{
  for (Integer k = 2; k * k <= d; ++k)
    if (mpz_divisible_p(d.get_mpz_t(), Integer(k * k).get_mpz_t()))
      return false;
  return true;
}

} // namespace

QuadField::QuadField(ThetaSpec spec) : spec_(std::move(spec))
{
  if (spec_.d <= 1 || mpz_perfect_square_p(spec_.d.get_mpz_t()) || !squarefree(spec_.d))
    throw InvalidInput("theta: d must be a squarefree integer greater than 1");
  if (spec_.q == 0 || spec_.r == 0)
    throw InvalidInput("theta: q and r must be nonzero");
  if (spec_.r < 0) {
    spec_.p = -spec_.p;
    spec_.q = -spec_.q;
    spec_.r = -spec_.r;
  }
  trace_ = Rational(2 * spec_.p, spec_.r);
  trace_.canonicalize();
  norm_ = Rational(spec_.p * spec_.p - spec_.q * spec_.q * spec_.d, spec_.r * spec_.r);
  norm_.canonicalize();
  theta_approx_ = (static_cast<long double>(spec_.p.get_d()) +
                   static_cast<long double>(spec_.q.get_d()) * std::sqrt(static_cast<long double>(spec_.d.get_d()))) /
                  static_cast<long double>(spec_.r.get_d());
  if (sign(theta()) <= 0 || sign(QuadExt::integer(1) - theta()) <= 0)
    throw InvalidInput("theta: value must lie strictly between 0 and 1");
}

QuadField QuadField::golden()
{
  return QuadField(ThetaSpec{Integer(-1), Integer(1), Integer(5), Integer(2)});
}

int QuadField::sign(QuadExt const &x) const
{
  // x = (a r + b p + b q sqrt d) / r with r > 0
  Rational u = x.a * spec_.r + x.b * spec_.p;
  Rational v = x.b * spec_.q;
  int su = sgn(u), sv = sgn(v);
  if (sv == 0)
    return su;
  if (su == 0 || su == sv)
    return sv;
  Rational lhs = u * u;
  Rational rhs = v * v * spec_.d;
  return cmp(lhs, rhs) > 0 ? su : sv;
}

std::strong_ordering QuadField::compare(QuadExt const &x, QuadExt const &y) const
{
  int s = sign(x - y);
  if (s < 0)
    return std::strong_ordering::less;
  if (s > 0)
    return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double QuadField::approx(QuadExt const &x) const
{
  return static_cast<double>(static_cast<long double>(x.a.get_d()) +
                             static_cast<long double>(x.b.get_d()) * theta_approx_);
}

Integer QuadField::floor(QuadExt const &x) const
{
  long double guess = static_cast<long double>(x.a.get_d()) + static_cast<long double>(x.b.get_d()) * theta_approx_;
  Integer k(std::floor(static_cast<double>(guess)));
  while (sign(x - QuadExt(Rational(k), Rational(0))) < 0)
    --k;
  while (sign(x - QuadExt(Rational(k + 1), Rational(0))) >= 0)
    ++k;
  return k;
}

QuadExt QuadField::frac(QuadExt const &x) const
{
  return x - QuadExt(Rational(floor(x)), Rational(0));
}

QuadExt QuadField::multiply(QuadExt const &x, QuadExt const &y) const
{
  // theta^2 = trace * theta - norm
  Rational bb = x.b * y.b;
  return {x.a * y.a - bb * norm_, x.a * y.b + x.b * y.a + bb * trace_};
}

QuadExt QuadField::inverse(QuadExt const &x) const
{
  // conjugate of a + b theta is (a + b trace) - b theta
  Rational n = x.a * x.a + x.a * x.b * trace_ + x.b * x.b * norm_;
  if (n == 0)
    throw InvalidInput("QuadField::inverse: zero element");
  return {(x.a + x.b * trace_) / n, -x.b / n};
}

std::vector<Integer> QuadField::convergent_denominators(std::size_t count) const
{
  std::vector<Integer> qs;
  Integer q_prev = 0, q = 1;
  QuadExt x = theta();
  // theta in (0, 1): a_0 = 0 and q_0 = 1
  x = inverse(frac(x));
  qs.push_back(q);
  while (qs.size() < count) {
    Integer a = floor(x);
    Integer next = a * q + q_prev;
    q_prev = q;
    q = next;
    qs.push_back(q);
    x = inverse(x - QuadExt(Rational(a), Rational(0)));
  }
  return qs;
}

Integer QuadField::denominator_above(QuadExt const &bound) const
{
  Integer q_prev = 0, q = 1;
  QuadExt x = inverse(frac(theta()));
  while (sign(QuadExt(Rational(q), Rational(0)) - bound) <= 0) {
    Integer a = floor(x);
    Integer next = a * q + q_prev;
    q_prev = q;
    q = next;
    x = inverse(x - QuadExt(Rational(a), Rational(0)));
  }
  return q;
}

// --- DoubledCircle --------------------------------------------------------

namespace {

CutPoint const kOne{1, 0};

} // namespace

DoubledCircle::DoubledCircle(QuadField field) : field_(std::move(field)) {}

CutPoint DoubledCircle::cut(std::int64_t n) const
{
  Integer fl = field_.floor(QuadExt::theta_multiple(n));
  return CutPoint{-fl.get_si(), n};
}

int DoubledCircle::value_compare(CutPoint const &a, CutPoint const &b) const
{
  if (a == b)
    return 0;
  return field_.sign(QuadExt(Rational(a.m - b.m), Rational(a.n - b.n)));
}

std::strong_ordering DoubledCircle::compare(CutPoint const &a, CutPoint const &b) const
{
  int s = value_compare(a, b);
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

DoubledCircle::Toggles DoubledCircle::to_toggles(ClopenSet const &s) const
{
  if (s.full_)
    return {CutPoint{0, 0}, kOne};
  std::vector<std::pair<CutPoint, CutPoint>> pieces;
  CutPoint const zero{0, 0};
  for (auto const &arc : s.arcs_) {
    if (value_compare(arc.left, arc.right) < 0) {
      pieces.emplace_back(arc.left, arc.right);
    } else {
      if (!(arc.right == zero))
        pieces.emplace_back(zero, arc.right);
      pieces.emplace_back(arc.left, kOne);
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [this](auto const &x, auto const &y) { return value_compare(x.first, y.first) < 0; });
  Toggles t;
  for (auto const &[l, r] : pieces) {
    if (!t.empty() && t.back() == l)
      t.back() = r; // adjacent pieces merge
    else {
      t.push_back(l);
      t.push_back(r);
    }
  }
  return t;
}

ClopenSet DoubledCircle::from_toggles(Toggles const &t) const
{
  ClopenSet out;
  if (t.empty())
    return out;
  CutPoint const zero{0, 0};
  if (t.size() == 2 && t[0] == zero && t[1] == kOne)
    return ClopenSet::full();
  std::size_t begin = 0, end = t.size();
  bool wraps = t.front() == zero && t.back() == kOne;
  if (wraps) {
    begin = 2;
    end = t.size() - 2;
  }
  for (std::size_t i = begin; i + 1 < end; i += 2) {
    CutPoint right = t[i + 1] == kOne ? zero : t[i + 1];
    out.arcs_.push_back(Arc{t[i], right});
  }
  if (wraps)
    out.arcs_.push_back(Arc{t[t.size() - 2], t[1]});
  return out;
}

template <class Op>
DoubledCircle::Toggles DoubledCircle::combine(Toggles const &a, Toggles const &b, Op op) const
{
  Toggles out;
  bool in_a = false, in_b = false;
  bool current = op(false, false);
  if (current)
    out.push_back(CutPoint{0, 0});
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    CutPoint at;
    if (j == b.size() || (i < a.size() && value_compare(a[i], b[j]) < 0)) {
      at = a[i++];
      in_a = !in_a;
    } else if (i == a.size() || value_compare(b[j], a[i]) < 0) {
      at = b[j++];
      in_b = !in_b;
    } else {
      at = a[i];
      ++i;
      ++j;
      in_a = !in_a;
      in_b = !in_b;
    }
    bool next = op(in_a, in_b);
    if (next != current) {
      if (!out.empty() && out.back() == at)
        out.pop_back();
      else
        out.push_back(at);
      current = next;
    }
  }
  if (current) {
    if (!out.empty() && out.back() == kOne)
      out.pop_back();
    else
      out.push_back(kOne);
  }
  return out;
}

ClopenSet DoubledCircle::arc(CutPoint const &left, CutPoint const &right) const
{
  if (left == right)
    throw InvalidInput("arc: endpoints must differ");
  return normalize({Arc{left, right}});
}

ClopenSet DoubledCircle::normalize(std::vector<Arc> const &arcs) const
{
  Toggles acc;
  for (auto const &a : arcs) {
    if (a.left == a.right)
      throw InvalidInput("arc: endpoints must differ");
    ClopenSet single;
    single.arcs_.push_back(a);
    acc = combine(acc, to_toggles(single), [](bool x, bool y) { return x || y; });
  }
  return from_toggles(acc);
}

ClopenSet DoubledCircle::unite(ClopenSet const &a, ClopenSet const &b) const
{
  return from_toggles(combine(to_toggles(a), to_toggles(b), [](bool x, bool y) { return x || y; }));
}

ClopenSet DoubledCircle::intersect(ClopenSet const &a, ClopenSet const &b) const
{
  return from_toggles(combine(to_toggles(a), to_toggles(b), [](bool x, bool y) { return x && y; }));
}

ClopenSet DoubledCircle::difference(ClopenSet const &a, ClopenSet const &b) const
{
  return from_toggles(combine(to_toggles(a), to_toggles(b), [](bool x, bool y) { return x && !y; }));
}

ClopenSet DoubledCircle::symmetric_difference(ClopenSet const &a, ClopenSet const &b) const
{
  return from_toggles(combine(to_toggles(a), to_toggles(b), [](bool x, bool y) { return x != y; }));
}

ClopenSet DoubledCircle::complement(ClopenSet const &a) const
{
  return from_toggles(combine(to_toggles(a), Toggles{}, [](bool x, bool) { return !x; }));
}

bool DoubledCircle::disjoint(ClopenSet const &a, ClopenSet const &b) const
{
  return intersect(a, b).is_empty();
}

bool DoubledCircle::subset(ClopenSet const &a, ClopenSet const &b) const
{
  return difference(a, b).is_empty();
}

bool DoubledCircle::is_partition(std::span<ClopenSet const> parts) const
{
  ClopenSet acc;
  for (auto const &p : parts) {
    if (!disjoint(acc, p))
      return false;
    acc = unite(acc, p);
  }
  return acc.is_full();
}

ClopenSet DoubledCircle::rotate(ClopenSet const &s, std::int64_t k) const
{
  if (s.full_ || s.arcs_.empty() || k == 0)
    return s;
  std::vector<Arc> arcs;
  arcs.reserve(s.arcs_.size());
  for (auto const &a : s.arcs_)
    arcs.push_back(Arc{cut(a.left.n + k), cut(a.right.n + k)});
  return normalize(arcs);
}

ClopenSet DoubledCircle::flip(ClopenSet const &s) const
{
  if (s.full_ || s.arcs_.empty())
    return s;
  std::vector<Arc> arcs;
  arcs.reserve(s.arcs_.size());
  for (auto const &a : s.arcs_)
    arcs.push_back(Arc{cut(-a.right.n), cut(-a.left.n)});
  return normalize(arcs);
}

QuadExt DoubledCircle::length(ClopenSet const &s) const
{
  if (s.full_)
    return QuadExt::integer(1);
  QuadExt total;
  for (auto const &a : s.arcs_) {
    QuadExt d = a.right.value() - a.left.value();
    if (value_compare(a.left, a.right) > 0)
      d = d + QuadExt::integer(1);
    total = total + d;
  }
  return total;
}

CirclePoint DoubledCircle::point(QuadExt const &value, Side side) const
{
  QuadExt v = field_.frac(value);
  if (v.is_lattice_point() == (side == Side::interior))
    throw InvalidInput("point: lattice values need a side and only lattice values may carry one");
  return CirclePoint{v, side};
}

bool DoubledCircle::contains(ClopenSet const &s, CirclePoint const &x) const
{
  if (s.full_)
    return true;
  for (auto const &a : s.arcs_) {
    int xl = field_.sign(x.value - a.left.value());
    int xr = field_.sign(x.value - a.right.value());
    bool wraps = value_compare(a.left, a.right) > 0;
    bool in = false;
    switch (x.side) {
    case Side::interior:
      in = wraps ? (xl > 0 || xr < 0) : (xl > 0 && xr < 0);
      break;
    case Side::plus:
      in = wraps ? (xl >= 0 || xr < 0) : (xl >= 0 && xr < 0);
      break;
    case Side::minus:
      in = wraps ? (xl > 0 || xr <= 0) : (xl > 0 && xr <= 0);
      break;
    }
    if (in)
      return true;
  }
  return false;
}

CirclePoint DoubledCircle::rotate(CirclePoint const &x, std::int64_t k) const
{
  return CirclePoint{field_.frac(x.value + QuadExt::theta_multiple(k)), x.side};
}

CirclePoint DoubledCircle::flip(CirclePoint const &x) const
{
  Side side = x.side == Side::plus ? Side::minus : x.side == Side::minus ? Side::plus : Side::interior;
  return CirclePoint{field_.frac(-x.value), side};
}

} // namespace dihedral
