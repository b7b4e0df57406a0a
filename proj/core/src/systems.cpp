#include "dihedral/systems.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace dihedral {

std::string GroupElement::to_string() const
{
  return "(" + std::to_string(n) + "," + std::to_string(s) + ")";
}

IntMatrix CellPermutation::matrix() const
{
  IntMatrix m(image.size(), image.size());
  for (std::size_t j = 0; j < image.size(); ++j)
    m(image[j], j) = 1;
  return m;
}

std::size_t CellPermutation::fixed_count() const
{
  std::size_t c = 0;
  for (std::size_t j = 0; j < image.size(); ++j)
    c += image[j] == j;
  return c;
}

bool CellPermutation::is_involution() const
{
  for (std::size_t j = 0; j < image.size(); ++j)
    if (image[j] >= image.size() || image[image[j]] != j)
      return false;
  return true;
}

namespace {

template <class System, class Set>
CellPermutation permutation_of(System const &system, GroupElement const &g, std::vector<Set> const &cells)
{
  CellPermutation p;
  p.image.resize(cells.size());
  for (std::size_t j = 0; j < cells.size(); ++j) {
    Set img = system.act(g, cells[j]);
    auto it = std::find(cells.begin(), cells.end(), img);
    if (it == cells.end())
      throw VerificationFailure("cell window is not invariant under " + g.to_string());
    p.image[j] = static_cast<std::size_t>(it - cells.begin());
  }
  return p;
}

std::int64_t cap_for_length(QuadField const &field, QuadExt const &shortest)
{
  Integer q = field.denominator_above(field.inverse(shortest));
  Integer cap = 10 * q;
  if (!cap.fits_slong_p())
    throw InvalidInput("return-time bound exceeds machine range");
  return cap.get_si();
}

QuadExt shortest_arc(DoubledCircle const &circle, ClopenSet const &s, QuadExt best, bool &found)
{
  if (s.is_full()) {
    if (!found || circle.field().sign(QuadExt::integer(1) - best) < 0)
      best = QuadExt::integer(1);
    found = true;
    return best;
  }
  for (auto const &a : s.arcs()) {
    QuadExt len = circle.length(circle.arc(a.left, a.right));
    if (!found || circle.field().sign(len - best) < 0)
      best = len;
    found = true;
  }
  return best;
}

} // namespace

// --- DenjoyFlipSystem -------------------------------------------------------

DenjoyFlipSystem::DenjoyFlipSystem(QuadField field) : circle_(std::move(field)) {}

ClopenSet DenjoyFlipSystem::act(GroupElement const &g, ClopenSet const &s) const
{
  ClopenSet t = g.s ? circle_.flip(s) : s;
  return circle_.rotate(t, g.n);
}

CirclePoint DenjoyFlipSystem::act(GroupElement const &g, CirclePoint const &x) const
{
  CirclePoint y = g.s ? circle_.flip(x) : x;
  return circle_.rotate(y, g.n);
}

std::int64_t DenjoyFlipSystem::return_time_cap(ClopenSet const &y) const
{
  if (y.is_empty())
    throw InvalidInput("return_time_cap: empty set");
  bool found = false;
  QuadExt shortest = shortest_arc(circle_, y, QuadExt(), found);
  return cap_for_length(field(), shortest);
}

ClopenSet DenjoyFlipSystem::symmetric_cell(int level) const
{
  for (auto const &c : window_cells(-level, level))
    if (act(GroupElement::sigma(), c) == c && circle_.contains(c, circle_.point(QuadExt(Rational(1, 2), Rational(0)))))
      return c;
  throw VerificationFailure("symmetric_cell: no sigma-invariant cell around 1/2");
}

std::vector<QuadExt> DenjoyFlipSystem::fixed_points(GroupElement const &g) const
{
  if (g.is_identity())
    throw InvalidInput("fixed_points: the identity fixes everything");
  std::vector<QuadExt> out;
  if (g.s == 0)
    return out;
  // 2x = n theta + k for k = 0, 1
  for (int k = 0; k < 2; ++k) {
    QuadExt x = field().frac(QuadExt(Rational(k, 2), Rational(g.n, 2)));
    if (x.is_lattice_point())
      continue; // t+ and t- are swapped
    CirclePoint p = circle_.point(x);
    if (!(act(g, p) == p))
      throw VerificationFailure("fixed_points: candidate " + x.to_string() + " is not fixed");
    out.push_back(x);
  }
  std::sort(out.begin(), out.end(), [this](QuadExt const &a, QuadExt const &b) { return field().sign(a - b) < 0; });
  return out;
}

std::vector<ClopenSet> DenjoyFlipSystem::window_cells(std::int64_t lo, std::int64_t hi) const
{
  if (lo >= hi)
    return {ClopenSet::full()};
  std::vector<CutPoint> pts;
  for (std::int64_t n = lo; n <= hi; ++n)
    pts.push_back(circle_.cut(n));
  std::sort(pts.begin(), pts.end(), [this](CutPoint const &a, CutPoint const &b) { return circle_.compare(a, b) < 0; });
  std::vector<ClopenSet> cells;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    cells.push_back(circle_.arc(pts[i], pts[i + 1]));
  cells.push_back(circle_.arc(pts.back(), pts.front()));
  return cells;
}

LevelPartition<ClopenSet> DenjoyFlipSystem::level_partition(int level) const
{
  if (level < 0)
    throw InvalidInput("level_partition: negative level");
  LevelPartition<ClopenSet> lp;
  lp.level = level;
  lp.cells = window_cells(-level, level);
  lp.sigma = permutation_of(*this, GroupElement::sigma(), lp.cells);
  std::vector<ClopenSet> images;
  for (auto const &c : lp.cells)
    images.push_back(act(GroupElement::phi(), c));
  lp.phi = decompose_all(*this, images, window_cells(-level - 1, level + 1));
  lp.phi_sigma_cells = window_cells(1 - level, level);
  lp.phi_sigma = permutation_of(*this, GroupElement{1, 1}, lp.phi_sigma_cells);
  return lp;
}

IntMatrix DenjoyFlipSystem::refinement(int level) const
{
  return decompose_all(*this, window_cells(-level, level), window_cells(-level - 1, level + 1));
}

// --- DoubledSystem ----------------------------------------------------------

DoubledSystem::DoubledSystem(QuadField field) : circle_(std::move(field)) {}

SheetSet DoubledSystem::act(GroupElement const &g, SheetSet const &s) const
{
  SheetSet t = s;
  if (g.s)
    std::swap(t.sheets[0], t.sheets[1]);
  t.sheets[0] = circle_.rotate(t.sheets[0], g.n);
  t.sheets[1] = circle_.rotate(t.sheets[1], -g.n);
  return t;
}

SheetSet DoubledSystem::sheet(int i) const
{
  SheetSet s;
  s.sheets[i] = ClopenSet::full();
  return s;
}

SheetSet DoubledSystem::unite(SheetSet const &a, SheetSet const &b) const
{
  return {{circle_.unite(a.sheets[0], b.sheets[0]), circle_.unite(a.sheets[1], b.sheets[1])}};
}

SheetSet DoubledSystem::intersect(SheetSet const &a, SheetSet const &b) const
{
  return {{circle_.intersect(a.sheets[0], b.sheets[0]), circle_.intersect(a.sheets[1], b.sheets[1])}};
}

SheetSet DoubledSystem::difference(SheetSet const &a, SheetSet const &b) const
{
  return {{circle_.difference(a.sheets[0], b.sheets[0]), circle_.difference(a.sheets[1], b.sheets[1])}};
}

bool DoubledSystem::is_partition(std::span<SheetSet const> parts) const
{
  for (int i = 0; i < 2; ++i) {
    std::vector<ClopenSet> sheet_parts;
    for (auto const &p : parts)
      sheet_parts.push_back(p.sheets[i]);
    if (!circle_.is_partition(sheet_parts))
      return false;
  }
  return true;
}

QuadExt DoubledSystem::measure(SheetSet const &a) const
{
  return circle_.length(a.sheets[0]) + circle_.length(a.sheets[1]);
}

std::int64_t DoubledSystem::return_time_cap(SheetSet const &y) const
{
  if (is_empty(y))
    throw InvalidInput("return_time_cap: empty set");
  bool found = false;
  QuadExt shortest;
  for (auto const &s : y.sheets)
    shortest = shortest_arc(circle_, s, shortest, found);
  return cap_for_length(field(), shortest);
}

SheetSet DoubledSystem::symmetric_cell(int level) const
{
  ClopenSet c = DenjoyFlipSystem(field()).symmetric_cell(level);
  return {{c, c}};
}

std::vector<QuadExt> DoubledSystem::fixed_points(GroupElement const &g) const
{
  if (g.is_identity())
    throw InvalidInput("fixed_points: the identity fixes everything");
  return {};
}

bool DoubledSystem::splitting_holds() const
{
  SheetSet y = sheet(0);
  SheetSet sy = act(GroupElement::sigma(), y);
  return act(GroupElement::phi(), y) == y && is_empty(intersect(y, sy)) && unite(y, sy) == full();
}

// --- OdometerSystem ---------------------------------------------------------

namespace {

std::int64_t mod(Integer const &x, std::int64_t n)
{
  Integer r = x % n;
  if (r < 0)
    r += n;
  return r.get_si();
}

} // namespace

OdometerSystem::OdometerSystem(std::vector<Integer> chain) : chain_(std::move(chain))
{
  if (chain_.empty())
    throw InvalidInput("odometer: empty chain");
  if (chain_[0] < 2)
    throw InvalidInput("odometer: n_1 must be at least 2");
  for (std::size_t i = 1; i < chain_.size(); ++i) {
    if (chain_[i] <= chain_[i - 1])
      throw InvalidInput("odometer: chain must be strictly increasing");
    if (chain_[i] % chain_[i - 1] != 0)
      throw InvalidInput("odometer: each n_i must divide n_{i+1}");
  }
}

Integer const &OdometerSystem::modulus(int level) const
{
  if (level < 1 || level > levels())
    throw InvalidInput("odometer: level " + std::to_string(level) + " outside the chain");
  return chain_[level - 1];
}

std::int64_t OdometerSystem::small_modulus(int level) const
{
  Integer const &n = modulus(level);
  if (n > (Integer(1) << 40))
    throw InvalidInput("odometer: level too large to enumerate");
  return n.get_si();
}

Integer OdometerSystem::apply(GroupElement const &g, Integer const &x, int level) const
{
  Integer const &n = modulus(level);
  Integer y = Integer(g.n) + (g.s ? Integer(-x) : x);
  Integer r = y % n;
  if (r < 0)
    r += n;
  return r;
}

OdometerSet OdometerSystem::act(GroupElement const &g, OdometerSet const &s) const
{
  std::int64_t n = small_modulus(s.level);
  OdometerSet out{s.level, {}};
  out.residues.reserve(s.residues.size());
  for (auto r : s.residues)
    out.residues.push_back(mod(Integer(g.n) + (g.s ? -r : r), n));
  std::sort(out.residues.begin(), out.residues.end());
  return out;
}

OdometerSet OdometerSystem::full(int level) const
{
  std::int64_t n = small_modulus(level);
  OdometerSet s{level, {}};
  s.residues.resize(static_cast<std::size_t>(n));
  for (std::int64_t r = 0; r < n; ++r)
    s.residues[r] = r;
  return s;
}

OdometerSet OdometerSystem::lift(OdometerSet const &s, int level) const
{
  if (level < s.level)
    throw InvalidInput("odometer: cannot lift to a coarser level");
  if (level == s.level)
    return s;
  std::int64_t from = small_modulus(s.level), to = small_modulus(level);
  OdometerSet out{level, {}};
  for (std::int64_t k = 0; k < to / from; ++k)
    for (auto r : s.residues)
      out.residues.push_back(r + k * from);
  std::sort(out.residues.begin(), out.residues.end());
  return out;
}

OdometerSet OdometerSystem::unite(OdometerSet const &a, OdometerSet const &b) const
{
  int level = std::max(a.level, b.level);
  auto x = lift(a, level), y = lift(b, level);
  OdometerSet out{level, {}};
  std::set_union(x.residues.begin(), x.residues.end(), y.residues.begin(), y.residues.end(),
                 std::back_inserter(out.residues));
  return out;
}

OdometerSet OdometerSystem::intersect(OdometerSet const &a, OdometerSet const &b) const
{
  int level = std::max(a.level, b.level);
  auto x = lift(a, level), y = lift(b, level);
  OdometerSet out{level, {}};
  std::set_intersection(x.residues.begin(), x.residues.end(), y.residues.begin(), y.residues.end(),
                        std::back_inserter(out.residues));
  return out;
}

OdometerSet OdometerSystem::difference(OdometerSet const &a, OdometerSet const &b) const
{
  int level = std::max(a.level, b.level);
  auto x = lift(a, level), y = lift(b, level);
  OdometerSet out{level, {}};
  std::set_difference(x.residues.begin(), x.residues.end(), y.residues.begin(), y.residues.end(),
                      std::back_inserter(out.residues));
  return out;
}

bool OdometerSystem::is_partition(std::span<OdometerSet const> parts) const
{
  if (parts.empty())
    return false;
  int level = 1;
  for (auto const &p : parts)
    level = std::max(level, p.level);
  std::vector<int> hits(static_cast<std::size_t>(small_modulus(level)), 0);
  for (auto const &p : parts)
    for (auto r : lift(p, level).residues)
      if (++hits[r] > 1)
        return false;
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

Rational OdometerSystem::fixed_fraction(GroupElement const &g, int level) const
{
  Integer const &n = modulus(level);
  Rational f;
  if (g.s == 0) {
    f = Integer(g.n) % n == 0 ? Rational(1) : Rational(0);
  } else {
    Integer d = gcd(Integer(2), n);
    f = Integer(g.n) % d == 0 ? Rational(d, n) : Rational(0);
  }
  f.canonicalize();
  return f;
}

Rational OdometerSystem::fixed_fraction_by_enumeration(GroupElement const &g, int level) const
{
  std::int64_t n = small_modulus(level);
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < n; ++x)
    count += apply(g, Integer(x), level) == x;
  Rational f(count, n);
  f.canonicalize();
  return f;
}

StableCount OdometerSystem::stable_fixed_count(GroupElement const &g, int max_level) const
{
  if (g.is_identity())
    throw InvalidInput("stable_fixed_count: the identity fixes everything");
  if (max_level < 2 || max_level > levels())
    throw InvalidInput("stable_fixed_count: max level must lie in [2, chain length]");
  Integer const &top = modulus(max_level);
  Integer k(g.n);

  StableCount sc;
  if (g.s == 0) {
    bool all = k % top == 0;
    for (int i = 1; i < max_level; ++i)
      sc.per_level.push_back(all ? small_modulus(i) : 0);
  } else {
    // 2x = k mod top: gcd(2, top) solutions or none
    std::vector<Integer> top_fixed;
    Integer d = gcd(Integer(2), top);
    if (k % d == 0) {
      Integer m = top / d;
      Integer x0;
      if (d == 1) {
        Integer inv2;
        mpz_invert(inv2.get_mpz_t(), Integer(2).get_mpz_t(), top.get_mpz_t());
        x0 = (k * inv2) % top;
      } else {
        x0 = (k / 2) % m;
      }
      if (x0 < 0)
        x0 += m;
      for (Integer t = 0; t < d; ++t)
        top_fixed.push_back(x0 + t * m);
    }
    for (int i = 1; i < max_level; ++i) {
      std::set<Integer> image;
      for (auto const &x : top_fixed)
        image.insert(Integer(x % modulus(i)));
      sc.per_level.push_back(static_cast<std::int64_t>(image.size()));
    }
  }

  // the tail must be constant over at least two observed levels
  std::size_t last = sc.per_level.size() - 1;
  std::size_t start = last;
  while (start > 0 && sc.per_level[start - 1] == sc.per_level[last])
    --start;
  sc.count = sc.per_level[last];
  sc.stabilized = last - start + 1 >= 2;
  sc.stabilized_at = static_cast<int>(start) + 1;
  return sc;
}

bool OdometerSystem::coset_bijection(int level) const
{
  std::int64_t n = small_modulus(level);
  for (std::int64_t a = -n; a < 2 * n; ++a)
    for (int s = 0; s < 2; ++s)
      for (std::int64_t b = -n; b < 2 * n; ++b)
        for (int t = 0; t < 2; ++t) {
          GroupElement q = GroupElement{a, s}.inverse() * GroupElement{b, t};
          bool same_coset = q.n % n == 0;
          bool same_residue = mod(Integer(a - b), n) == 0;
          if (same_coset != same_residue)
            return false;
        }
  return true;
}

bool OdometerSystem::projection_equivariant(int level) const
{
  std::int64_t fine = small_modulus(level + 1);
  Integer const &coarse = modulus(level);
  for (GroupElement g : {GroupElement::phi(), GroupElement::sigma()})
    for (std::int64_t x = 0; x < fine; ++x) {
      Integer up = apply(g, Integer(x), level + 1) % coarse;
      Integer down = apply(g, Integer(x) % coarse, level);
      if (up != down)
        return false;
    }
  return true;
}

TopFreenessReport OdometerSystem::top_freeness(int max_level) const
{
  if (levels() < 2)
    throw InvalidInput("top_freeness: need a proper chain");
  if (max_level < 1 || max_level > levels())
    throw InvalidInput("top_freeness: max level outside the chain");
  // strictly increasing divisibility chains have trivial intersection of the
  // n_i Z, so the intersection of the Gamma_i is {e, sigma}
  GroupElement const gamma = GroupElement::sigma();
  TopFreenessReport report;
  report.free = true;
  for (int j = 1; j <= max_level; ++j) {
    Integer const &nj = modulus(j);
    if (nj > Integer(std::numeric_limits<std::int64_t>::max() / 8))
      throw InvalidInput("top_freeness: modulus exceeds machine range");
    bool found = false;
    for (std::int64_t m = 1; m <= 2 && !found; ++m)
      for (int t = 0; t < 2 && !found; ++t) {
        GroupElement b{m * nj.get_si(), t};
        GroupElement c = b.inverse() * gamma * b;
        if (c.n != 0) {
          report.witnesses.push_back({j, b, c});
          found = true;
        }
      }
    report.free = report.free && found;
  }
  return report;
}

LevelPartition<OdometerSet> OdometerSystem::level_partition(int level) const
{
  if (level >= levels())
    throw InvalidInput("level_partition: need a finer level above " + std::to_string(level));
  std::int64_t n = small_modulus(level);
  LevelPartition<OdometerSet> lp;
  lp.level = level;
  for (std::int64_t r = 0; r < n; ++r)
    lp.cells.push_back(OdometerSet{level, {r}});
  lp.sigma = permutation_of(*this, GroupElement::sigma(), lp.cells);
  std::vector<OdometerSet> next;
  for (std::int64_t r = 0; r < small_modulus(level + 1); ++r)
    next.push_back(OdometerSet{level + 1, {r}});
  std::vector<OdometerSet> images;
  for (auto const &c : lp.cells)
    images.push_back(act(GroupElement::phi(), c));
  lp.phi = decompose_all(*this, images, next);
  lp.phi_sigma_cells = lp.cells;
  lp.phi_sigma = permutation_of(*this, GroupElement{1, 1}, lp.cells);
  return lp;
}

IntMatrix OdometerSystem::refinement(int level) const
{
  std::int64_t n = small_modulus(level), fine = small_modulus(level + 1);
  IntMatrix m(static_cast<std::size_t>(fine), static_cast<std::size_t>(n));
  for (std::int64_t x = 0; x < fine; ++x)
    m(x, x % n) = 1;
  return m;
}

std::vector<Integer> geometric_chain(Integer const &base, int levels)
{
  if (base < 2 || levels < 1)
    throw InvalidInput("geometric chain: base >= 2 and levels >= 1 required");
  std::vector<Integer> chain;
  Integer v = 1;
  for (int i = 0; i < levels; ++i) {
    v *= base;
    chain.push_back(v);
  }
  return chain;
}

} // namespace dihedral
