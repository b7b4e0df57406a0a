#include "dihedral/json_io.hpp"

#include <algorithm>
#include <regex>

namespace dihedral {

void require_keys(Json const &j, std::vector<std::string> const &required, std::vector<std::string> const &optional,
                  std::string const &what)
{
  if (!j.is_object())
    throw InvalidInput(what + ": expected a JSON object");
  for (auto const &k : required)
    if (!j.contains(k))
      throw InvalidInput(what + ": missing field \"" + k + "\"");
  for (auto const &[key, value] : j.items()) {
    bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                 std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known)
      throw InvalidInput(what + ": unknown field \"" + key + "\"");
  }
}

namespace {

Json integer_json(Integer const &v)
{
  if (v.fits_slong_p())
    return Json(v.get_si());
  return Json(v.get_str());
}

std::int64_t machine_integer(Json const &j, std::string const &what)
{
  Integer v = parse_integer(j, what);
  if (!v.fits_slong_p())
    throw InvalidInput(what + ": out of machine range");
  return v.get_si();
}

} // namespace

Integer parse_integer(Json const &j, std::string const &what)
{
  if (j.is_number_integer())
    return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>())) : Integer(j.get<long>());
  if (j.is_string()) {
    static std::regex const digits("-?[0-9]+");
    auto s = j.get<std::string>();
    if (std::regex_match(s, digits))
      return Integer(s);
  }
  throw InvalidInput(what + ": expected an integer");
}

Rational parse_rational(std::string const &text)
{
  static std::regex const form("\\s*(-?[0-9]+)(?:/([0-9]+))?\\s*");
  std::smatch m;
  if (!std::regex_match(text, m, form))
    throw InvalidInput("rational: expected P/Q, got \"" + text + "\"");
  Integer num(m[1].str());
  Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
  if (den == 0)
    throw InvalidInput("rational: zero denominator in \"" + text + "\"");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(Rational const &r)
{
  return r.get_str();
}

// --- circle data ------------------------------------------------------------

ThetaSpec parse_theta(Json const &j)
{
  require_keys(j, {"p", "q", "d", "r"}, {}, "theta");
  return {parse_integer(j.at("p"), "theta.p"), parse_integer(j.at("q"), "theta.q"), parse_integer(j.at("d"), "theta.d"),
          parse_integer(j.at("r"), "theta.r")};
}

Json to_json(ThetaSpec const &t)
{
  return Json{{"p", integer_json(t.p)}, {"q", integer_json(t.q)}, {"d", integer_json(t.d)}, {"r", integer_json(t.r)}};
}

CutPoint parse_cut(DoubledCircle const &circle, Json const &j)
{
  require_keys(j, {"m", "n"}, {}, "cut point");
  CutPoint c{machine_integer(j.at("m"), "cut.m"), machine_integer(j.at("n"), "cut.n")};
  if (!(circle.cut(c.n) == c))
    throw InvalidInput("cut point: m must equal -floor(n theta) for n = " + std::to_string(c.n));
  return c;
}

Json to_json(CutPoint const &c)
{
  return Json{{"m", c.m}, {"n", c.n}};
}

GroupElement parse_element(Json const &j)
{
  if (!j.is_array() || j.size() != 2)
    throw InvalidInput("group element: expected [n, s]");
  GroupElement g{machine_integer(j[0], "group element n"), 0};
  auto s = machine_integer(j[1], "group element s");
  if (s != 0 && s != 1)
    throw InvalidInput("group element: s must be 0 or 1");
  g.s = static_cast<int>(s);
  return g;
}

Json to_json(GroupElement const &g)
{
  return Json::array({g.n, g.s});
}

std::vector<GroupElement> parse_elements(Json const &j)
{
  if (!j.is_array())
    throw InvalidInput("element list: expected an array of [n, s] pairs");
  std::vector<GroupElement> out;
  for (auto const &e : j)
    out.push_back(parse_element(e));
  return out;
}

// --- sets ---------------------------------------------------------------------

namespace {

ClopenSet parse_clopen(DoubledCircle const &circle, Json const &j)
{
  require_keys(j, {"arcs"}, {"full"}, "clopen set");
  bool full = false;
  if (j.contains("full")) {
    if (!j.at("full").is_boolean())
      throw InvalidInput("clopen set: full must be a boolean");
    full = j.at("full").get<bool>();
  }
  if (!j.at("arcs").is_array())
    throw InvalidInput("clopen set: arcs must be an array");
  if (full) {
    if (!j.at("arcs").empty())
      throw InvalidInput("clopen set: the full circle carries no arcs");
    return ClopenSet::full();
  }
  std::vector<Arc> arcs;
  for (auto const &a : j.at("arcs")) {
    require_keys(a, {"left", "right"}, {}, "arc");
    Arc arc{parse_cut(circle, a.at("left")), parse_cut(circle, a.at("right"))};
    if (arc.left == arc.right)
      throw InvalidInput("arc: endpoints must differ");
    arcs.push_back(arc);
  }
  return circle.normalize(arcs);
}

} // namespace

ClopenSet parse_set(DenjoyFlipSystem const &system, Json const &j)
{
  return parse_clopen(system.circle(), j);
}

SheetSet parse_set(DoubledSystem const &system, Json const &j)
{
  require_keys(j, {"sheets"}, {}, "sheet set");
  if (!j.at("sheets").is_array() || j.at("sheets").size() != 2)
    throw InvalidInput("sheet set: expected two sheets");
  return {{parse_clopen(system.circle(), j.at("sheets")[0]), parse_clopen(system.circle(), j.at("sheets")[1])}};
}

OdometerSet parse_set(OdometerSystem const &system, Json const &j)
{
  require_keys(j, {"level", "residues"}, {}, "odometer set");
  auto level = machine_integer(j.at("level"), "odometer set level");
  if (level < 1 || level > system.levels())
    throw InvalidInput("odometer set: level outside the chain");
  OdometerSet s;
  s.level = static_cast<int>(level);
  if (!j.at("residues").is_array())
    throw InvalidInput("odometer set: residues must be an array");
  Integer n = system.modulus(s.level);
  for (auto const &r : j.at("residues")) {
    auto v = machine_integer(r, "residue");
    if (v < 0 || Integer(v) >= n)
      throw InvalidInput("odometer set: residue " + std::to_string(v) + " outside [0, n)");
    s.residues.push_back(v);
  }
  std::sort(s.residues.begin(), s.residues.end());
  if (std::adjacent_find(s.residues.begin(), s.residues.end()) != s.residues.end())
    throw InvalidInput("odometer set: repeated residue");
  return s;
}

Json to_json(ClopenSet const &s)
{
  Json arcs = Json::array();
  for (auto const &a : s.arcs())
    arcs.push_back(Json{{"left", to_json(a.left)}, {"right", to_json(a.right)}});
  return Json{{"full", s.is_full()}, {"arcs", arcs}};
}

Json to_json(SheetSet const &s)
{
  return Json{{"sheets", Json::array({to_json(s.sheets[0]), to_json(s.sheets[1])})}};
}

Json to_json(OdometerSet const &s)
{
  return Json{{"level", s.level}, {"residues", s.residues}};
}

Json to_json(CastleReport const &r)
{
  return Json{{"disjoint", r.disjoint}, {"covers", r.covers}, {"sigma_compatible", r.sigma_compatible}};
}

// --- systems --------------------------------------------------------------------

namespace {

std::vector<Integer> parse_chain(Json const &j)
{
  if (j.is_array()) {
    std::vector<Integer> chain;
    for (auto const &n : j)
      chain.push_back(parse_integer(n, "chain entry"));
    return chain;
  }
  require_keys(j, {"base", "growth", "levels"}, {}, "chain");
  if (j.at("growth") != "geometric")
    throw InvalidInput("chain: only geometric growth is supported");
  auto levels = machine_integer(j.at("levels"), "chain levels");
  if (levels < 1 || levels > 4096)
    throw InvalidInput("chain: levels must lie in [1, 4096]");
  return geometric_chain(parse_integer(j.at("base"), "chain base"), static_cast<int>(levels));
}

} // namespace

AnySystem parse_system(Json const &j)
{
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw InvalidInput("system: missing string field \"type\"");
  auto type = j.at("type").get<std::string>();
  if (type == "denjoy_flip") {
    require_keys(j, {"type", "theta"}, {}, "denjoy_flip system");
    return DenjoyFlipSystem(QuadField(parse_theta(j.at("theta"))));
  }
  if (type == "doubled") {
    require_keys(j, {"type", "theta"}, {}, "doubled system");
    return DoubledSystem(QuadField(parse_theta(j.at("theta"))));
  }
  if (type == "odometer") {
    require_keys(j, {"type", "chain"}, {}, "odometer system");
    return OdometerSystem(parse_chain(j.at("chain")));
  }
  throw InvalidInput("system: unknown type \"" + type + "\"");
}

Json to_json(AnySystem const &system)
{
  return std::visit(
      [](auto const &s) -> Json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, OdometerSystem>) {
          Json chain = Json::array();
          for (auto const &n : s.chain())
            chain.push_back(integer_json(n));
          return Json{{"type", "odometer"}, {"chain", chain}};
        } else {
          return Json{{"type", std::is_same_v<S, DenjoyFlipSystem> ? "denjoy_flip" : "doubled"},
                      {"theta", to_json(s.field().spec())}};
        }
      },
      system);
}

// --- groups and tables ------------------------------------------------------------

Json to_json(FGAbGroup const &g)
{
  Json torsion = Json::array();
  for (auto const &t : g.torsion())
    torsion.push_back(integer_json(t));
  return Json{{"rank", g.rank()}, {"torsion", torsion}};
}

Json to_json(HomologyGroup const &g)
{
  Json out = to_json(g.group);
  if (g.localization)
    out["localization"] = g.localization->descriptor();
  return out;
}

Json to_json(LimitDescriptor const &d)
{
  Json out{{"kind", to_string(d.kind)}, {"level", d.level}};
  if (d.kind == LimitKind::stabilized)
    out["group"] = to_json(d.group);
  if (d.localization) {
    out["localization"] = d.localization->descriptor();
    out["describe"] = d.localization->describe();
  }
  return out;
}

std::string case_name(CompCase c)
{
  switch (c) {
  case CompCase::splitting:
    return "i";
  case CompCase::free_minimal:
    return "ii";
  case CompCase::fixed_points:
    return "iii";
  }
  return "?";
}

Json to_json(HomologyTable const &t)
{
  Json out;
  for (std::size_t n = 0; n < t.degrees.size(); ++n)
    out["H" + std::to_string(n)] = to_json(t.degrees[n]);
  out["tail"] = Json{{"odd", to_json(t.tail_odd)}, {"even", to_json(t.tail_even)}, {"from", t.tail_from}};
  return out;
}

namespace {

Json matrix_json(IntMatrix const &m)
{
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(integer_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json threads_json(StableCount const &c)
{
  return Json{{"count", c.count}, {"stabilizedAt", c.stabilized_at}, {"perLevel", c.per_level}};
}

} // namespace

Json to_json(SystemHomology const &h)
{
  Json out = to_json(h.table);
  Json prov;
  prov["system"] = h.system;
  prov["case"] = case_name(h.table.which);
  prov["max_level"] = h.max_level;
  prov["phi_minimal"] = h.evidence.phi_minimal;
  prov["splitting"] = h.evidence.splitting;
  prov["fixed_points"] = Json{{"(0,1)", h.evidence.fix_sigma}, {"(1,1)", h.evidence.fix_phi_sigma}};
  if (h.sigma_threads && h.phi_sigma_threads)
    prov["threads"] = Json{{"(0,1)", threads_json(*h.sigma_threads)}, {"(1,1)", threads_json(*h.phi_sigma_threads)}};
  if (h.telescope) {
    auto const &t = *h.telescope;
    Json tel{{"limit", to_json(t.limit)}, {"h0", to_json(t.h0)}, {"image", to_json(t.image)}};
    if (t.sigma_star)
      tel["sigma_star"] = matrix_json(*t.sigma_star);
    if (t.sigma_scalar)
      tel["sigma_scalar"] = to_string(*t.sigma_scalar);
    Json divisors = Json::array();
    for (auto const &d : t.image_divisors)
      divisors.push_back(integer_json(d));
    tel["image_divisors"] = divisors;
    prov["telescope"] = tel;
  }
  if (h.transfer)
    prov["transfer"] = Json{{"kernel", to_json(h.transfer->kernel)}, {"image", to_json(h.transfer->image)}};
  if (h.freeproduct) {
    auto const &fp = *h.freeproduct;
    bool injective = std::all_of(fp.injective.begin(), fp.injective.end(), [](bool b) { return b; });
    bool exact = std::all_of(fp.middle_exact.begin(), fp.middle_exact.end(), [](bool b) { return b; });
    prov["freeproduct"] = Json{{"h0", to_json(fp.h0)},
                               {"h1", to_json(fp.h1)},
                               {"odd", to_json(fp.higher_odd)},
                               {"even", to_json(fp.higher_even)},
                               {"levels", fp.injective.size()},
                               {"injective", injective},
                               {"middle_exact", exact}};
    prov["delta"] = h.delta;
  } else {
    prov["freeproduct"] = h.system == "doubled" ? "n/a" : "not requested";
  }
  out["provenance"] = prov;
  return out;
}

} // namespace dihedral
