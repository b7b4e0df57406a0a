#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "dihedral/json_io.hpp"
#include "oracles/oracles.hpp"

using namespace dihedral;

namespace {

struct Check
{
  bool ok = true;
  std::string detail;

  void require(bool cond, std::string const &what)
  {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct CliRun
{
  int code;
  Json json;
  double seconds;
};

CliRun run_cli(cli::RunConfig c)
{
  std::ostringstream out, err;
  auto start = std::chrono::steady_clock::now();
  int code = cli::run(c, out, err);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json j = code == cli::kOk ? Json::parse(out.str()) : Json();
  if (code != cli::kOk)
    std::cerr << err.str();
  return {code, j, secs};
}

cli::RunConfig config(std::string command, std::string const &system)
{
  cli::RunConfig c;
  c.command = std::move(command);
  c.system_path = std::string(DIHEDRAL_TEST_DATA) + "/" + system;
  return c;
}

bool group_is(Json const &g, long rank, std::vector<long> torsion)
{
  Json t = Json::array();
  for (long x : torsion)
    t.push_back(x);
  return g["rank"] == rank && g["torsion"] == t;
}

std::vector<oracle::OArc> arcs_of(ClopenSet const &s)
{
  std::vector<oracle::OArc> out;
  for (auto const &a : s.arcs())
    out.push_back({static_cast<long>(a.left.m), static_cast<long>(a.left.n), static_cast<long>(a.right.m),
                   static_cast<long>(a.right.n)});
  return out;
}

std::vector<GroupElement> standard_K()
{
  return {GroupElement::identity(), GroupElement::phi(), GroupElement::sigma()};
}

Check denjoy_table()
{
  Check c;
  auto cfg = config("homology", "denjoy_golden.json");
  cfg.max_level = 16;
  CliRun r = run_cli(cfg);
  c.require(r.code == 0, "exit code");
  if (!c.ok)
    return c;
  Json const &j = r.json;
  c.require(group_is(j["H0"], 2, {}), "H0");
  for (char const *odd : {"H1", "H3", "H5"})
    c.require(group_is(j[odd], 0, {2, 2, 2}), odd);
  for (char const *even : {"H2", "H4"})
    c.require(group_is(j[even], 0, {}), even);
  Json const &lim = j["provenance"]["telescope"]["limit"];
  c.require(lim["kind"] == "stabilized" && lim["level"].get<int>() <= 16, "stabilization level");
  c.require(r.seconds < 10, "runtime");
  c.detail = c.ok ? "stabilized at level " + lim["level"].dump() : c.detail;
  return c;
}

Check fixed_points()
{
  Check c;
  DenjoyFlipSystem d(QuadField::golden());
  auto s = d.fixed_points(GroupElement::sigma());
  c.require(s.size() == 1 && s[0].to_string() == "1/2", "sigma");
  auto ps = d.fixed_points(GroupElement{1, 1});
  c.require(ps.size() == 2 && ps[0].to_string() == "θ/2" && ps[1].to_string() == "(1+θ)/2", "phi sigma");
  for (long n = -50; n <= 50; ++n)
    if (n != 0)
      c.require(d.fixed_points(GroupElement::phi(n)).empty(), "rotation by " + std::to_string(n));
  return c;
}

Check golden_castle()
{
  Check c;
  DenjoyFlipSystem d(QuadField::golden());
  auto const &circle = d.circle();
  ClopenSet y = circle.arc(-1, 1);
  c.require(d.symmetric_cell(1) == y, "base cell");
  auto castle = first_return_castle(d, y);
  c.require(castle.towers.size() == 2, "tower count");
  if (!c.ok)
    return c;
  auto const &t1 = castle.towers[0], &t2 = castle.towers[1];
  c.require(t1.J == 3 && t2.J == 5, "heights");
  c.require(t1.base == circle.arc(-4, 1) && t2.base == circle.arc(-1, -4), "bases");
  c.require(verify_castle(d, castle).ok(), "verify_castle");
  QuadExt total = QuadExt::integer(0);
  for (auto const &t : castle.towers)
    for (std::int64_t k = 0; k < t.J; ++k)
      total = total + d.measure(t.base);
  c.require(total == QuadExt::integer(1), "measure identity");

  oracle::Theta th = oracle::golden();
  auto y_arcs = arcs_of(y);
  std::mt19937_64 rng(3);
  for (int s = 0; s < 10000 && c.ok; ++s) {
    long den = 2 * (1 + static_cast<long>(rng() % 5000));
    oracle::Point x{mpq_class(1 + 2 * static_cast<long>(rng() % static_cast<unsigned long>(den / 2)), den), 0};
    x.a.canonicalize();
    int hits = 0;
    for (auto const &tower : castle.towers) {
      auto base = arcs_of(tower.base);
      for (auto const &g : tower.shape) {
        GroupElement inv = g.inverse();
        hits += oracle::in_set(th, base, oracle::act(th, inv.n, inv.s, x));
      }
      if (oracle::in_set(th, base, x))
        c.require(oracle::first_return(th, y_arcs, x, 100) == tower.J, "first return at sample " + std::to_string(s));
    }
    c.require(hits == 1, "orbit partition at sample " + std::to_string(s));
  }
  return c;
}

Check transversal_folner()
{
  Check c;
  auto K = standard_K();
  std::vector<oracle::Elem> k_oracle{{0, 0}, {1, 0}, {0, 1}};
  for (std::int64_t m = 1; m <= 10000 && c.ok; ++m) {
    auto F = folner(m);
    c.require(is_transversal(F, m), "transversal at m=" + std::to_string(m));
    if (m % 2 == 0 && m <= 4096) {
      std::vector<oracle::Elem> f;
      for (auto const &g : F)
        f.push_back({g.n, g.s});
      Rational want(2, m);
      want.canonicalize();
      Rational counted(static_cast<long>(oracle::boundary(k_oracle, f)), m);
      counted.canonicalize();
      c.require(counted == want && folner_ratio(F, K) == want, "ratio at m=" + std::to_string(m));
    }
  }
  return c;
}

Check certificate()
{
  Check c;
  auto cfg = config("certify", "denjoy_golden.json");
  cfg.eps = "1/10";
  CliRun r = run_cli(cfg);
  c.require(r.code == 0, "exit code");
  if (!c.ok)
    return c;
  DenjoyFlipSystem d(QuadField::golden());
  c.require(r.json["verified"]["reverified_from_json"] == true, "self audit");
  c.require(recheck_certificate_json(d, r.json), "independent JSON recheck");
  for (auto const &ratio : r.json["ratios"])
    c.require(parse_rational(ratio.get<std::string>()) < Rational(1, 10), "ratio " + ratio.dump());
  c.require(r.seconds < 30, "runtime");
  if (c.ok)
    c.detail = std::to_string(r.json["towers"].size()) + " towers";
  return c;
}

Check odometer_freeness()
{
  Check c;
  std::vector<Integer> chain;
  for (int i = 1; i <= 20; ++i)
    chain.push_back(Integer(12) << i);
  OdometerSystem o(chain);
  for (int i = 1; i <= o.levels(); ++i) {
    Rational two(2, o.modulus(i));
    two.canonicalize();
    c.require(o.fixed_fraction(GroupElement::sigma(), i) == two, "sigma at level " + std::to_string(i));
    c.require(o.fixed_fraction(GroupElement{1, 1}, i) == 0, "phi sigma at level " + std::to_string(i));
    if (i <= 8) {
      long n = o.modulus(i).get_si();
      Rational counted(oracle::fixed_residues(n, 0, 1), n);
      counted.canonicalize();
      c.require(counted == two && oracle::fixed_residues(n, 1, 1) == 0, "enumeration at level " + std::to_string(i));
    }
  }
  return c;
}

Check odometer_case(std::string const &file, std::vector<long> odd, std::string const &loc)
{
  Check c;
  CliRun r = run_cli(config("homology", file));
  c.require(r.code == 0, "exit code");
  if (!c.ok)
    return c;
  Json const &j = r.json;
  for (char const *h : {"H1", "H3", "H5"})
    c.require(group_is(j[h], 0, odd), std::string(file) + " " + h);
  c.require(j["H0"]["localization"] == loc, file + " localization");
  for (auto const &[g, t] : j["provenance"]["threads"].items())
    c.require(t["stabilizedAt"].get<int>() <= 3, file + " thread " + g);
  return c;
}

Check odometer_cases()
{
  Check c = odometer_case("odometer_3.json", {2, 2}, "Z[1/3]");
  if (c.ok)
    c = odometer_case("odometer_2.json", {2}, "Z[1/2]");
  return c;
}

Check oracle_equivalence()
{
  Check c;
  OracleReport r = oracle_check(100);
  c.require(r.modules == 100, "module count");
  c.require(r.mismatches.empty(), r.mismatches.empty() ? "" : r.mismatches.front());
  if (c.ok)
    c.detail = std::to_string(r.comparisons) + " comparisons";
  return c;
}

Check two_paths()
{
  Check c;
  DenjoyFlipSystem d(QuadField::golden());
  SystemHomology h = analyze(d, 16, Method::both);
  c.require(h.delta.empty(), "delta non-empty");
  c.require(h.freeproduct.has_value(), "free-product result");
  if (!c.ok)
    return c;
  auto const &fp = *h.freeproduct;
  c.require(fp.h0.kind == LimitKind::stabilized && fp.h0.group == h.table.degrees[0].group, "H0");
  c.require(fp.h1.kind == LimitKind::stabilized && fp.h1.group == h.table.degrees[1].group, "H1");
  c.require(fp.injective.size() == 16, "level count");
  for (std::size_t k = 0; k < fp.injective.size(); ++k)
    c.require(fp.injective[k], "injectivity at level " + std::to_string(k + 1));
  return c;
}

Check doubled()
{
  Check c;
  auto cfg = config("homology", "doubled_golden.json");
  cfg.max_level = 16;
  CliRun r = run_cli(cfg);
  c.require(r.code == 0, "exit code");
  if (!c.ok)
    return c;
  c.require(group_is(r.json["H0"], 2, {}), "H0");
  c.require(group_is(r.json["H1"], 1, {}), "H1");
  for (char const *h : {"H2", "H3", "H4", "H5"})
    c.require(group_is(r.json[h], 0, {}), h);
  c.require(group_is(r.json["tail"]["odd"], 0, {}) && group_is(r.json["tail"]["even"], 0, {}), "tail");
  return c;
}

} // namespace

int main()
{
  std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"denjoy homology table", denjoy_table},
      {"fixed points of the flips", fixed_points},
      {"two-tower castle", golden_castle},
      {"transversal Folner sets", transversal_folner},
      {"almost-finiteness certificate", certificate},
      {"odometer fixed fractions", odometer_freeness},
      {"odometer homology", odometer_cases},
      {"bar resolution oracle", oracle_equivalence},
      {"free-product consistency", two_paths},
      {"doubled system homology", doubled},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (std::exception const &e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    failures += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << criteria[i].first;
    if (!c.detail.empty())
      std::cout << " (" << c.detail << ')';
    std::cout << '\n';
  }
  return failures == 0 ? 0 : 1;
}
