#pragma once

// JSON encodings of systems, clopen sets, castles, groups and homology tables.
// Parsing is strict: unknown or missing fields raise InvalidInput.

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dihedral/analysis.hpp"
#include "dihedral/towers.hpp"

namespace dihedral {

using Json = nlohmann::ordered_json;

using AnySystem = std::variant<DenjoyFlipSystem, OdometerSystem, DoubledSystem>;

/// {"type":"denjoy_flip"|"doubled","theta":{...}} or {"type":"odometer","chain":[...]}
AnySystem parse_system(Json const &j);
Json to_json(AnySystem const &system);

Integer parse_integer(Json const &j, std::string const &what);
/// "P/Q" or "P" with Q > 0.
Rational parse_rational(std::string const &text);
std::string to_string(Rational const &r);

ThetaSpec parse_theta(Json const &j);
Json to_json(ThetaSpec const &theta);

CutPoint parse_cut(DoubledCircle const &circle, Json const &j);
Json to_json(CutPoint const &c);

GroupElement parse_element(Json const &j);
Json to_json(GroupElement const &g);
/// List of [n, s] pairs.
std::vector<GroupElement> parse_elements(Json const &j);

ClopenSet parse_set(DenjoyFlipSystem const &system, Json const &j);
SheetSet parse_set(DoubledSystem const &system, Json const &j);
OdometerSet parse_set(OdometerSystem const &system, Json const &j);
Json to_json(ClopenSet const &s);
Json to_json(SheetSet const &s);
Json to_json(OdometerSet const &s);

Json to_json(CastleReport const &r);

template <class Set> Json to_json(Castle<Set> const &castle)
{
  Json towers = Json::array();
  for (auto const &t : castle.towers) {
    Json shape = Json::array();
    for (auto const &g : t.shape)
      shape.push_back(to_json(g));
    towers.push_back(Json{{"base", to_json(t.base)}, {"J", t.J}, {"shape", shape}});
  }
  return Json{{"towers", towers}};
}

template <class System> Castle<typename System::Set> parse_castle(System const &system, Json const &j);

template <class Set> Json to_json(Certificate<Set> const &cert)
{
  Json out = to_json(cert.castle);
  Json K = Json::array();
  for (auto const &g : cert.K)
    K.push_back(to_json(g));
  Json ratios = Json::array();
  bool below = true;
  for (auto const &r : cert.ratios) {
    ratios.push_back(to_string(r));
    below = below && r < cert.eps;
  }
  out["K"] = K;
  out["eps"] = to_string(cert.eps);
  out["min_index"] = cert.min_index;
  out["base_level"] = cert.base_level;
  out["ratios"] = ratios;
  Json verified = to_json(cert.report);
  verified["ratios_below_eps"] = below;
  out["verified"] = verified;
  return out;
}

/// Rebuilds a certificate from its JSON and re-verifies it from scratch.
template <class System> bool recheck_certificate_json(System const &system, Json const &j);

Json to_json(FGAbGroup const &g);
Json to_json(HomologyGroup const &g);
Json to_json(LimitDescriptor const &d);
Json to_json(HomologyTable const &t);
std::string case_name(CompCase c);
/// Table with a "provenance" block.
Json to_json(SystemHomology const &h);

// --- implementation of the templates ---------------------------------------

void require_keys(Json const &j, std::vector<std::string> const &required, std::vector<std::string> const &optional,
                  std::string const &what);

template <class System> Castle<typename System::Set> parse_castle(System const &system, Json const &j)
{
  require_keys(j, {"towers"}, {"verified", "K", "eps", "min_index", "base_level", "ratios"}, "castle");
  if (!j.at("towers").is_array())
    throw InvalidInput("castle: towers must be an array");
  Castle<typename System::Set> castle;
  for (auto const &t : j.at("towers")) {
    require_keys(t, {"base", "J", "shape"}, {}, "tower");
    Tower<typename System::Set> tower;
    tower.base = parse_set(system, t.at("base"));
    Integer J = parse_integer(t.at("J"), "tower J");
    if (J < 1 || !J.fits_slong_p())
      throw InvalidInput("tower: J must be a positive machine integer");
    tower.J = J.get_si();
    tower.shape = parse_elements(t.at("shape"));
    castle.towers.push_back(std::move(tower));
  }
  return castle;
}

template <class System> bool recheck_certificate_json(System const &system, Json const &j)
{
  require_keys(j, {"towers", "K", "eps"}, {"verified", "min_index", "base_level", "ratios"}, "certificate");
  Certificate<typename System::Set> cert;
  cert.castle = parse_castle(system, j);
  cert.K = parse_elements(j.at("K"));
  if (!j.at("eps").is_string())
    throw InvalidInput("certificate: eps must be a string P/Q");
  cert.eps = parse_rational(j.at("eps").get<std::string>());
  return recheck_certificate(system, cert);
}

} // namespace dihedral
