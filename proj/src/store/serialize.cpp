#include "cchain/store/serialize.hpp"

#include "cchain/core/error.hpp"

namespace cchain {

namespace {

std::string kind_name(ImageKind k) {
  switch (k) {
    case ImageKind::Reducible: return "Reducible";
    case ImageKind::Dihedral: return "Dihedral";
    case ImageKind::Exceptional: return "Exceptional";
    case ImageKind::Large: return "Large";
  }
  return "?";
}

std::string local_name(LocalKind k) {
  switch (k) {
    case LocalKind::Steinberg: return "Steinberg";
    case LocalKind::PrincipalSeries: return "PrincipalSeries";
    case LocalKind::Supercuspidal: return "Supercuspidal";
    case LocalKind::GoodDihedral: return "GoodDihedral";
  }
  return "?";
}

}  // namespace

Json to_json(const EigenSystem& e) {
  Json values = Json::array();
  for (const auto& [q, a] : e.eigenvalues) values.push_back({{"q", q}, {"value", e.value_field.coords(a)}});
  return {{"level", e.level},
          {"weight", e.weight},
          {"characteristic", e.characteristic},
          {"degree", e.degree()},
          {"modulus", e.value_field.modulus()},
          {"eigenvalues", values},
          {"bound", e.bound},
          {"is_new", e.is_new},
          {"multiplicity", e.multiplicity},
          {"semisimple", e.semisimple}};
}

Json to_json(const NewformOrbit& o) {
  return {{"label", o.label}, {"index", o.index}, {"ell", o.ell}, {"eigensystem", to_json(o.eigensystem)}};
}

Json to_json(const ImageClass& c) {
  Json j = {{"kind", kind_name(c.kind)}, {"name", to_string(c)}};
  if (c.kind == ImageKind::Dihedral) j["discriminant"] = c.discriminant;
  if (c.kind == ImageKind::Reducible) j["eisenstein_exponent"] = c.eisenstein_exponent;
  Json ev = Json::array();
  for (const auto& w : c.evidence) ev.push_back({{"q", w.q}, {"criterion", w.criterion}});
  j["evidence"] = ev;
  return j;
}

Json to_json(const MltVerdict& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks) checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"note", c.note}});
  return {{"theorem", to_string(v.theorem)}, {"assumption_used", v.assumption_used}, {"checks", checks}};
}

Json to_json(const CongruenceEdge& e) {
  return {{"left", e.left},
          {"right", e.right},
          {"left_index", e.left_index},
          {"right_index", e.right_index},
          {"left_level", e.left_level},
          {"right_level", e.right_level},
          {"left_weight", e.left_weight},
          {"right_weight", e.right_weight},
          {"ell", e.ell},
          {"embedding",
           {{"degree", e.embedding.degree},
            {"compositum_modulus", e.embedding.compositum_modulus},
            {"left_generator", e.embedding.left_generator},
            {"right_generator", e.embedding.right_generator},
            {"right_choice", e.embedding.right_choice}}},
          {"tested_primes", e.tested_primes},
          {"bound_used", e.bound_used},
          {"status", to_string(e.status)},
          {"refuted_at", e.status == CongruenceStatus::Refuted ? Json(e.refuted_at) : Json(nullptr)},
          {"mlt", to_json(e.mlt)}};
}

Json to_json(const GoodDihedralPair& g) {
  return {{"p", g.p}, {"q", g.q}, {"B", g.B}, {"certificates", g.certificates}};
}

Json to_json(const LocalType& t) {
  Json j = {{"type", local_name(t.kind)}};
  if (t.has_character()) {
    j["char_order"] = t.char_order;
    j["wild"] = t.wild;
  }
  if (t.kind == LocalKind::GoodDihedral) {
    j["p"] = t.p;
    j["B"] = t.B;
  }
  return j;
}

Json to_json(const SystemDescriptor& d) {
  Json cond = Json::array();
  for (const auto& [r, t] : d.conductor) {
    Json e = to_json(t);
    e["prime"] = r;
    cond.push_back(e);
  }
  return {{"field_degree", d.field_degree},
          {"weight", d.weight},
          {"conductor", cond},
          {"dihedral", d.dihedral},
          {"coeff_degree", d.coeff_degree ? Json(*d.coeff_degree) : Json(nullptr)},
          {"twist_conductor", d.twist_conductor}};
}

Json to_json(const ChainMove& m) {
  Json j = {{"kind", to_string(m.kind)}, {"mod", m.mod}, {"audit", m.audit}, {"verdict", to_json(m.verdict)}};
  switch (m.kind) {
    case MoveKind::MakeNonDihedral: j["steinberg_at"] = m.at; break;
    case MoveKind::ToParallelWeight2: break;
    case MoveKind::AddGoodDihedral: j["pair"] = to_json(*m.pair); break;
    case MoveKind::KillTamePart:
    case MoveKind::KillSteinberg: j["at"] = m.at; break;
    case MoveKind::TameifyWild:
      j["at"] = m.at;
      j["twist_added"] = m.twist_added;
      break;
    case MoveKind::MoveSteinbergToSplit:
      j["from"] = m.at;
      j["to"] = m.to;
      break;
    case MoveKind::FinalWeight2Lift: j["aux"] = m.at; break;
  }
  return j;
}

Json to_json(const ChainPlan& p) {
  Json steps = Json::array();
  for (const auto& [m, after] : p.steps) steps.push_back({{"move", to_json(m)}, {"after", to_json(after)}});
  return {{"start", to_json(p.start)}, {"steps", steps}, {"assumption_count", p.assumption_count}};
}

Json to_json(const MazurReport& r) {
  Json edges = Json::array();
  for (const auto& e : r.graph.edges) edges.push_back(to_json(e));
  return {{"level", r.level},
          {"weight", r.weight},
          {"ell_range", r.graph.ell_range},
          {"lmax", r.lmax},
          {"nodes", r.graph.nodes},
          {"edges", edges},
          {"components", r.components},
          {"connected", r.connected}};
}

SystemDescriptor descriptor_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw DomainError("descriptor must be a JSON object");
    SystemDescriptor d;
    d.field_degree = j.value("field_degree", 1);
    d.weight = j.at("weight").get<int>();
    d.dihedral = j.value("dihedral", false);
    if (j.contains("coeff_degree") && !j.at("coeff_degree").is_null()) d.coeff_degree = j.at("coeff_degree").get<u64>();
    d.twist_conductor = j.value("twist_conductor", u64{1});
    for (const auto& e : j.at("conductor")) {
      u64 r = e.at("prime").get<u64>();
      std::string type = e.at("type").get<std::string>();
      LocalType t;
      if (type == "Steinberg") {
        t = LocalType::steinberg();
      } else if (type == "PrincipalSeries" || type == "Supercuspidal") {
        u64 order = e.at("char_order").get<u64>();
        bool wild = e.value("wild", order % r == 0);
        t = type == "PrincipalSeries" ? LocalType::principal_series(order, wild) : LocalType::supercuspidal(order, wild);
      } else if (type == "GoodDihedral") {
        t = LocalType::good_dihedral(e.at("p").get<u64>(), e.at("B").get<u64>());
      } else {
        throw DomainError("unknown local type " + type);
      }
      if (!d.conductor.emplace(r, t).second) throw DomainError("conductor prime " + std::to_string(r) + " listed twice");
    }
    validate(d);
    return d;
  } catch (const Json::exception& err) {
    throw DomainError(std::string("malformed descriptor: ") + err.what());
  }
}

}  // namespace cchain
