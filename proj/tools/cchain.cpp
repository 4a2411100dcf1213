#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cchain/core/error.hpp"
#include "cchain/graph/graph.hpp"
#include "cchain/modsym/modsym.hpp"
#include "cchain/store/serialize.hpp"
#include "cchain/store/store.hpp"

using namespace cchain;

namespace {

std::optional<Store> open_store(const std::optional<std::string>& flag) {
  auto dir = Store::resolve_dir(flag);
  if (!dir) return std::nullopt;
  return Store(*dir);
}

// Looks the record up in the cache, computing and storing it on a miss.
Json cached(const std::optional<Store>& store, const std::string& kind, const std::vector<std::string>& params,
            const std::function<Json()>& compute) {
  if (store)
    if (auto hit = store->get(kind, params)) return Json::parse(hit->payload);
  Json j = compute();
  if (store) store->put(make_entry(kind, params, j.dump()));
  return j;
}

std::vector<std::string> strs(std::initializer_list<u64> xs) {
  std::vector<std::string> out;
  for (u64 x : xs) out.push_back(std::to_string(x));
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DomainError("malformed JSON in " + path + ": " + e.what());
  }
}

ImageClass parse_image(const std::string& s) {
  if (s == "large") return ImageClass::large();
  if (s == "reducible") return ImageClass::reducible();
  if (s == "a4") return ImageClass::exceptional(ExceptionalGroup::A4);
  if (s == "s4") return ImageClass::exceptional(ExceptionalGroup::S4);
  if (s == "a5") return ImageClass::exceptional(ExceptionalGroup::A5);
  if (s.rfind("dihedral:", 0) == 0) {
    try {
      return ImageClass::dihedral(std::stoll(s.substr(9)));
    } catch (const std::exception&) {
    }
  }
  throw CLI::ValidationError("--image", "expected large, reducible, dihedral:D, a4, s4 or a5");
}

std::optional<bool> parse_tri(const std::string& s, const std::string& flag) {
  if (s.empty() || s == "unknown") return std::nullopt;
  if (s == "true" || s == "yes") return true;
  if (s == "false" || s == "no") return false;
  throw CLI::ValidationError(flag, "expected true, false or unknown");
}

// Classes at every level dividing N at weight k, tables long enough for cross-level pairs.
std::vector<const NewformClass*> classes_below(u64 N, int k, u64 table) {
  std::vector<const NewformClass*> out;
  for (u64 M : divisors(N))
    for (const auto& c : newform_classes(M, k, std::max(table, default_table_bound(M, k)))) out.push_back(&c);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congruence chains between modular eigensystems"};
  app.require_subcommand(1);
  std::optional<std::string> cache_flag;
  app.add_option("--cache-dir", cache_flag, "cache directory (overrides CCHAIN_CACHE_DIR)");

  std::function<Json()> run;

  u64 N = 0, N2 = 0, L = 0, lmax = 13, bound = 0;
  int K = 0, K2 = 0, index = 0;

  auto* space = app.add_subcommand("space", "dimensions of a modular-symbol space over F_L");
  space->add_option("N", N)->required();
  space->add_option("K", K)->required();
  space->add_option("L", L)->required();
  space->callback([&] {
    run = [&] {
      auto s = build_space(N, K, L);
      return Json{{"level", N},
                  {"weight", K},
                  {"characteristic", L},
                  {"manin_symbols", s.manin_count()},
                  {"dimension", s.dimension()},
                  {"cuspidal_dimension", s.cuspidal_dim()}};
    };
  });

  auto* orbits = app.add_subcommand("orbits", "newform orbits mod L with eigenvalue tables");
  orbits->add_option("N", N)->required();
  orbits->add_option("K", K)->required();
  orbits->add_option("L", L)->required();
  orbits->callback([&] {
    run = [&] {
      return cached(open_store(cache_flag), "orbits", strs({N, static_cast<u64>(K), L}), [&] {
        Json out = Json::array();
        for (const auto& o : newform_orbits(N, K, L)) out.push_back(to_json(o));
        return out;
      });
    };
  });

  auto* congr = app.add_subcommand("congruences", "certified congruences between the classes of two spaces");
  congr->add_option("N1", N)->required();
  congr->add_option("K1", K)->required();
  congr->add_option("N2", N2)->required();
  congr->add_option("K2", K2)->required();
  congr->add_option("--lmax", lmax, "largest congruence prime")->capture_default_str();
  congr->callback([&] {
    run = [&] {
      return cached(open_store(cache_flag), "edges", strs({N, static_cast<u64>(K), N2, static_cast<u64>(K2), lmax}), [&] {
        u64 table = cross_bound(N, K, N2, K2);
        std::vector<const NewformClass*> cls;
        for (const auto& c : newform_classes(N, K, std::max(table, default_table_bound(N, K)))) cls.push_back(&c);
        if (N2 != N || K2 != K)
          for (const auto& c : newform_classes(N2, K2, std::max(table, default_table_bound(N2, K2)))) cls.push_back(&c);
        Json out = Json::array();
        for (const auto& e : scan_congruences(class_orbit_set(cls, lmax), primes_up_to(lmax))) out.push_back(to_json(e));
        return out;
      });
    };
  });

  auto* classify = app.add_subcommand("classify", "residual image of orbit INDEX of newform_orbits(N, K, L)");
  classify->add_option("N", N)->required();
  classify->add_option("K", K)->required();
  classify->add_option("L", L)->required();
  classify->add_option("INDEX", index)->required();
  classify->callback([&] {
    run = [&] {
      auto os = newform_orbits(N, K, L);
      if (index < 0 || static_cast<std::size_t>(index) >= os.size())
        throw DomainError("orbit index out of range (" + std::to_string(os.size()) + " orbits)");
      const auto& e = os[static_cast<std::size_t>(index)].eigensystem;
      auto img = classify_image(e);
      auto ad = is_adequate(img, L, false);
      return Json{{"label", os[static_cast<std::size_t>(index)].label},
                  {"image", to_json(img)},
                  {"adequate", ad.adequate == Tri::True ? "true" : ad.adequate == Tri::False ? "false" : "unknown"},
                  {"adequacy_reason", ad.reason}};
    };
  });

  std::string image = "large", ord_l, ord_r, fl;
  bool gd_context = false, no_witness = false;
  auto* mltedge = app.add_subcommand("mlt-edge", "hypothesis breakdown for one congruence");
  mltedge->add_option("--ell", L, "congruence prime")->required();
  mltedge->add_option("--image", image, "large | reducible | dihedral:D | a4 | s4 | a5")->capture_default_str();
  mltedge->add_option("--k1", K, "left weight")->default_val(2);
  mltedge->add_option("--k2", K2, "right weight")->default_val(2);
  mltedge->add_option("--ordinary-left", ord_l, "true | false | unknown");
  mltedge->add_option("--ordinary-right", ord_r, "true | false | unknown");
  mltedge->add_option("--fl", fl, "Fontaine-Laffaille flag: true | false | unknown");
  mltedge->add_flag("--good-dihedral", gd_context, "a good-dihedral prime controls the image");
  mltedge->add_flag("--no-modular-witness", no_witness, "the residual representation has no modular witness");
  mltedge->callback([&] {
    EdgeContext c;
    c.ell = L;
    c.image = parse_image(image);
    c.k1 = K;
    c.k2 = K2;
    c.ordinary_left = parse_tri(ord_l, "--ordinary-left");
    c.ordinary_right = parse_tri(ord_r, "--ordinary-right");
    c.fontaine_laffaille = parse_tri(fl, "--fl");
    c.good_dihedral_context = gd_context;
    c.residually_modular_witness = !no_witness;
    run = [c] {
      if (!is_prime(c.ell)) throw DomainError("congruence prime must be prime");
      return Json{{"best", to_json(best_verdict(c))},
                  {"MLT1", to_json(check_mlt1(c))},
                  {"MLT2", to_json(check_mlt2(c))},
                  {"MLT3", to_json(check_mlt3(c))},
                  {"MLT4", to_json(check_mlt4(c))}};
    };
  });

  auto* graph = app.add_subcommand("graph", "congruence graph and connectedness at level N");
  graph->add_option("N", N)->required();
  graph->add_option("K", K)->required();
  graph->add_option("--lmax", lmax, "largest congruence prime")->capture_default_str();
  graph->callback([&] {
    run = [&] {
      return cached(open_store(cache_flag), "report", strs({N, static_cast<u64>(K), lmax}),
                    [&] { return to_json(mazur_report(N, K, lmax)); });
    };
  });

  std::string from, to, file1, file2;
  bool mlt_only = false;
  auto* chain = app.add_subcommand("chain", "shortest congruence chain between two classes");
  chain->add_option("FROM", from, "class label N.k.i, delta or f11")->required();
  chain->add_option("TO", to, "class label")->required();
  chain->add_option("--lmax", lmax, "largest congruence prime")->capture_default_str();
  chain->add_flag("--mlt-only", mlt_only, "use only edges some lifting theorem covers");
  chain->callback([&] {
    run = [&] {
      const auto& a = find_class(from);
      const auto& b = find_class(to);
      u64 table = cross_bound(a.level, a.weight, b.level, b.weight);
      auto cls = classes_below(a.level, a.weight, table);
      if (a.weight != b.weight || a.level % b.level != 0)
        for (const auto* c : classes_below(b.level, b.weight, table))
          if (std::find_if(cls.begin(), cls.end(), [&](const auto* x) { return x->label == c->label; }) == cls.end())
            cls.push_back(c);
      auto g = build_graph(class_orbit_set(cls, lmax), primes_up_to(lmax));
      for (const auto* c : cls) g.nodes.push_back(c->label);
      std::sort(g.nodes.begin(), g.nodes.end());
      g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
      auto path = chain_search(g, a.label, b.label, mlt_only);
      Json j = {{"from", a.label}, {"to", b.label}, {"lmax", lmax}, {"mlt_only", mlt_only}};
      if (!path) {
        j["status"] = "Absent";
        j["path"] = nullptr;
      } else {
        j["status"] = "Found";
        j["path"] = Json::array();
        for (const auto& e : *path) j["path"].push_back(to_json(e));
      }
      return j;
    };
  });

  auto* plan = app.add_subcommand("plan", "rewrite a descriptor to weight 2 and level pq^2");
  plan->add_option("DESCRIPTOR_FILE", file1)->required();
  plan->add_option("--bound", bound, "good-dihedral bound B")->required();
  plan->callback([&] {
    run = [&] { return to_json(plan_to_safe_form(descriptor_from_json(read_json_file(file1)), bound)); };
  });

  auto* conn = app.add_subcommand("connect", "plans for two descriptors meeting at one safe system");
  conn->add_option("D1", file1)->required();
  conn->add_option("D2", file2)->required();
  conn->add_option("--bound", bound, "good-dihedral bound B")->required();
  conn->callback([&] {
    run = [&] {
      auto [a, b] = connect(descriptor_from_json(read_json_file(file1)), descriptor_from_json(read_json_file(file2)), bound);
      return Json{{"left", to_json(a)}, {"right", to_json(b)}};
    };
  });

  auto* gd = app.add_subcommand("good-dihedral", "smallest good-dihedral pair above a bound");
  gd->add_option("--bound", bound, "bound B")->required();
  gd->callback([&] {
    run = [&] { return to_json(find_good_dihedral(bound, {}, [](u64) { return true; })); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    std::cout << run().dump(2) << "\n";
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
