#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "vk/cli/report.hpp"

namespace {

using vk::cli::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw vk::InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw vk::InputError(path + ": " + e.what());
  }
}

/// An existing file is read as complex JSON, anything else is a catalog name.
vk::cli::ComplexSource complex_source(const std::string& arg) {
  if (std::ifstream(arg).good()) return {"inline", vk::complexes::from_json(read_json(arg))};
  return vk::cli::from_catalog(arg);
}

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_human(const json& rep, std::ostream& os) {
  os << rep.at("command").get<std::string>() << "\n";
  for (const auto& [k, v] : rep.at("inputs").items())
    if (k != "complex" && k != "graph") os << "  input   " << k << " = " << scalar(v) << "\n";
  if (!rep.contains("verdicts")) return;
  const json& vd = rep.at("verdicts");
  if (vd.contains("checks")) {
    for (const auto& c : vd.at("checks"))
      os << "  " << (c.at("ok").get<bool>() ? "ok    " : "FAILED") << "  " << c.at("check").get<std::string>()
         << (c.contains("detail") ? " (" + c.at("detail").get<std::string>() + ")" : "") << "\n";
    os << "  verified = " << vd.at("verified").dump() << "\n";
    return;
  }
  for (const auto& [k, v] : vd.items()) os << "  verdict " << k << " = " << scalar(v) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vk: van Kampen obstructions, nilpotent roots, p-group certificates, linking and octahedralizations"};
  app.require_subcommand(1);
  app.fallthrough();
  bool human = false;
  app.add_flag("--human", human, "Print a summary table instead of JSON");
  app.add_flag("--json", "Emit JSON (the default)");
  std::string out_path;
  app.add_option("--out", out_path, "Write the report to a file instead of stdout");

  std::uint64_t seed = 0;

  std::string build_name;
  auto* build = app.add_subcommand("build", "Build a catalog complex");
  build->add_option("name", build_name, vk::cli::catalog_help())->required();

  std::string ob_source, ring = "Z";
  auto* ob = app.add_subcommand("obstruction", "Van Kampen obstruction of a complex");
  ob->add_option("complex", ob_source, "Complex JSON file or catalog name")->required();
  ob->add_option("--ring", ring)->check(CLI::IsMember({"Z", "Z2"}));
  ob->add_option("--seed", seed);

  std::string expr, op = "reduce";
  int gens = 2, maxdeg = 4;
  std::int64_t k = 2;
  auto* word = app.add_subcommand("word", "Free group word operations");
  word->add_option("--expr", expr, "Word in parser syntax")->required();
  word->add_option("--op", op, "reduce, depth, trivial@N or power-test");
  word->add_option("--gens", gens);
  word->add_option("--maxdeg", maxdeg);
  word->add_option("--k", k, "Exponent for power-test");

  std::string root_word;
  int cls = 1;
  auto* root = app.add_subcommand("root", "k-th root modulo a lower central series term");
  root->add_option("--word", root_word)->required();
  root->add_option("--k", k)->required();
  root->add_option("--class", cls)->required();

  std::int64_t p = 2;
  int n = 1;
  auto* prop42 = app.add_subcommand("prop42", "Root certificate for a^p b^(p^(2^(n-1)))");
  prop42->add_option("--p", p)->required();
  prop42->add_option("--n", n)->required();

  std::int64_t r = 1, s = 1;
  std::uint64_t budget = 10'000'000;
  auto* baum = app.add_subcommand("baumslag", "Certificate that a^r b^s is not a p-th power");
  baum->add_option("--p", p, "Exponent k (any integer >= 2)")->required();
  baum->add_option("--r", r)->required();
  baum->add_option("--s", s)->required();
  baum->add_option("--budget", budget);

  std::string cg_input;
  std::optional<long long> twisted;
  std::optional<std::uint64_t> random_seed;
  auto* cg = app.add_subcommand("cg", "Conway-Gordon linking analysis of a spatial K6");
  auto* cg_in = cg->add_option("--input", cg_input, "Spatial graph JSON");
  auto* cg_tw = cg->add_option("--twisted", twisted, "Built-in K6 with Lk(123,456) = k (odd)");
  auto* cg_rnd = cg->add_option("--random", random_seed, "Random straight-line K6 from a seed");
  cg_in->excludes(cg_tw)->excludes(cg_rnd);
  cg_tw->excludes(cg_rnd);

  std::string octa_input;
  vk::cli::OctaOptions oo;
  std::optional<int> vertex, cycle;
  auto* oc = app.add_subcommand("octa", "Octahedralization operations");
  oc->add_option("--input", octa_input, "Complex JSON file or catalog name");
  oc->add_option("--op", oo.op)->check(CLI::IsMember({"build", "flag", "prop52", "k44"}));
  oc->add_option("--subdivide", oo.subdivide, "Barycentric subdivisions applied first");
  oc->add_option("--vertex", vertex, "k44: use O(Lk(v))");
  oc->add_option("--cycle", cycle, "k44: use O(C_n)");
  oc->add_option("--budget", oo.budget, "Minor search state budget");

  int pk = 3, max_n = 3;
  auto* pipe = app.add_subcommand("pipeline-xk", "Obstruction, non-power certificate and boundary words for X_k");
  pipe->add_option("--k", pk)->required();
  pipe->add_option("--max-n", max_n);
  pipe->add_option("--seed", seed);

  std::string report_path;
  auto* ver = app.add_subcommand("verify", "Re-check every certificate in a report");
  ver->add_option("report", report_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    json rep;
    if (*build) {
      rep = vk::cli::build_report(build_name);
    } else if (*ob) {
      rep = vk::cli::obstruction_report(complex_source(ob_source), vk::vankampen::parse_ring(ring), seed);
    } else if (*word) {
      rep = vk::cli::word_report(expr, op, gens, maxdeg, k);
    } else if (*root) {
      rep = vk::cli::root_report(root_word, k, cls);
    } else if (*prop42) {
      rep = vk::cli::prop42_report(p, n);
    } else if (*baum) {
      rep = vk::cli::baumslag_report(r, s, p, budget);
    } else if (*cg) {
      if (twisted) rep = vk::cli::cg_report("twisted:" + std::to_string(*twisted), vk::spatial::twisted_K6(*twisted));
      else if (random_seed)
        rep = vk::cli::cg_report("random:" + std::to_string(*random_seed), vk::spatial::random_straight_K6(*random_seed));
      else if (!cg_input.empty())
        rep = vk::cli::cg_report("inline", vk::spatial::spatial_from_json(read_json(cg_input)));
      else
        throw vk::InputError("cg needs --input, --twisted or --random");
    } else if (*oc) {
      oo.vertex = vertex;
      oo.cycle = cycle;
      std::optional<vk::cli::ComplexSource> src;
      if (!octa_input.empty()) src = complex_source(octa_input);
      rep = vk::cli::octa_report(src, oo);
    } else if (*pipe) {
      rep = vk::cli::pipeline_xk_report(pk, max_n, seed);
    } else if (*ver) {
      rep = vk::cli::verify_report(read_json(report_path));
    }
    std::ostringstream text;
    if (human) print_human(rep, text);
    else text << vk::cli::dump(rep);
    if (out_path.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream out(out_path);
      if (!out) throw vk::InputError("cannot write " + out_path);
      out << text.str();
    }
    return 0;
  } catch (const vk::InputError& e) {
    std::cerr << "vk: input error: " << e.what() << "\n";
    return 2;
  } catch (const vk::BudgetExceeded& e) {
    std::cerr << "vk: budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const vk::GeneralPositionError& e) {
    std::cerr << "vk: general position retries exhausted: " << e.what() << "\n";
    return 3;
  } catch (const vk::InvariantViolation& e) {
    std::cerr << "vk: invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "vk: internal error: " << e.what() << "\n";
    return 4;
  }
}
