#include "thetaforge/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "thetaforge/cluster.hpp"
#include "thetaforge/json_io.hpp"
#include "thetaforge/scatter.hpp"
#include "thetaforge/svg.hpp"
#include "thetaforge/theta.hpp"

namespace thetaforge::cli {

namespace {

using io::Json;

struct DiagramSource {
  std::string file;
  std::int64_t b = 1;
  std::int64_t c = 1;
  std::int64_t order = 8;
  bool initial = false;
};

struct Options {
  unsigned jobs = 0;
  DiagramSource src;
  std::string out;
  std::string p;
  std::string chamber;
  bool json = false;
  bool pretty = false;
  bool lines = false;
  std::string series;
  std::string combo;
  std::int64_t depth = 12;
  std::string from;
  std::string to;
  std::string exponents = "1,0;0,1;-1,0;0,-1";
  bool witnesses = false;
  bool no_shade = false;
};

std::string read_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw FormatError(field, "cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Inline JSON when the value starts with '{', otherwise a file path.
Json load_json(const std::string& value, const std::string& field) {
  const auto first = value.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && value[first] == '{') return io::parse(value, field);
  return io::parse(read_file(value, field), field);
}

Exponent parse_pair(const std::string& text, const std::string& field) {
  std::istringstream in(text);
  std::int64_t a = 0, b = 0;
  char comma = 0;
  if (!(in >> a >> comma >> b) || comma != ',' || !(in >> std::ws).eof()) {
    throw FormatError(field, "expected M1,M2 but got '" + text + "'");
  }
  return {a, b};
}

std::vector<Exponent> parse_pairs(const std::string& text, const std::string& field) {
  std::vector<Exponent> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (!item.empty()) out.push_back(parse_pair(item, field));
  }
  if (out.empty()) throw FormatError(field, "no exponents given");
  return out;
}

ScatteringDiagram load_diagram(const DiagramSource& src) {
  if (!src.file.empty()) return io::diagram_from_json(load_json(src.file, "--diagram"), "diagram");
  const ScatteringDiagram d = initial_diagram(src.b, src.c, src.order);
  return src.initial ? d : complete(d);
}

void add_source(CLI::App* cmd, DiagramSource& src) {
  cmd->add_option("--diagram", src.file, "Diagram JSON file (or inline JSON)");
  cmd->add_option("--b", src.b, "Exchange parameter b (used without --diagram)");
  cmd->add_option("--c", src.c, "Exchange parameter c (used without --diagram)");
  cmd->add_option("--order,--cutoff", src.order, "Truncation order (used without --diagram)");
  cmd->add_flag("--initial", src.initial, "Skip completion (used without --diagram)");
}

class Runner {
 public:
  Runner(Options& o, std::ostream& out) : o_(o), out_(out) {}

  void emit(const Json& j) const {
    const std::string text = j.dump(2) + "\n";
    if (o_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(o_.out);
    if (!f) throw FormatError("--out", "cannot write file '" + o_.out + "'");
    f << text;
  }

  int build() const {
    const ScatteringDiagram d = load_diagram(o_.src);
    Json j = io::to_json(d);
    Json chs = Json::array();
    for (const auto& ch : chambers(d)) chs.push_back(io::to_json(ch));
    j["chambers"] = std::move(chs);
    emit(j);
    return kOk;
  }

  int theta() const {
    const Atlas atlas(load_diagram(o_.src), o_.jobs);
    const Exponent p = parse_pair(o_.p, "--p");
    const Exponent q = o_.chamber.empty() ? atlas.chambers().front().representative : parse_pair(o_.chamber, "--chamber");
    const Series f = atlas.theta_local(p, q);
    if (o_.json) {
      Json j{{"p", io::to_json(p)}, {"chamber", io::to_json(q)}, {"cutoff", f.cutoff()}, {"series", io::to_json(f)}};
      if (o_.lines && !p.is_zero()) {
        Json ls = Json::array();
        for (const auto& l : atlas.broken_lines(p, q)) ls.push_back(io::to_json(l));
        j["broken_lines"] = std::move(ls);
      }
      emit(j);
    } else {
      std::ostringstream s;
      s << "theta" << to_string(p) << " at " << to_string(q) << " = " << f.to_string() << "\n";
      if (o_.lines && !p.is_zero()) {
        for (const auto& l : atlas.broken_lines(p, q)) {
          s << "  " << l.coefficient << " z^" << to_string(l.exponent) << " bends:";
          for (const auto& b : l.bends) s << " " << to_string(b.ray) << "[j=" << b.term << "]";
          s << "\n";
        }
      }
      out_ << s.str();
    }
    return kOk;
  }

  int expand() const {
    const Atlas atlas(load_diagram(o_.src), o_.jobs);
    const Series f = io::series_from_json(load_json(o_.series, "--series"), "series");
    const Exponent q = o_.chamber.empty() ? atlas.chambers().front().representative : parse_pair(o_.chamber, "--chamber");
    emit(io::to_json(atlas.expand(f, q)));
    return kOk;
  }

  int consistency() const {
    const auto r = check_consistency(load_diagram(o_.src), o_.jobs);
    emit(io::to_json(r));
    return r.pass ? kOk : kCheckFailed;
  }

  int wall_positivity() const {
    const auto r = check_wall_positivity(load_diagram(o_.src));
    emit(io::to_json(r));
    return r.pass ? kOk : kCheckFailed;
  }

  ThetaExpansion combo(const Atlas& atlas) const {
    if (o_.combo.empty()) throw FormatError("--combo", "required");
    return io::expansion_from_json(load_json(o_.combo, "--combo"), atlas.diagram().cutoff(), "combo");
  }

  int positivity(bool cluster_atlas) const {
    const Atlas atlas(load_diagram(o_.src), o_.jobs);
    const ThetaExpansion e = combo(atlas);
    const PositivityVerdict v =
        cluster_atlas ? cluster_atlas_positivity(atlas, e, o_.depth) : atlas.check_universal_positivity(e);
    Json j{{"suite", cluster_atlas ? "cluster-positivity" : "positivity"}, {"combo", io::to_json(e)}};
    j.update(io::to_json(v));
    emit(j);
    return v.kind == PositivityVerdict::Kind::NegativeWitness ? kCheckFailed : kOk;
  }

  int atomicity() const {
    const Atlas atlas(load_diagram(o_.src), o_.jobs);
    const ThetaExpansion e = combo(atlas);
    const AtomicityVerdict v = atlas.check_atomicity(e);
    Json j{{"suite", "atomicity"}, {"combo", io::to_json(e)}, {"cutoff", atlas.diagram().cutoff()}};
    j.update(io::to_json(v));
    emit(j);
    return v.kind == AtomicityVerdict::Kind::Atomic ? kOk : kCheckFailed;
  }

  int cluster_agreement() const {
    Atlas atlas(load_diagram(o_.src), o_.jobs);
    const auto r = check_cluster_theta_agreement(atlas, o_.depth);
    emit(io::to_json(r));
    return r.pass ? kOk : kCheckFailed;
  }

  int laurent() const {
    std::int64_t b = o_.src.b, c = o_.src.c;
    if (!o_.src.file.empty()) {
      const ScatteringDiagram d = load_diagram(o_.src);
      b = d.b();
      c = d.c();
    }
    const auto r = check_laurent_positivity(b, c, o_.depth);
    emit(io::to_json(r));
    return r.pass ? kOk : kCheckFailed;
  }

  int transition() const {
    const Atlas atlas(load_diagram(o_.src), o_.jobs);
    const auto exps = parse_pairs(o_.exponents, "--exponents");
    std::vector<std::pair<Exponent, Exponent>> pairs;
    const bool explicit_pair = !o_.from.empty() || !o_.to.empty();
    if (explicit_pair) {
      if (o_.from.empty() || o_.to.empty()) throw FormatError("--from/--to", "give both basepoints");
      pairs.emplace_back(parse_pair(o_.from, "--from"), parse_pair(o_.to, "--to"));
    } else {
      for (const auto& a : atlas.chambers()) {
        for (const auto& b : atlas.chambers()) pairs.emplace_back(a.representative, b.representative);
      }
    }
    bool pass = true;
    Json reports = Json::array();
    for (const auto& [from, to] : pairs) {
      const TransitionReport r = atlas.check_transition_positivity(from, to, exps);
      pass = pass && r.pass;
      Json j = io::to_json(r);
      if (!explicit_pair && !o_.witnesses && r.pass) j.erase("witnesses");
      reports.push_back(std::move(j));
    }
    emit({{"suite", "transition"}, {"verdict", pass ? "pass" : "fail"}, {"cutoff", atlas.diagram().cutoff()},
          {"pairs", std::move(reports)}});
    return pass ? kOk : kCheckFailed;
  }

  int svg() const {
    Atlas atlas(load_diagram(o_.src), o_.jobs);
    if (!o_.no_shade) check_cluster_theta_agreement(atlas, o_.depth);
    const std::string doc = export_svg(atlas.diagram(), atlas.chambers());
    if (o_.out.empty()) {
      out_ << doc;
    } else {
      std::ofstream f(o_.out);
      if (!f) throw FormatError("--out", "cannot write file '" + o_.out + "'");
      f << doc;
    }
    return kOk;
  }

 private:
  Options& o_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  Runner runner(o, out);
  std::function<int()> action;

  CLI::App app{"Rank-2 scattering diagrams, theta functions and positivity checks", "theta-forge"};
  app.require_subcommand(1);
  app.add_option("--jobs", o.jobs, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  auto* build = app.add_subcommand("build", "Build and complete a scattering diagram");
  add_source(build, o.src);
  build->add_option("--out", o.out, "Output file (default stdout)");
  build->callback([&] { action = [&] { return runner.build(); }; });

  auto* theta = app.add_subcommand("theta", "Localize a theta function at a basepoint");
  add_source(theta, o.src);
  theta->add_option("--p", o.p, "Exponent M1,M2")->required();
  theta->add_option("--chamber", o.chamber, "Basepoint Q1,Q2 (default: first chamber)");
  auto* json_flag = theta->add_flag("--json", o.json, "JSON output");
  theta->add_flag("--pretty", o.pretty, "Human-readable output (default)")->excludes(json_flag);
  theta->add_flag("--broken-lines", o.lines, "Also list the broken lines");
  theta->add_option("--out", o.out, "Output file for --json");
  theta->callback([&] { action = [&] { return runner.theta(); }; });

  auto* expand = app.add_subcommand("expand", "Expand a series in the theta basis");
  add_source(expand, o.src);
  expand->add_option("--series", o.series, "Series JSON file (or inline JSON)")->required();
  expand->add_option("--chamber", o.chamber, "Basepoint Q1,Q2 of the series (default: first chamber)");
  expand->add_option("--out", o.out, "Output file (default stdout)");
  expand->callback([&] { action = [&] { return runner.expand(); }; });

  auto* check = app.add_subcommand("check", "Run a check suite");
  check->require_subcommand(1);
  auto suite = [&](const char* name, const char* help, std::function<int()> body) {
    auto* s = check->add_subcommand(name, help);
    add_source(s, o.src);
    s->add_option("--out", o.out, "Report file (default stdout)");
    s->callback([&action, body] { action = body; });
    return s;
  };
  suite("consistency", "Full-loop product fixes the four generators", [&] { return runner.consistency(); });
  suite("wall-positivity", "All wall coefficients are non-negative", [&] { return runner.wall_positivity(); });
  suite("positivity", "Universal positivity on the scattering atlas", [&] { return runner.positivity(false); })
      ->add_option("--combo", o.combo, "ThetaExpansion JSON (inline or file)");
  auto* cp = suite("cluster-positivity", "Positivity on cluster chambers only (exploratory)",
                   [&] { return runner.positivity(true); });
  cp->add_option("--combo", o.combo, "ThetaExpansion JSON (inline or file)");
  cp->add_option("--depth", o.depth, "Mutation depth");
  suite("atomicity", "Atomicity on the scattering atlas", [&] { return runner.atomicity(); })
      ->add_option("--combo", o.combo, "ThetaExpansion JSON (inline or file)");
  suite("cluster-agreement", "Theta functions at g-vectors equal cluster variables",
        [&] { return runner.cluster_agreement(); })
      ->add_option("--depth", o.depth, "Mutation depth");
  suite("laurent-positivity", "Cluster variables are positive Laurent polynomials in every seed",
        [&] { return runner.laurent(); })
      ->add_option("--depth", o.depth, "Mutation depth");
  auto* tr = suite("transition", "Path-ordered products give positive fractions", [&] { return runner.transition(); });
  tr->add_option("--from", o.from, "Basepoint Q1,Q2");
  tr->add_option("--to", o.to, "Basepoint Q1,Q2");
  tr->add_option("--exponents", o.exponents, "Monomials as M1,M2;M1,M2;...");
  tr->add_flag("--witnesses", o.witnesses, "Keep witnesses of passing pairs in all-pairs mode");

  auto* svg = app.add_subcommand("svg", "Export the diagram as SVG");
  add_source(svg, o.src);
  svg->add_option("--out", o.out, "Output file (default stdout)");
  svg->add_option("--depth", o.depth, "Mutation depth for cluster shading");
  svg->add_flag("--no-shade", o.no_shade, "Do not shade cluster chambers");
  svg->callback([&] { action = [&] { return runner.svg(); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const int code = action();
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    err << "duration_ms " << static_cast<long long>(ms) << "\n";
    return code;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace thetaforge::cli
