// alexpoly: Alexander polynomials of tangle-built links from the command line.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "alexpoly/closedform.hpp"
#include "alexpoly/engine.hpp"
#include "alexpoly/oracle.hpp"

using namespace alexpoly;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kInputError = 1, kDisagree = 2 };

struct Options {
  std::string method = "engine";
  std::string orient = "auto";
  std::string from_pd;
  bool json = false;
  bool no_fastpath = false;
};

struct Report {
  std::string input;
  std::string closure;
  int components = 0;
  std::string classification;
  std::vector<std::pair<std::string, LaurentPoly>> results;
  std::vector<std::string> notes;

  bool agree() const {
    for (const auto& [name, p] : results)
      if (!dotequal(p, results.front().second)) return false;
    return true;
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

long parse_long(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(trim(s), &used);
  } catch (const std::exception&) {
    throw InvalidInput("not an integer: '" + s + "'");
  }
  if (used != trim(s).size()) throw InvalidInput("not an integer: '" + s + "'");
  return v;
}

OrientationPolicy parse_orient(const std::string& text) {
  if (text == "auto") return OrientationPolicy::automatic();
  if (text.rfind("bits=", 0) == 0) {
    std::vector<int> bits;
    for (const std::string& b : split(text.substr(5), ',')) {
      const long v = parse_long(b);
      if (v != 1 && v != -1) throw InvalidInput("orientation bits must be +1 or -1");
      bits.push_back(static_cast<int>(v));
    }
    return OrientationPolicy::from_bits(bits);
  }
  if (text == "preset=montesinos-odd") return OrientationPolicy::montesinos(MontesinosPreset::Odd);
  if (text == "preset=montesinos-even") return OrientationPolicy::montesinos(MontesinosPreset::Even);
  if (text == "preset=2comp") return OrientationPolicy::montesinos(MontesinosPreset::TwoComp);
  if (text == "preset=ncomp") return OrientationPolicy::montesinos(MontesinosPreset::NComp);
  throw InvalidInput("unknown orientation '" + text + "'");
}

std::vector<std::string> methods_for(const std::string& method, bool closed_form_possible) {
  if (method == "all") {
    std::vector<std::string> m{"engine"};
    if (closed_form_possible) m.emplace_back("closed-form");
    m.emplace_back("fox");
    m.emplace_back("q-matrix");
    return m;
  }
  if (method == "engine" || method == "closed-form" || method == "fox" || method == "q-matrix") return {method};
  throw InvalidInput("unknown method '" + method + "'");
}

LaurentPoly run_engine(const LinkDiagram& ld, const Options& opt, Report& rep) {
  const EngineOptions eo{!opt.no_fastpath, !opt.no_fastpath};
  try {
    return alexander(ld, eo);
  } catch (const DivisionByZero&) {
    rep.notes.emplace_back("engine hit a zero denominator; fell back to the Fox oracle");
    return alexander_fox(ld);
  }
}

Report compute_pd(const std::string& path, const Options& opt) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const LinkDiagram ld = from_pd(buf.str());
  Report rep{path, "pd", ld.num_components, "", {}, {}};
  if (opt.method == "engine" || opt.method == "closed-form")
    throw InvalidInput("method " + opt.method + " needs a tangle expression, not a PD file");
  for (const std::string& m : methods_for(opt.method, false)) {
    if (m == "fox") rep.results.emplace_back(m, alexander_fox(ld));
    if (m == "q-matrix") rep.results.emplace_back(m, alexander_q(ld));
  }
  return rep;
}

Report compute_expr(const std::string& text, const Options& opt) {
  LinkSpec spec = parse_link(text);
  spec.orientation = parse_orient(opt.orient);

  std::optional<MontesinosSpec> ms;
  if (spec.closure == Closure::D) {
    const auto f = montesinos_factors(spec.expr);
    if (f && f->size() >= 3) ms = MontesinosSpec{*f};
  }
  const bool wants_cf = opt.method == "closed-form" || opt.method == "all";
  if (opt.method == "closed-form" && !ms)
    throw InvalidInput("closed-form needs D of a product of at least three rational tangles");

  Report rep{text, spec.closure == Closure::D ? "D" : "N", 0, "", {}, {}};
  bool use_cf = false;
  if (ms && wants_cf) {
    const MontesinosClass cls = montesinos_class(ms->fractions);
    rep.classification = to_string(cls);
    if (spec.orientation.kind == OrientationPolicy::Kind::Bits && cls.components > 1) {
      if (opt.method == "closed-form")
        throw InvalidInput("closed-form fixes its own orientation; drop --orient bits=");
      rep.notes.emplace_back("closed-form skipped: explicit orientation bits on a link");
    } else {
      use_cf = true;
      const LinkSpec preset = montesinos_link_spec(*ms);
      if (cls.components > 1 || montesinos_factors(preset.expr) != ms->fractions)
        rep.notes.emplace_back("evaluated on " + to_string(preset) + " with the Montesinos preset orientation");
      spec = preset;
    }
  }
  const LinkDiagram ld = make_link(spec);
  rep.components = ld.num_components;
  for (const std::string& m : methods_for(opt.method, use_cf)) {
    if (m == "engine") rep.results.emplace_back(m, run_engine(ld, opt, rep));
    if (m == "closed-form") rep.results.emplace_back(m, montesinos(*ms));
    if (m == "fox") rep.results.emplace_back(m, alexander_fox(ld));
    if (m == "q-matrix") rep.results.emplace_back(m, alexander_q(ld));
  }
  return rep;
}

json to_json(const Report& rep) {
  json results = json::object();
  for (const auto& [name, p] : rep.results) results[name] = to_string(p);
  json j = {{"input", rep.input},
            {"closure", rep.closure},
            {"components", rep.components},
            {"method_results", results},
            {"agree", rep.agree()}};
  if (!rep.classification.empty()) j["classification"] = rep.classification;
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  return j;
}

int print(const Report& rep, const Options& opt) {
  for (const std::string& n : rep.notes) std::cerr << "note: " << n << "\n";
  if (opt.json) {
    std::cout << to_json(rep).dump(2) << "\n";
  } else if (rep.results.size() == 1 && rep.classification.empty()) {
    std::cout << to_string(rep.results.front().second) << "\n";
  } else {
    if (!rep.classification.empty()) std::cout << "classification: " << rep.classification << "\n";
    std::cout << "components: " << rep.components << "\n";
    for (const auto& [name, p] : rep.results) std::cout << std::left << std::setw(13) << name << to_string(p) << "\n";
    for (std::size_t i = 0; i < rep.results.size(); ++i)
      for (std::size_t j = i + 1; j < rep.results.size(); ++j)
        std::cout << rep.results[i].first << " vs " << rep.results[j].first << ": "
                  << (dotequal(rep.results[i].second, rep.results[j].second) ? "agree" : "DISAGREE") << "\n";
  }
  return rep.agree() ? kOk : kDisagree;
}

Report closed_form_report(const MontesinosSpec& ms, const std::string& input, std::optional<LaurentPoly> value) {
  const MontesinosClass cls = montesinos_class(ms.fractions);
  const LinkSpec spec = montesinos_link_spec(ms);
  Report rep{input, "D", cls.components, to_string(cls), {}, {}};
  rep.results.emplace_back("closed-form", value ? *value : montesinos(ms));
  rep.results.emplace_back("engine", alexander(spec));
  return rep;
}

struct CorpusEntry {
  int line = 0;
  std::string name, expression, expected, source;
};

std::vector<CorpusEntry> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read corpus " + path);
  std::vector<CorpusEntry> out;
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const std::vector<std::string> f = split(s, '|');
    if (f.size() != 4) throw ParseError("corpus line " + std::to_string(line) + ": expected 4 '|'-separated fields", 0);
    CorpusEntry e{line, trim(f[0]), trim(f[1]), trim(f[2]), trim(f[3])};
    if (e.name.empty() || e.expression.empty())
      throw ParseError("corpus line " + std::to_string(line) + ": empty name or expression", 0);
    if (e.expected != "-" && e.source != "published" && e.source != "derived")
      throw ParseError("corpus line " + std::to_string(line) + ": source must be published or derived", 0);
    out.push_back(e);
  }
  return out;
}

int run_corpus(const std::string& path, const Options& base) {
  const std::vector<CorpusEntry> entries = read_corpus(path);
  Options opt = base;
  opt.method = "all";
  int failures = 0;
  json all = json::array();
  if (!opt.json) std::cout << entries.size() << " entries\n";
  for (const CorpusEntry& e : entries) {
    std::string status = "ok", detail;
    Report rep;
    try {
      rep = compute_expr(e.expression, opt);
      if (!rep.agree()) status = "FAIL", detail = "methods disagree";
      if (e.expected != "-" && !dotequal(rep.results.front().second, parse_poly(e.expected)))
        status = "FAIL", detail = "expected " + e.expected + ", got " + to_string(rep.results.front().second);
    } catch (const Error& ex) {
      status = "FAIL", detail = ex.what();
    }
    failures += status != "ok";
    if (opt.json) {
      json j = rep.results.empty() ? json::object() : to_json(rep);
      j["name"] = e.name;
      j["status"] = status;
      if (!detail.empty()) j["detail"] = detail;
      all.push_back(j);
    } else {
      std::cout << std::left << std::setw(28) << e.name << std::setw(6) << status
                << (rep.results.empty() ? std::string("-") : to_string(rep.results.front().second));
      if (!detail.empty()) std::cout << "   [" << detail << "]";
      std::cout << "\n";
    }
  }
  if (opt.json)
    std::cout << json{{"entries", entries.size()}, {"failures", failures}, {"results", all}}.dump(2) << "\n";
  else
    std::cout << (entries.size() - failures) << "/" << entries.size() << " passed\n";
  return failures ? kDisagree : kOk;
}

std::vector<std::string> list_items(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const std::string& a : args)
    for (const std::string& s : split(a, ','))
      if (!trim(s).empty()) out.push_back(trim(s));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alexander polynomials of links built from tangles"};
  app.require_subcommand(1);
  Options opt;
  std::string expr, corpus_path;
  std::vector<std::string> list;

  auto add_common = [&](CLI::App* sub) { sub->add_flag("--json", opt.json, "JSON output"); };

  CLI::App* compute = app.add_subcommand("compute", "Alexander polynomial of D(T) or N(T)");
  compute->add_option("expression", expr, "link expression, e.g. \"D([1/3])\"");
  compute->add_option("--method", opt.method, "engine | closed-form | fox | q-matrix | all");
  compute->add_option("--orient", opt.orient, "auto | bits=<+-1,...> | preset=<montesinos-odd|montesinos-even|2comp|ncomp>");
  compute->add_option("--from-pd", opt.from_pd, "read the diagram from a PD file");
  compute->add_flag("--no-fastpath", opt.no_fastpath, "disable the rational-tangle and twist shortcuts");
  add_common(compute);

  CLI::App* pretzel_cmd = app.add_subcommand("pretzel", "closed form for the pretzel link p1,...,pr");
  pretzel_cmd->add_option("twists", list, "comma-separated twists, e.g. -2,3,7")->required();
  add_common(pretzel_cmd);

  CLI::App* montesinos_cmd = app.add_subcommand("montesinos", "closed form for [p1/q1]*...*[pr/qr]");
  montesinos_cmd->add_option("fractions", list, "comma-separated fractions, e.g. 1/2,1/3,-1/7")->required();
  add_common(montesinos_cmd);

  CLI::App* corpus = app.add_subcommand("corpus", "run a regression corpus with every method");
  corpus->add_option("path", corpus_path, "corpus file")->required();
  add_common(corpus);

  CLI::App* pd = app.add_subcommand("pd", "PD code of a link expression");
  pd->add_option("expression", expr, "link expression")->required();
  pd->add_option("--orient", opt.orient, "orientation policy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*compute) {
      if (!opt.from_pd.empty()) return print(compute_pd(opt.from_pd, opt), opt);
      if (expr.empty()) throw InvalidInput("compute needs an expression or --from-pd");
      return print(compute_expr(expr, opt), opt);
    }
    if (*pretzel_cmd) {
      PretzelSpec p;
      for (const std::string& s : list_items(list)) p.twists.push_back(static_cast<int>(parse_long(s)));
      const LaurentPoly value = pretzel(p);
      std::string input = "pretzel ";
      for (std::size_t i = 0; i < p.twists.size(); ++i) input += (i ? "," : "") + std::to_string(p.twists[i]);
      return print(closed_form_report(as_montesinos(p), input, value), opt);
    }
    if (*montesinos_cmd) {
      MontesinosSpec ms;
      for (const std::string& s : list_items(list)) {
        const auto slash = s.find('/');
        const long p = parse_long(s.substr(0, slash));
        const long q = slash == std::string::npos ? 1 : parse_long(s.substr(slash + 1));
        ms.fractions.emplace_back(p, q);
      }
      return print(closed_form_report(ms, to_string(montesinos_link_spec(ms)), std::nullopt), opt);
    }
    if (*corpus) return run_corpus(corpus_path, opt);
    if (*pd) {
      LinkSpec spec = parse_link(expr);
      spec.orientation = parse_orient(opt.orient);
      std::cout << to_pd(make_link(spec));
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
