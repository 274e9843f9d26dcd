#include "toric_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "toric/catalog.hpp"
#include "toric/cohomology.hpp"
#include "toric/collections.hpp"
#include "toric/errors.hpp"
#include "toric/fan_io.hpp"
#include "toric/frobenius.hpp"

namespace toric::cli {

using json = nlohmann::json;

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Usage and data problems: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  json results = json::object();
  std::vector<std::string> warnings;
  std::string digest_input;
  std::ostringstream text;
  bool passed = true;
};

struct Variety {
  std::string label;
  Fan fan;
  std::optional<IndexSet> basis;
  const FanoRecord* record = nullptr;
};

Variety load_variety(const std::string& name, const std::string& fan_file) {
  if (name.empty() == fan_file.empty())
    throw UsageError("exactly one of --variety or --fan-file is required");
  Variety v;
  if (!name.empty()) {
    v.record = &find_record(name);
    v.label = v.record->id;
    v.fan = v.record->fan;
    v.basis = v.record->basis;
  } else {
    v.fan = read_fan_file(fan_file);
    v.label = fan_file;
    require_valid(v.fan);
  }
  return v;
}

json one_based(const IndexSet& s) {
  json a = json::array();
  for (auto i : s) a.push_back(i + 1);
  return a;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string certificate_label(const PicBasisContext& ctx, const FullnessCertificate& c) {
  switch (c.kind) {
    case FullnessCertificate::Kind::SummandSetMatchesK0Rank:
      return "SummandSetMatchesK0Rank";
    case FullnessCertificate::Kind::KoszulReduction: {
      std::string s = "KoszulReduction(";
      for (std::size_t i = 0; i < c.reductions.size(); ++i)
        s += (i ? ", " : "") + ctx.format(c.reductions[i].extra);
      return s + ")";
    }
    case FullnessCertificate::Kind::NotCertified:
      break;
  }
  return "NotCertified";
}

json certificate_json(const PicBasisContext& ctx, const FullnessCertificate& c) {
  json j;
  const std::string label = certificate_label(ctx, c);
  j["kind"] = label.substr(0, label.find('('));
  j["reductions"] = json::array();
  for (const auto& r : c.reductions) {
    json red;
    red["extra"] = ctx.format(r.extra);
    red["primitive_collection"] = one_based(r.primitive_collection);
    red["terms"] = json::array();
    for (const auto& t : r.terms)
      red["terms"].push_back({{"degree", t.degree}, {"class", ctx.format(t.cls)}, {"multiplicity", t.multiplicity}});
    j["reductions"].push_back(red);
  }
  j["unexplained"] = json::array();
  for (const auto& u : c.unexplained) j["unexplained"].push_back(ctx.format(u));
  return j;
}

std::vector<std::string> read_collection_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open collection file '" + path + "'");
  std::vector<std::string> items;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    items.push_back(line.substr(first, last - first + 1));
  }
  return items;
}

void cmd_catalog_list(Report& rep) {
  json rows = json::array();
  rep.text << std::left << std::setw(5) << "id" << std::setw(22) << "variety" << std::setw(6) << "type"
           << std::setw(4) << "v" << std::setw(4) << "rho" << std::setw(4) << "k0" << std::setw(7)
           << "cones" << std::setw(6) << "fano" << "valid\n";
  for (const auto& r : load_catalog()) {
    const RecordCheck check = validate_record(r);
    bool fano = false;
    try {
      fano = is_fano(r.fan);
    } catch (const Error&) {
    }
    rep.passed = rep.passed && check.ok();
    rep.digest_input += emit_fan_text(r.fan);
    rep.text << std::setw(5) << r.id << std::setw(22) << r.name << std::setw(6) << r.type_class
             << std::setw(4) << r.upsilon << std::setw(4) << r.rho << std::setw(4) << r.k0 << std::setw(7)
             << r.fan.max_cones.size() << std::setw(6) << yes_no(fano) << yes_no(check.ok()) << "\n";
    for (const auto& f : check.failures) rep.warnings.push_back(r.id + ": " + f);
    rows.push_back({{"id", r.id},
                    {"name", r.name},
                    {"type", r.type_class},
                    {"upsilon", r.upsilon},
                    {"rho", r.rho},
                    {"k0", r.k0},
                    {"max_cones", r.fan.max_cones.size()},
                    {"fano", fano},
                    {"valid", check.ok()}});
  }
  rep.results["catalog"] = rows;
}

void cmd_thomsen(Report& rep, const Variety& v, std::vector<std::int64_t> primes,
                 const std::string& divisor_text) {
  if (primes.empty()) primes.assign(std::begin(kDefaultPrimes), std::end(kDefaultPrimes));
  for (auto p : primes)
    if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
  const auto ctx = PicBasisContext::build(v.fan, v.basis);
  ToricDivisor d = ToricDivisor::zero(v.fan.ray_count());
  if (!divisor_text.empty()) {
    std::istringstream is(divisor_text);
    d.coeffs.clear();
    std::int64_t x;
    while (is >> x) d.coeffs.push_back(x);
    if (!is.eof() || d.coeffs.size() != v.fan.ray_count())
      throw UsageError("--divisor needs " + std::to_string(v.fan.ray_count()) + " integers");
  }
  rep.digest_input = emit_fan_text(v.fan) + "|" + divisor_text;
  for (auto p : primes) rep.digest_input += "|" + std::to_string(p);

  std::vector<FrobeniusDecomposition> decs;
  for (auto p : primes) decs.push_back(decompose(ctx, d, p));
  std::set<DivisorClass> all;
  for (const auto& dec : decs)
    for (const auto& [cls, mult] : dec.summands) all.insert(cls);
  const auto first = decs.front().distinct_classes();
  const bool stabilized = std::all_of(decs.begin(), decs.end(),
                                      [&](const auto& dec) { return dec.distinct_classes() == first; });

  json summands = json::array();
  for (const auto& cls : all) {
    json mult = json::object();
    for (const auto& dec : decs) {
      auto it = dec.summands.find(cls);
      mult[std::to_string(dec.prime)] = it == dec.summands.end() ? 0 : it->second;
    }
    summands.push_back({{"class", ctx.format(cls)}, {"coords", cls.coords}, {"multiplicity", mult}});
  }
  rep.results["variety"] = v.label;
  rep.results["primes"] = primes;
  rep.results["divisor"] = ctx.format(ctx.to_class(d));
  rep.results["summands"] = summands;
  rep.results["stabilized"] = stabilized;

  rep.text << "variety: " << v.label << "\nprimes:";
  for (auto p : primes) rep.text << ' ' << p;
  rep.text << "\nstabilized: " << yes_no(stabilized) << "\n" << first.size() << " distinct summands:\n";
  for (const auto& cls : first) rep.text << "  " << ctx.format(cls) << "\n";
  if (!stabilized) {
    rep.passed = false;
    rep.warnings.push_back("summand sets differ across primes; use larger primes");
  }

  if (v.record && divisor_text.empty() && !v.record->expected_summands.empty()) {
    std::set<DivisorClass> expected, printed;
    for (const auto& s : v.record->expected_summands) expected.insert(ctx.parse(s));
    for (const auto& s : v.record->printed_summands) printed.insert(ctx.parse(s));
    const bool matches = first == expected;
    rep.results["matches_expected"] = matches;
    if (!matches) {
      rep.passed = false;
      rep.warnings.push_back("computed summands differ from the recorded expectation");
    }
    if (first != printed) {
      std::string msg = "computed summands differ from the printed list:";
      for (const auto& c : first)
        if (!printed.count(c)) msg += " +" + ctx.format(c);
      for (const auto& c : printed)
        if (!first.count(c)) msg += " -" + ctx.format(c);
      rep.warnings.push_back(msg);
    }
  }
}

void cmd_forbidden(Report& rep, const Variety& v) {
  const auto report = forbidden_sets(v.fan);
  rep.digest_input = emit_fan_text(v.fan);
  json sets = json::array();
  rep.text << "variety: " << v.label << "\n" << report.forbidden.size() << " forbidden sets:\n";
  for (std::size_t i = 0; i < report.forbidden.size(); ++i) {
    sets.push_back({{"set", one_based(report.forbidden[i])}, {"reduced_homology", report.forbidden_ranks[i]}});
    rep.text << "  " << format_index_set(report.forbidden[i]) << "  H~(deg -1..): ";
    for (auto r : report.forbidden_ranks[i]) rep.text << r << ' ';
    rep.text << "\n";
  }
  rep.results["variety"] = v.label;
  rep.results["fano"] = report.fano;
  rep.results["forbidden_sets"] = sets;
}

void cmd_cohomology(Report& rep, const Variety& v, const std::string& class_text,
                    std::optional<std::int64_t> box) {
  if (box && *box < 1) throw UsageError("--box must be at least 1");
  const auto ctx = PicBasisContext::build(v.fan, v.basis);
  DivisorClass cls;
  try {
    cls = ctx.parse(class_text);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  const auto report = forbidden_sets(v.fan);
  const auto table = cohomology_table(ctx, ctx.representative(cls), report, box);
  rep.digest_input = emit_fan_text(v.fan) + "|" + class_text;
  rep.results["variety"] = v.label;
  rep.results["class"] = ctx.format(cls);
  rep.results["dims"] = table.dims;
  rep.results["box_radius"] = table.box_radius_used;
  rep.text << "variety: " << v.label << "\nclass: " << ctx.format(cls) << "\ndims:";
  for (auto h : table.dims) rep.text << ' ' << h;
  rep.text << "\nbox radius: " << table.box_radius_used << "\n";
}

bool verify_one(Report& rep, json& out, const Variety& v, const std::vector<std::string>& items) {
  const auto ctx = PicBasisContext::build(v.fan, v.basis);
  OrderedCollection coll;
  try {
    coll = OrderedCollection::parse(ctx, items);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  const auto report = forbidden_sets(v.fan);
  auto vr = verify_strongly_exceptional(ctx, coll, report);
  const auto summands =
      stable_summands(ctx, ToricDivisor::zero(v.fan.ray_count()), std::span(kDefaultPrimes));
  vr.fullness = fullness_certificate(ctx, coll, summands);

  json bundles = json::array();
  for (const auto& b : coll.bundles) bundles.push_back(ctx.format(b));
  json acyclic = json::array(), sections = json::array();
  for (std::size_t a = 0; a < vr.size; ++a) {
    json arow = json::array(), srow = json::array();
    for (std::size_t b = 0; b < vr.size; ++b) {
      arow.push_back(static_cast<bool>(vr.acyclic[a][b]));
      if (a > b)
        srow.push_back(static_cast<bool>(vr.sections[a][b]));
      else
        srow.push_back(nullptr);
    }
    acyclic.push_back(arow);
    sections.push_back(srow);
  }
  const bool se = vr.strongly_exceptional();
  const bool full = vr.full();
  out["variety"] = v.label;
  out["bundles"] = bundles;
  out["pairwise"] = {{"acyclic", acyclic}, {"backward_sections", sections}};
  out["certificate"] = certificate_json(ctx, *vr.fullness);
  out["strongly_exceptional"] = se;
  out["full"] = full;

  rep.text << "variety: " << v.label << "\nbundles:";
  for (const auto& b : coll.bundles) rep.text << ' ' << ctx.format(b);
  rep.text << "\nstrongly exceptional: " << yes_no(se) << "\nfullness: " << certificate_label(ctx, *vr.fullness)
           << "\n";
  for (std::size_t a = 0; a < vr.size; ++a)
    for (std::size_t b = 0; b < vr.size; ++b) {
      if (!vr.acyclic[a][b])
        rep.text << "  not acyclic: " << ctx.format(coll.bundles[b] - coll.bundles[a]) << "\n";
      if (a > b && vr.sections[a][b])
        rep.text << "  backward section: " << ctx.format(coll.bundles[b] - coll.bundles[a]) << "\n";
    }
  for (const auto& u : vr.fullness->unexplained) rep.text << "  unexplained summand: " << ctx.format(u) << "\n";
  rep.digest_input += emit_fan_text(v.fan);
  for (const auto& s : items) rep.digest_input += "|" + s;
  return se && full;
}

void cmd_verify(Report& rep, const Variety& v, const std::string& collection_file) {
  std::vector<std::string> items;
  if (!collection_file.empty())
    items = read_collection_file(collection_file);
  else if (v.record && v.record->has_payload())
    items = v.record->collection;
  else
    throw UsageError("no default collection for '" + v.label + "'; pass --collection FILE");
  if (v.record && collection_file.empty())
    for (const auto& n : v.record->notes) rep.warnings.push_back(v.record->id + ": " + n);
  rep.passed = verify_one(rep, rep.results, v, items);
}

void cmd_prove(Report& rep) {
  json per = json::array();
  for (const char* id : {"D1", "D2", "E1", "E2", "E4"}) {
    const Variety v = load_variety(id, "");
    json entry;
    const bool ok = verify_one(rep, entry, v, v.record->collection);

    const auto ctx = PicBasisContext::build(v.fan, v.basis);
    const auto summands = stable_summands(ctx, ToricDivisor::zero(v.fan.ray_count()), std::span(kDefaultPrimes));
    std::set<DivisorClass> expected;
    for (const auto& s : v.record->expected_summands) expected.insert(ctx.parse(s));
    json listed = json::array();
    for (const auto& c : summands) listed.push_back(ctx.format(c));
    entry["summands"] = listed;
    entry["summands_match"] = summands == expected;
    for (const auto& n : v.record->notes) rep.warnings.push_back(v.record->id + ": " + n);

    const bool pass = ok && summands == expected;
    entry["pass"] = pass;
    rep.passed = rep.passed && pass;
    rep.text << "summands match: " << yes_no(summands == expected) << "\nresult: " << (pass ? "PASS" : "FAIL")
             << "\n\n";
    per.push_back(entry);
  }
  rep.results["theorems"] = per;
  rep.text << "main theorem: " << (rep.passed ? "verified" : "NOT verified") << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verify full strongly exceptional collections on smooth toric Fano 3-folds", "toric-exc"};
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.require_subcommand(1);
  app.fallthrough();

  auto* catalog = app.add_subcommand("catalog", "Catalog of smooth toric Fano 3-folds");
  catalog->add_subcommand("list", "List all records with structural checks");
  catalog->require_subcommand(1);

  std::string variety, fan_file, divisor, class_text, collection_file;
  std::vector<std::int64_t> primes;
  std::optional<std::int64_t> box;

  auto* thomsen = app.add_subcommand("thomsen", "Split the Frobenius pushforward into line bundles");
  thomsen->add_option("--variety", variety, "Catalog id or name");
  thomsen->add_option("--fan-file", fan_file, "Fan in the text interchange format");
  thomsen->add_option("--prime", primes, "Prime (repeatable; default 31 37)");
  thomsen->add_option("--divisor", divisor, "Divisor coefficients \"a1 a2 ...\" (default 0)");

  auto* forbidden = app.add_subcommand("forbidden", "List forbidden sets");
  forbidden->add_option("--variety", variety, "Catalog id or name");
  forbidden->add_option("--fan-file", fan_file, "Fan in the text interchange format");

  auto* cohomology = app.add_subcommand("cohomology", "Dimensions h^0..h^n of a line bundle");
  cohomology->add_option("--variety", variety, "Catalog id or name");
  cohomology->add_option("--fan-file", fan_file, "Fan in the text interchange format");
  cohomology->add_option("--class", class_text, "Class coordinates \"z1 z2 ...\" or an expression like Z4+Z5")
      ->required();
  cohomology->add_option("--box", box, "Search radius (default: bound of the sign-pattern arrangement)");

  auto* verify = app.add_subcommand("verify", "Check strong exceptionality and fullness");
  verify->add_option("--variety", variety, "Catalog id or name");
  verify->add_option("--fan-file", fan_file, "Fan in the text interchange format");
  verify->add_option("--collection", collection_file, "One class per line (default: recorded sequence)");

  auto* prove = app.add_subcommand("prove-main-theorem", "Verify the five Type IV sequences end to end");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  Report rep;
  try {
    if (catalog->parsed()) {
      cmd_catalog_list(rep);
    } else if (thomsen->parsed()) {
      cmd_thomsen(rep, load_variety(variety, fan_file), primes, divisor);
    } else if (forbidden->parsed()) {
      cmd_forbidden(rep, load_variety(variety, fan_file));
    } else if (cohomology->parsed()) {
      cmd_cohomology(rep, load_variety(variety, fan_file), class_text, box);
    } else if (verify->parsed()) {
      cmd_verify(rep, load_variety(variety, fan_file), collection_file);
    } else if (prove->parsed()) {
      cmd_prove(rep);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownVariety& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidFan& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotABasis& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }

  if (format == "json") {
    json doc;
    doc["command"] = args;
    doc["inputs_digest"] = fnv1a_hex(rep.digest_input);
    doc["results"] = rep.results;
    doc["warnings"] = rep.warnings;
    doc["passed"] = rep.passed;
    out << doc.dump(2) << "\n";
  } else {
    out << rep.text.str();
    for (const auto& w : rep.warnings) out << "warning: " << w << "\n";
  }
  return rep.passed ? kExitPass : kExitCheckFailed;
}

}  // namespace toric::cli
