#include "cli.hpp"

#include "toricabel/abel_trace.hpp"
#include "toricabel/decomposition.hpp"
#include "toricabel/errors.hpp"
#include "toricabel/report.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

namespace toricabel::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string fan = "P2";
  std::string bundle;
  bool json = false;
  std::uint64_t seed = 1;
  double tol = 1e-10;
  double cluster = 1e-7;
  double singular = 1e-8;
  double fit_tol = 1e-7;
  double accept = 1e-5;
  std::size_t grid = 0;
  std::string tau;
  std::string cycle;
  std::string random;
  std::string curve;
  std::string form;
  bool form_zero = false;
};

FanPtr checked_fan(const Options& o, json* report = nullptr) {
  FanPtr fan = load_fan(o.fan);
  const ValidationReport v = validate_fan(*fan);
  if (report) *report = to_json(v);
  std::string why;
  for (const auto& f : v.failures) why += "\n  " + f;
  if (v.malformed) throw InputError("malformed fan:" + why);
  if (!v.smooth || !v.complete) throw DegeneracyError("fan is not smooth and complete:" + why);
  return fan;
}

json read_json(const std::string& text_or_path) {
  std::ifstream in(text_or_path);
  try {
    if (in) return json::parse(in);
    return json::parse(text_or_path);
  } catch (const json::exception& e) {
    throw InputError("cannot parse '" + text_or_path + "': " + e.what());
  }
}

/// {"terms": [[[i, j], re, im], ...]} or a bare term list.
CPoly poly_from_json(const json& doc, std::size_t nvars) {
  const json& terms = doc.is_object() ? doc.at("terms") : doc;
  CPoly p(nvars);
  try {
    for (const auto& t : terms) {
      const auto e = t.at(0).get<Exponent>();
      if (e.size() != nvars) throw InputError("monomial with " + std::to_string(e.size()) + " exponents");
      p.add_term(e, Complex(t.at(1).get<double>(), t.size() > 2 ? t.at(2).get<double>() : 0.0));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed polynomial document: ") + e.what());
  }
  return p;
}

std::vector<std::size_t> parse_ids(const std::string& text) {
  std::vector<std::size_t> ids;
  std::string cur;
  for (char ch : text + ",") {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      cur += ch;
    } else if (ch == ',' || ch == ' ' || ch == '{' || ch == '}' || ch == '[' || ch == ']') {
      if (!cur.empty()) ids.push_back(std::stoul(cur));
      cur.clear();
    } else {
      throw InputError("bad cone '" + text + "'");
    }
  }
  return ids;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string join_cones(const std::vector<Cone>& cs) {
  if (cs.empty()) return "none";
  std::string s;
  for (const auto& c : cs) s += (s.empty() ? "" : " ") + to_string(c);
  return s;
}

int cmd_check(const Options& o, std::ostream& out) {
  json doc;
  json fan_report;
  FanPtr fan;
  try {
    fan = checked_fan(o, &fan_report);
  } catch (const DegeneracyError&) {
    out << (o.json ? dump_json({{"fan", fan_report}}) : "fan is not smooth and complete") << "\n";
    throw;
  }
  doc["fan"] = fan_report;
  const SplitBundle e = parse_bundle(fan, o.bundle);
  json lbs = json::array();
  for (const auto& l : e.line_bundles()) {
    const auto [mobile, fixed] = mobile_fixed_split(*fan, l.divisor());
    json bl = json::array();
    for (const auto& c : base_locus_cones(l)) bl.push_back(to_json(c));
    lbs.push_back({{"k", to_string(l.divisor().k)},
                   {"sections", l.section_count()},
                   {"globally_generated", is_globally_generated(l)},
                   {"mobile", to_string(mobile.k)},
                   {"fixed", to_string(fixed.k)},
                   {"base_locus", bl}});
  }
  doc["line_bundles"] = lbs;
  doc["essential"] = is_essential(e.polytopes());
  doc["very_ample"] = is_very_ample_bundle(e);
  json star = json::array();
  for (const auto& s : fan->max_cones())
    star.push_back({{"chart", to_json(s)}, {"star", satisfies_condition_star(e, s)}});
  doc["condition_star"] = star;
  bool all_gg = true;
  for (const auto& l : lbs) all_gg = all_gg && l["globally_generated"].get<bool>();
  doc["globally_generated"] = all_gg;

  if (o.json) {
    out << dump_json(doc) << "\n";
    return kPass;
  }
  out << "fan " << fan->name() << ": smooth yes, complete yes\n";
  for (std::size_t i = 0; i < e.rank(); ++i) {
    const json& l = lbs[i];
    out << "L" << i + 1 << " k=" << l["k"].get<std::string>() << ": sections " << l["sections"]
        << ", gg " << yes(l["globally_generated"]) << ", fixed part " << l["fixed"].get<std::string>()
        << ", base locus " << join_cones(base_locus_cones(e[i])) << "\n";
  }
  out << "gg " << yes(all_gg) << "\nessential " << yes(doc["essential"]) << "\nvery_ample "
      << yes(doc["very_ample"]) << "\n";
  bool any = false;
  for (const auto& s : star) any = any || s["star"].get<bool>();
  out << "star " << yes(any) << " (";
  for (std::size_t i = 0; i < star.size(); ++i)
    out << (i ? " " : "") << to_string(fan->max_cones()[i]) << ":" << yes(star[i]["star"]);
  out << ")\n";
  return kPass;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  const FanPtr fan = checked_fan(o);
  const SplitBundle e = parse_bundle(fan, o.bundle);
  const OrbitalTable t = orbital_decomposition(e);
  if (o.json) {
    out << dump_json(to_json(t)) << "\n";
    return kPass;
  }
  out << t.entries.size() << " component(s), " << t.pairs_examined << " pairs examined\n";
  for (const auto& r : t.entries) {
    out << "I={";
    for (std::size_t i = 0; i < r.I.size(); ++i) out << (i ? "," : "") << r.I[i] + 1;
    out << "} tau=" << to_string(r.tau) << " codim " << r.codim << "  " << r.evidence << "\n";
  }
  return kPass;
}

int cmd_mixvol(const Options& o, std::ostream& out) {
  const FanPtr fan = checked_fan(o);
  const SplitBundle e = parse_bundle(fan, o.bundle);
  std::vector<Cone> taus;
  if (o.tau.empty())
    taus = cones_of_dim(*fan, static_cast<int>(fan->n() - e.rank()));
  else
    taus.emplace_back(parse_ids(o.tau));
  json rows = json::array();
  for (const auto& t : taus) {
    const Integer v = intersection_number(e, t);
    rows.push_back({{"tau", to_json(t)}, {"value", to_int64(v)}});
    if (!o.json) out << to_string(t) << " " << v << "\n";
  }
  if (o.json) out << dump_json({{"intersection_numbers", rows}}) << "\n";
  return kPass;
}

int cmd_resultant_degree(const Options& o, std::ostream& out) {
  const FanPtr fan = checked_fan(o);
  const SplitBundle e = parse_bundle(fan, o.bundle);
  if (e.rank() < 1) throw InputError("empty bundle");
  const CycleClass w = cycle_from_json(*fan, read_json(o.cycle), e.rank() - 1);
  const IntVec d = resultant_multidegree(e, w);
  json arr = json::array();
  for (const auto& x : d) arr.push_back(to_int64(x));
  if (o.json)
    out << dump_json({{"multidegree", arr}}) << "\n";
  else
    out << to_string(d) << "\n";
  return kPass;
}

int cmd_invert(const Options& o, std::ostream& out) {
  const FanPtr fan = checked_fan(o);
  const SplitBundle e = parse_bundle(fan, o.bundle);
  if (fan->n() != 2 || e.rank() != 1)
    throw InputError("invert needs a surface fan and a single line bundle");
  const auto sigma = star_chart(e);
  if (!sigma) throw DegeneracyError("condition (*) fails on every chart of " + o.bundle);

  std::mt19937_64 rng(o.seed);
  CurveData curve;
  if (!o.curve.empty()) {
    curve.f = poly_from_json(read_json(o.curve), 2);
    std::vector<IntVec> pts;
    for (const auto& ex : curve.f.support()) pts.push_back(make_int_vec({ex[0], ex[1]}));
    curve.newton = HPolytope::from_points(2, pts);
  } else {
    if (o.random.empty()) throw InputError("invert needs --curve or --random");
    const bool digits = std::all_of(o.random.begin(), o.random.end(),
                                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
    const SplitBundle cls = parse_bundle(fan, digits ? o.random + "H" : o.random);
    curve = random_curve(chart_newton(*fan, cls[0].divisor(), *sigma), rng);
  }
  FormData form;
  if (o.form_zero) {
    form.h = CPoly(2);
  } else if (!o.form.empty()) {
    form.h = poly_from_json(read_json(o.form), 2);
  } else {
    form = random_form(HPolytope::from_points(
                           2, std::vector<IntVec>{make_int_vec({0, 0}), make_int_vec({1, 0}),
                                                  make_int_vec({0, 1})}),
                       rng);
  }

  InversionConfig cfg;
  cfg.seed = rng();
  cfg.trace.solve.tol = o.tol;
  cfg.trace.solve.cluster = o.cluster;
  cfg.trace.solve.singular = o.singular;
  cfg.fit_tol = o.fit_tol;
  cfg.accept = o.accept;
  cfg.grid_nodes = o.grid;
  const InversionReport r = invert(curve, form, e[0], cfg);

  if (o.json) {
    json doc = to_json(r);
    doc["hidden_curve"] = to_json(curve.f);
    doc["hidden_form"] = to_json(form.h);
    out << dump_json(doc) << "\n";
  } else {
    out << "chart " << to_string(r.sigma) << ", N = " << r.N << " (cycle count " << r.N_cycle << ")\n"
        << "nodes kept " << r.dataset_a.kept_count() << "/" << r.dataset_a.nodes.size() << " (A), "
        << r.dataset_b.kept_count() << "/" << r.dataset_b.nodes.size() << " (B)\n"
        << "sigma fits held-out " << r.sigma_fits.max_heldout << ", tau fits held-out "
        << r.form.tau.max_heldout << ", rational " << yes(r.rational) << "\n"
        << "recovered curve " << to_string(r.f_tilde) << "\n"
        << "curve error " << r.curve_error << ", run agreement " << r.run_agreement << "\n"
        << "form error " << r.form_error << "\n"
        << "propagation " << r.prop_discrepancy << " (half step " << r.prop_discrepancy_half << ")\n"
        << (r.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& line : r.log) out << "  " << line << "\n";
  }
  return r.pass ? kPass : kNumericFailure;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toric bundle invariants and Abel-trace inversion"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--fan", o.fan, "Built-in fan name or JSON file")->capture_default_str();
    sub->add_option("--bundle", o.bundle, "Bundle spec, e.g. H,2H or (1,1) or a JSON file")->required();
    sub->add_flag("--json", o.json, "Machine-readable output");
  };
  auto* check = app.add_subcommand("check", "Fan validity and bundle predicates");
  common(check);
  auto* decompose = app.add_subcommand("decompose", "Orbital decomposition of a generic subscheme");
  common(decompose);
  auto* mixvol = app.add_subcommand("mixvol", "Intersection numbers with orbit closures");
  common(mixvol);
  mixvol->add_option("--tau", o.tau, "Cone as ray ids, e.g. 0,1 (default: all of codim rank)");
  auto* resdeg = app.add_subcommand("resultant-degree", "Multidegree of the resultant of a cycle");
  common(resdeg);
  resdeg->add_option("--cycle", o.cycle, "JSON [[[ray ids], coeff], ...] or a file")->required();
  auto* invert = app.add_subcommand("invert", "Trace a hidden curve and form, then reconstruct them");
  common(invert);
  invert->add_option("--seed", o.seed)->capture_default_str();
  invert->add_option("--tol", o.tol, "Root residual tolerance")->capture_default_str();
  invert->add_option("--cluster", o.cluster)->capture_default_str();
  invert->add_option("--singular", o.singular, "Relative Jacobian threshold")->capture_default_str();
  invert->add_option("--fit-tol", o.fit_tol, "Held-out rationality tolerance")->capture_default_str();
  invert->add_option("--accept", o.accept, "Round-trip tolerance")->capture_default_str();
  invert->add_option("--grid", o.grid, "Grid nodes (0: 4N+12)")->capture_default_str();
  auto* src = invert->add_option_group("curve");
  src->add_option("--random", o.random, "Random curve of class d (d*H) or a bundle spec");
  src->add_option("--curve", o.curve, "Curve JSON {\"terms\": [[[i,j], re, im], ...]}");
  src->require_option(1);
  auto* frm = invert->add_option_group("form");
  frm->add_option("--form", o.form, "Form numerator h as a polynomial JSON");
  frm->add_flag("--form-zero", o.form_zero, "Use h = 0");
  frm->require_option(0, 1);

  std::vector<const char*> args;
  for (const auto& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*decompose) return cmd_decompose(o, out);
    if (*mixvol) return cmd_mixvol(o, out);
    if (*resdeg) return cmd_resultant_degree(o, out);
    return cmd_invert(o, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DegeneracyError& e) {
    err << "degenerate: " << e.what() << "\n";
    return kDegenerate;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace toricabel::cli
