#include "toricabel/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace toricabel {

using nlohmann::json;

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVec& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(to_json(z));
  return out;
}

json to_json(const CPoly& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(json::array({e, c.real(), c.imag()}));
  return out;
}

json to_json(const Cone& c) { return json(c.ray_ids); }

json to_json(const ValidationReport& r) {
  return {{"malformed", r.malformed}, {"smooth", r.smooth}, {"complete", r.complete},
          {"failures", r.failures}};
}

json to_json(const HPolytope& p) {
  json pts = json::array();
  for (const auto& m : p.lattice_points()) pts.push_back(to_string(m));
  return {{"dimension", p.dimension()}, {"vertices", serialize_vertices(p)}, {"lattice_points", pts}};
}

json to_json(const OrbitalTable& t) {
  json rows = json::array();
  for (const auto& e : t.entries)
    rows.push_back({{"I", e.I}, {"tau", to_json(e.tau)}, {"codim", e.codim}, {"evidence", e.evidence}});
  return {{"entries", rows}, {"pairs_examined", t.pairs_examined}};
}

json to_json(const RationalFit& f) {
  return {{"num", to_json(f.num)},   {"den", to_json(f.den)},           {"center", to_json(f.center)},
          {"scale", f.scale},        {"residual", f.residual},          {"heldout", f.heldout},
          {"num_degree", f.num_degree()}, {"den_degree", f.den_degree()}};
}

json to_json(const FitSet& f) {
  json fits = json::array();
  for (const auto& x : f.fits) fits.push_back(to_json(x));
  return {{"fits", fits}, {"max_heldout", f.max_heldout}, {"max_residual", f.max_residual}};
}

json to_json(const TraceDataset& ds) {
  json nodes = json::array();
  for (const auto& n : ds.nodes) {
    json j = {{"a0", to_json(n.a0)}, {"kept", n.kept}, {"count", n.count}};
    if (!n.note.empty()) j["note"] = n.note;
    if (n.kept) {
      j["w"] = to_json(n.w);
      j["y"] = to_json(n.y);
      j["sigma"] = to_json(n.sigma);
      j["rcond"] = n.rcond;
      j["singular"] = n.singular;
    }
    nodes.push_back(std::move(j));
  }
  return {{"N", ds.N},
          {"a_prime", to_json(ds.a_prime)},
          {"c", to_json(ds.c)},
          {"kept", ds.kept_count()},
          {"singular", ds.singular_count()},
          {"nodes", nodes}};
}

json to_json(const InversionReport& r) {
  return {{"chart", to_json(r.sigma)},
          {"N", r.N},
          {"N_cycle", r.N_cycle},
          {"run_a", to_json(r.dataset_a)},
          {"run_b", to_json(r.dataset_b)},
          {"sigma_fits", to_json(r.sigma_fits)},
          {"recovered_curve", to_json(r.f_tilde)},
          {"lambda", to_json(r.lambda)},
          {"curve_error", r.curve_error},
          {"run_agreement", r.run_agreement},
          {"tau_fits", to_json(r.form.tau)},
          {"form_num", to_json(r.form.num)},
          {"form_den", to_json(r.form.den)},
          {"form_error", r.form_error},
          {"propagation",
           {{"m", r.prop_m},
            {"m_prime", r.prop_m_prime},
            {"discrepancy", r.prop_discrepancy},
            {"discrepancy_half_step", r.prop_discrepancy_half}}},
          {"rational", r.rational},
          {"pass", r.pass},
          {"log", r.log}};
}

namespace {

void write(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent >= 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent >= 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent >= 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::number_float: {
      const double d = j.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out += buf;
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + json(it.key()).dump() + (indent >= 0 ? ": " : ":");
        write(it.value(), indent, depth + 1, out);
      }
      out += nl + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
      out += "[";
      bool first = true;
      for (const auto& x : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) out += nl + pad;
        first = false;
        write(x, indent, depth + 1, out);
      }
      if (!flat) out += nl + close;
      out += "]";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const json& doc, int indent) {
  std::string out;
  write(doc, indent, 0, out);
  return out;
}

}  // namespace toricabel
