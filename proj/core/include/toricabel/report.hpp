#pragma once

// JSON views of library results.  Complex numbers are [re, im]; polynomials
// are [[exponent], re, im] term lists.

#include "toricabel/abel_trace.hpp"
#include "toricabel/decomposition.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace toricabel {

nlohmann::json to_json(Complex z);
nlohmann::json to_json(const CVec& v);
nlohmann::json to_json(const CPoly& p);
nlohmann::json to_json(const Cone& c);
nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const HPolytope& p);
nlohmann::json to_json(const OrbitalTable& t);
nlohmann::json to_json(const RationalFit& f);
nlohmann::json to_json(const FitSet& f);
nlohmann::json to_json(const TraceDataset& ds);
nlohmann::json to_json(const InversionReport& r);

/// Like json::dump, but every floating-point value is printed with %.17g.
std::string dump_json(const nlohmann::json& doc, int indent = 2);

}  // namespace toricabel
