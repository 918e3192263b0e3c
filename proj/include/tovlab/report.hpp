#pragma once

// JSON and CSV forms of every report. Documents carry "schema": "tovlab/1";
// non-finite numbers are written as the strings "+inf", "-inf" and "nan".

#include <string>
#include <vector>

#include <json.hpp>

#include "tovlab/catalog.hpp"
#include "tovlab/classify.hpp"
#include "tovlab/drivers.hpp"
#include "tovlab/extended_line.hpp"

namespace tovlab {

using json = nlohmann::json;

inline constexpr const char* kSchema = "tovlab/1";

json number_to_json(double x);
double number_from_json(const json& j);

/// {"schema": ..., "kind": kind, "data": data}
json document(const std::string& kind, json data);
/// Checks the schema tag and kind; returns the data member.
const json& document_data(const json& doc, const std::string& kind);

void to_json(json& j, const Params& p);
void from_json(const json& j, Params& p);
void to_json(json& j, const Tolerances& t);
void from_json(const json& j, Tolerances& t);
void to_json(json& j, const Interval& iv);
void from_json(const json& j, Interval& iv);
void to_json(json& j, const Domain& d);
void from_json(const json& j, Domain& d);

void to_json(json& j, const ResidualStat& s);
void from_json(const json& j, ResidualStat& s);
void to_json(json& j, const VerificationReport& r);
void from_json(const json& j, VerificationReport& r);

void to_json(json& j, const Cavity& c);
void from_json(const json& j, Cavity& c);
void to_json(json& j, const Segment& s);
void from_json(const json& j, Segment& s);
void to_json(json& j, const ClassificationFlags& f);
void from_json(const json& j, ClassificationFlags& f);
void to_json(json& j, const ClassificationReport& r);
void from_json(const json& j, ClassificationReport& r);

void to_json(json& j, const ScanPoint& s);
void from_json(const json& j, ScanPoint& s);
void to_json(json& j, const ChangePoint& c);
void from_json(const json& j, ChangePoint& c);
void to_json(json& j, const CriticalScanResult& r);
void from_json(const json& j, CriticalScanResult& r);

void to_json(json& j, const Row1Report& r);
void from_json(const json& j, Row1Report& r);
void to_json(json& j, const CubicRoots& r);
void from_json(const json& j, CubicRoots& r);

void to_json(json& j, const TailSample& s);
void from_json(const json& j, TailSample& s);
void to_json(json& j, const TailReport& r);
void from_json(const json& j, TailReport& r);
void to_json(json& j, const Certificate& c);
void from_json(const json& j, Certificate& c);
void to_json(json& j, const TailsReport& r);
void from_json(const json& j, TailsReport& r);

void to_json(json& j, const SolvePoint& s);
void from_json(const json& j, SolvePoint& s);
void to_json(json& j, const SolveReport& r);
void from_json(const json& j, SolveReport& r);

void to_json(json& j, const CatalogEntry& e);

/// Every entry with its formulas and notes, plus the alias table.
json catalog_json();

/// r,value,flag rows of rho on the standard grid; flag is ok or
/// near_singularity (within 1e-2 (1 + r) of a singular radius).
std::string density_plot_csv(const CatalogEntry& e, const Params& p, const Tolerances& tol, std::size_t n = 400,
                             double r_hi = 10.0);
std::string solve_csv(const SolveReport& r);
std::string scan_csv(const CriticalScanResult& r);
std::string verify_csv(const std::vector<VerificationReport>& rs);
std::string tails_csv(const std::vector<TailsReport>& rs);
std::string classify_csv(const ClassificationReport& r);

}  // namespace tovlab
