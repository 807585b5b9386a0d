#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "wco/halfplane.hpp"
#include "wco/identification.hpp"
#include "wco/schlicht.hpp"

namespace wco::io {

using json = nlohmann::ordered_json;

json to_json(complex z);
json to_json(const TaylorSeries& s);
json to_json(const CircleSamples& cs);
json to_json(const WCOperator& a);
json to_json(const PointEvalOperator& e);
json to_json(const Plane& p);
json to_json(const SeparationVerdict& v);
json to_json(const ZeroFreeUnit& h);
json to_json(const DecompositionRecord& d);
json to_json(const IdentificationResult& r);
json to_json(const Settings& s);

complex complex_from(const json& j);
TaylorSeries series_from(const json& j);
CircleSamples samples_from(const json& j);
WCOperator operator_from(const json& j, const Settings& cfg = default_settings());
PointEvalOperator point_eval_from(const json& j, const Settings& cfg = default_settings());
Plane plane_from(const json& j, const Settings& cfg = default_settings());
Witness witness_from(const json& j, const Settings& cfg = default_settings());
/// Overrides the fields present in `j`; unknown keys are a ParseError.
Settings settings_from(const json& j, Settings base = default_settings());

/// An image is given either by coefficients or by samples on a circle.
using Image = std::variant<TaylorSeries, CircleSamples>;
Image image_from(const json& j);

struct ProbeRecord {
  Plane plane;
  Image af;
  Image ag;
};
ProbeRecord probe_from(const json& j, const Settings& cfg = default_settings());

/// Catalog documents: {"entries": [{"name", "kind", "param"} | {"name", "series"}]}.
std::vector<CatalogEntry> catalog_from(const json& j, int order, const Settings& cfg = default_settings());
json catalog_document(const std::vector<CatalogEntry>& entries);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// "t,re,im" with a uniform grid starting at t = 0.
TimeSignal read_signal_csv(std::istream& in);
TimeSignal read_signal_csv_file(const std::string& path);
void write_signal_csv(std::ostream& out, const TimeSignal& x);
/// "re_z,im_z,re_v,im_v".
HalfPlaneSamples read_halfplane_csv(std::istream& in);
void write_halfplane_csv(std::ostream& out, const HalfPlaneSamples& s);

}  // namespace wco::io
