#pragma once

// JSON views of the module results. Field names follow docs/report_schema.md.

#include <json.hpp>

#include "sf5/group_core.hpp"
#include "sf5/lens_extent.hpp"
#include "sf5/spaceform_rep.hpp"
#include "sf5/torus_actions.hpp"

namespace sf5 {

using json = nlohmann::json;

json to_json(GroupElement x);
json to_json(const Subgroup& h, i64 group_order);
json to_json(const S3Point& p);
json to_json(const SpherePoint& p);
json to_json(const IsotropyDescriptor& iso);
json to_json(const HarnessReport& report);
json to_json(const ExtentEstimate& e, const LensSpace& lens);
json to_json(const ScanTable& table);

/// Full predicate report for one presentation.
json group_report(const MetacyclicPresentation& g);

/// Relations, freeness and (for free reps) injectivity geometry.
json rep_report(const LinearSpaceForm& rep, i64 c, const SamplerParams& sampler);

/// Classification plus the fixed-set dimension sum (null unless k = 2 and the action
/// has no fixed point).
json torus_report(const WeightMatrix& w);

}  // namespace sf5
