#pragma once

// JSON encoding of the library's records. Non-finite numbers are written as
// the strings "inf", "-inf" and "nan" so that documents stay valid JSON.

#include <json.hpp>

#include "sbconc/bounds.hpp"
#include "sbconc/conditions.hpp"
#include "sbconc/harness.hpp"
#include "sbconc/instance.hpp"
#include "sbconc/scaling.hpp"

namespace sbconc {

using Json = nlohmann::ordered_json;

Json number_to_json(double x);
/// Accepts a JSON number or one of the three non-finite strings.
double number_from_json(const Json& j);

void to_json(Json& j, const SelfBoundingParams& p);
void from_json(const Json& j, SelfBoundingParams& p);

void to_json(Json& j, const TailBound& b);
void to_json(Json& j, const DeltaValue& d);
void to_json(Json& j, const CumulantBound& c);
void to_json(Json& j, const Interval& i);
void to_json(Json& j, const ConditionReport& r);
void to_json(Json& j, const ScalingComparison& s);

void to_json(Json& j, const EmpiricalTailCurve& c);
void from_json(const Json& j, EmpiricalTailCurve& c);

void to_json(Json& j, const CumulantEstimate& c);
void to_json(Json& j, const Violation& v);
void to_json(Json& j, const SelfBoundingReport& r);
void to_json(Json& j, const HarrisTrial& t);
void to_json(Json& j, const HarrisReport& r);

void to_json(Json& j, const GeneratorSpec& s);
void from_json(const Json& j, GeneratorSpec& s);

}  // namespace sbconc
