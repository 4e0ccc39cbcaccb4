#pragma once

#include "ellkit/constants.hpp"
#include "ellkit/cover.hpp"
#include "ellkit/elliptic.hpp"

#include <json.hpp>

namespace ellkit {

using Json = nlohmann::json;

// All rationals travel as "p/q" strings, arbitrary-precision integers as
// decimal strings; no floating point inside certificate fields.

Json to_json(const Rat& q);
Json to_json(const RatInterval& v);
Json to_json(const EndRing& r);
Json to_json(const RingElem& e);
Json to_json(const Morphism& m);
Json to_json(const GaussReducedForm& f, const Morphism& input);
Json to_json(const ApproxCertificate& c);
Json to_json(const MWModel& m);
Json to_json(const LatticePoint& p);
Json to_json(const PowerPoint& p);
Json to_json(const CoverCertificate& c);
Json to_json(const SpecialInjection& c);
Json to_json(const QuasiSpecialReduction& c);
Json to_json(const ProjectionCertificate& c);
Json to_json(const CurveParams& p);
Json to_json(const EffectiveBounds& b);
Json to_json(const WeierstrassCurve& e);
Json to_json(const RatPoint& p);
Json gram_to_json(const GramResult& g, const std::vector<std::string>& names);

Rat rat_from_json(const Json& j);
RatInterval interval_from_json(const Json& j);
EndRing ring_from_json(const Json& j);
RingElem elem_from_json(const Json& j);
Morphism morphism_from_json(const Json& j);
MWModel model_from_json(const Json& j);
LatticePoint point_from_json(const Json& j, const MWModel& m);
PowerPoint power_point_from_json(const Json& j, const MWModel& m);
CurveParams params_from_json(const Json& j);
WeierstrassCurve curve_from_json(const Json& j);
RatPoint rat_point_from_json(const Json& j);
ApproxCertificate approx_certificate_from_json(const Json& j);
CoverCertificate cover_certificate_from_json(const Json& j, const MWModel& m);
SpecialInjection special_injection_from_json(const Json& j, const MWModel& m);
ProjectionCertificate projection_from_json(const Json& j, const MWModel& m);

struct VerifyReport {
    bool ok = false;
    std::string type;
    std::string message;
};

/// Replays one typed certificate object; `model` carries stream context.
VerifyReport verify_json(const Json& j, std::optional<MWModel>& model);

}  // namespace ellkit
