#pragma once

#include <json.hpp>

#include "dworklab/catalog.hpp"
#include "dworklab/decomposition.hpp"
#include "dworklab/dwork.hpp"
#include "dworklab/geometry.hpp"
#include "dworklab/padic.hpp"
#include "dworklab/period.hpp"

namespace dworklab {

// Integers are written as decimal strings throughout.
nlohmann::json to_json(const Integer& v);
nlohmann::json to_json(const Rational& v);
nlohmann::json to_json(const ExponentVector& v);
nlohmann::json to_json(const CoefficientRing& ring);
nlohmann::json to_json(const ExponentMatrix& a);
nlohmann::json to_json(const InteriorCertificate& c);
nlohmann::json to_json(const KernelLattice& k);
nlohmann::json to_json(const KernelGcdReport& r);
nlohmann::json to_json(const PeriodSequence& a);
nlohmann::json to_json(const ThetaOperator& op);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const DworkReport& r);
nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const ExchangeSweep& s);
nlohmann::json to_json(const LemmaReport& r);
nlohmann::json to_json(const PadicNumber& x);
nlohmann::json to_json(const UnitRootApproximation& u);
nlohmann::json to_json(const CatalogEntry& e);

// Inverse of to_json(PeriodSequence).
PeriodSequence sequence_from_json(const nlohmann::json& j);

} // namespace dworklab
