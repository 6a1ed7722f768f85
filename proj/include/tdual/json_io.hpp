#pragma once

#include "json.hpp"
#include "tdual/gysin.hpp"
#include "tdual/pair.hpp"
#include "tdual/torus.hpp"
#include "tdual/twistk.hpp"

namespace tdual {

/// All CLI output goes through ordered JSON so stdout is byte-deterministic.
using Json = nlohmann::ordered_json;

/// Exact integer as a JSON value: a number while it fits 64 bits, a decimal
/// string beyond that.
Json json_int(const Int& v);

Json to_json(const GradedClass& x);       // coordinate array
Json to_json(const AbGroup& g);           // canonical text form
Json to_json(const ExtensionResult& e);   // canonical text form
Json to_json(const Pair& p);              // {"base", "c", "t", "b"}
Json to_json(const KGroups& k);           // {"k0", "k1", "assumptions"}
Json to_json(const GysinResult& r);       // {"base", "chern", "H"}
Json to_json(const AdmissibilityReport& rep);
Json to_json(const TorsionExample& ex);
Json to_json(const TwistMatrix& m);       // [[a, b], [c, d]]
Json to_json(const TorusBundleClass& f);  // {"base", "c0", "c1"}
Json to_json(const Splitting& s);         // {"h0", "h1"}

}  // namespace tdual
