#include "tdual/json_io.hpp"

namespace tdual {

Json json_int(const Int& v) {
  if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
  return v.get_str();
}

Json to_json(const GradedClass& x) {
  Json arr = Json::array();
  for (const Int& v : x.coords) arr.push_back(json_int(v));
  return arr;
}

Json to_json(const AbGroup& g) { return g.to_string(); }

Json to_json(const ExtensionResult& e) { return e.to_string(); }

Json to_json(const Pair& p) {
  Json j;
  j["base"] = p.base.descriptor;
  j["c"] = to_json(p.c);
  j["t"] = to_json(p.t);
  j["b"] = to_json(p.b);
  return j;
}

Json to_json(const KGroups& k) {
  Json j;
  j["k0"] = to_json(k.k0);
  j["k1"] = to_json(k.k1);
  j["assumptions"] = k.assumptions;
  return j;
}

Json to_json(const GysinResult& r) {
  Json j;
  j["base"] = r.base.descriptor;
  j["chern"] = to_json(r.c);
  j["total_dimension"] = r.total_dimension;
  Json h = Json::array();
  for (long n = 0; n <= r.total_dimension; ++n)
    h.push_back(r.at(n).assembled.to_string());
  j["H"] = h;
  return j;
}

Json to_json(const AdmissibilityReport& rep) {
  Json j;
  j["theory"] = rep.theory == Theory::K ? "K" : "HR";
  j["g"] = json_int(rep.g);
  j["map"] = Json{{"1", rep.image_of_one()}, {"u", rep.image_of_u()}};
  j["is_iso"] = rep.is_iso;
  return j;
}

Json to_json(const TorsionExample& ex) {
  Json j;
  j["k_fc"] = to_json(ex.k_fc);
  j["k_f0"] = to_json(ex.k_f0);
  j["k_f0_twisted"] = to_json(ex.k_f0_twisted);
  j["distinct"] = ex.distinct;
  return j;
}

Json to_json(const TwistMatrix& m) {
  return Json::array({Json::array({json_int(m.a), json_int(m.b)}),
                      Json::array({json_int(m.c), json_int(m.d)})});
}

Json to_json(const TorusBundleClass& f) {
  Json j;
  j["base"] = f.base.descriptor;
  j["c0"] = to_json(f.c0);
  j["c1"] = to_json(f.c1);
  return j;
}

Json to_json(const Splitting& s) {
  Json j;
  j["h0"] = to_json(s.h0);
  j["h1"] = to_json(s.h1);
  return j;
}

}  // namespace tdual
