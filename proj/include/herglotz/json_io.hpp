#pragma once

#include <json.hpp>

#include "herglotz/cayley.hpp"
#include "herglotz/measure.hpp"
#include "herglotz/moebius.hpp"
#include "herglotz/rational.hpp"

namespace herglotz::io {

using nlohmann::json;

// Wire formats:
//   extended real:  number | "inf"
//   complex:        [re, im]
//   measure:        {"atoms": [{"loc": .., "mass": ..}], "density": {..}|null}
//   phi:            {"alpha": r, ...measure fields...}
//   density:        {"kind":"rational","num":[..],"den":[..]}
//                 | {"kind":"grid","nodes":[..],"values":[..],"tail":c}
//   matrix:         {"a":[re,im],"b":[re,im],"c":[re,im],"d":[re,im]}

json to_json(const ExtendedReal& s);
ExtendedReal extended_real_from_json(const json& j);

json to_json(Complex z);
Complex complex_from_json(const json& j);

json to_json(const DensitySpec& d);
json to_json(const BoundaryMeasure& m);  // atoms + density only
BoundaryMeasure measure_from_json(const json& j);

json to_json(const HerglotzFunction& phi);  // alpha flattened in
HerglotzFunction herglotz_from_json(const json& j);

json to_json(const Matrix2C& m);
Matrix2C matrix_from_json(const json& j);

json to_json(const EndoClass& c);

json to_json(const EndofunctionCertificate& cert);
RationalFunction rational_from_json(const json& j);

json to_json(const DiskMeasure& mu);
DiskMeasure disk_measure_from_json(const json& j);

}  // namespace herglotz::io
