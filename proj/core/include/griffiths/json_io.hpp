#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "griffiths/canonical_construction.hpp"
#include "griffiths/generating_functions.hpp"
#include "griffiths/group_model.hpp"
#include "griffiths/integral_elements.hpp"
#include "griffiths/matrix.hpp"

// JSON encodings shared by every tool. Complex numbers are [re, im] pairs;
// matrices are {"rows": r, "cols": c, "data": [[[re, im], ...], ...]}.
// Decoders throw Error(ErrorCode::Parse) on malformed input.
namespace griffiths::json {

using nlohmann::json;

json encode(Complex z);
json encode(std::span<const Complex> v);
json encode(const Matrix& m);
json encode(const AbelianElement& e);
json encode(const DistinguishedBasis& d);
json encode(const UnivariatePoly& poly);
json encode(const GeneratingSystem& s);
json encode(const GroupElement& g);
json encode(const DiscreteCurve& c);
json encode(const VerificationReport& r);
json encode(const Dimensions& d);

Complex decode_complex(const json& j);
Vector decode_vector(const json& j);
Matrix decode_matrix(const json& j);
AbelianElement decode_element(const json& j);
/// Shape-checked but not validated.
DistinguishedBasis decode_distinguished(const json& j);
UnivariatePoly decode_poly(const json& j);
/// Shape-checked only; the commuting-Hessian condition is not enforced.
GeneratingSystem decode_system(const json& j);
GroupElement decode_group_element(const json& j);
DiscreteCurve decode_curve(const json& j);
VerificationReport decode_report(const json& j);

/// Structural schema check for a report: required keys with the right types.
bool is_valid_report(const json& j);

json read_file(const std::string& path);
/// Writes j.dump(2) plus a trailing newline.
void write_file(const std::string& path, const json& j);

}  // namespace griffiths::json
