#ifndef EDOP_SERIALIZATION_HPP
#define EDOP_SERIALIZATION_HPP

#include <string>

#include <json.hpp>

#include "edop/diagonalize.hpp"
#include "edop/opmodel.hpp"

namespace edop {

/// Key order is preserved so identical runs emit byte-identical documents.
using Json = nlohmann::ordered_json;

// Exact scalars travel as canonical "p/q" strings ("p" when q = 1); complex
// values as {"re": ..., "im": ...}. Parsers also accept plain JSON integers
// where a rational is expected.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json gaussian_to_json(const GaussianRational& z);
GaussianRational gaussian_from_json(const Json& j);

Json spectrum_to_json(const SpectrumSet& x);
SpectrumSet spectrum_from_json(const Json& j);

/// {"spectrum": [...], "prefix": [...], "tail_pattern": [indices]}
Json sequence_to_json(const LimSequence& d);
LimSequence sequence_from_json(const Json& j);

/// {"spectrum": [...], "corner": [[...]], "tail_pattern": [...],
///  "finite_spectrum": bool}
Json operator_to_json(const EventuallyDiagonalOperator& n);
EventuallyDiagonalOperator operator_from_json(const Json& j);

/// {"dim": n, "entries": [[re,im], ...] row-major, "defect": d, "tol": t}
Json unitary_to_json(const RestrictedUnitary& u);
RestrictedUnitary unitary_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Json kmodule_to_json(const KModule& k);

/// Throws ParseError with file context on malformed input.
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

} // namespace edop

#endif
