#include "edop/serialization.hpp"

#include <fstream>

#include "edop/errors.hpp"

namespace edop {

Json rational_to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw ParseError("expected a rational as \"p/q\" string or integer");
}

Json gaussian_to_json(const GaussianRational& z) {
    return Json{{"re", rational_to_json(z.re)}, {"im", rational_to_json(z.im)}};
}

GaussianRational gaussian_from_json(const Json& j) {
    if (j.is_number_integer() || j.is_string())  // real shorthand
        return GaussianRational(rational_from_json(j));
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw ParseError("expected a complex value as {\"re\": ..., \"im\": ...}");
    return {rational_from_json(j.at("re")), rational_from_json(j.at("im"))};
}

Json spectrum_to_json(const SpectrumSet& x) {
    Json arr = Json::array();
    for (const auto& p : x.points()) arr.push_back(gaussian_to_json(p));
    return arr;
}

SpectrumSet spectrum_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("'spectrum' must be a nonempty array");
    std::vector<GaussianRational> pts;
    for (const auto& e : j) pts.push_back(gaussian_from_json(e));
    return SpectrumSet(std::move(pts));
}

namespace {

std::vector<std::size_t> pattern_from_json(const Json& j, std::size_t num_points) {
    if (!j.is_array() || j.empty()) throw ParseError("'tail_pattern' must be a nonempty array");
    std::vector<std::size_t> pat;
    for (const auto& e : j) {
        if (!e.is_number_integer() || e.get<long long>() < 0 ||
            e.get<unsigned long long>() >= num_points)
            throw ParseError("'tail_pattern' entries must be spectrum indices");
        pat.push_back(e.get<std::size_t>());
    }
    return pat;
}

} // namespace

Json sequence_to_json(const LimSequence& d) {
    Json j;
    j["spectrum"] = spectrum_to_json(d.spectrum());
    Json prefix = Json::array();
    for (const auto& v : d.prefix()) prefix.push_back(gaussian_to_json(v));
    j["prefix"] = std::move(prefix);
    j["tail_pattern"] = d.tail().pattern();
    return j;
}

LimSequence sequence_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("sequence file must be a JSON object");
    for (const char* field : {"spectrum", "prefix", "tail_pattern"})
        if (!j.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
    SpectrumSet x = spectrum_from_json(j.at("spectrum"));
    if (!j.at("prefix").is_array()) throw ParseError("'prefix' must be an array");
    std::vector<GaussianRational> prefix;
    for (const auto& e : j.at("prefix")) prefix.push_back(gaussian_from_json(e));
    TailSchedule tail(pattern_from_json(j.at("tail_pattern"), x.size()), x.size());
    return LimSequence(std::move(prefix), std::move(x), std::move(tail));
}

Json operator_to_json(const EventuallyDiagonalOperator& n) {
    Json j;
    j["spectrum"] = spectrum_to_json(n.spectrum());
    Json corner = Json::array();
    for (std::size_t i = 0; i < n.corner_dim(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < n.corner_dim(); ++k)
            row.push_back(gaussian_to_json(n.corner().at(i, k)));
        corner.push_back(std::move(row));
    }
    j["corner"] = std::move(corner);
    j["tail_pattern"] = n.tail().pattern();
    j["finite_spectrum"] = n.finite_spectrum();
    return j;
}

EventuallyDiagonalOperator operator_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("operator file must be a JSON object");
    for (const char* field : {"spectrum", "corner", "tail_pattern", "finite_spectrum"})
        if (!j.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
    SpectrumSet x = spectrum_from_json(j.at("spectrum"));

    const Json& rows = j.at("corner");
    if (!rows.is_array() || rows.empty())
        throw ParseError("'corner' must be a nonempty array of rows");
    ExactMatrix corner(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != rows.size())
            throw ParseError("'corner' must be square");
        for (std::size_t k = 0; k < rows.size(); ++k)
            corner.at(i, k) = gaussian_from_json(rows[i][k]);
    }

    if (!j.at("finite_spectrum").is_boolean())
        throw ParseError("'finite_spectrum' must be a boolean");
    TailSchedule tail(pattern_from_json(j.at("tail_pattern"), x.size()), x.size());
    return EventuallyDiagonalOperator(std::move(x), std::move(corner), std::move(tail),
                                      j.at("finite_spectrum").get<bool>());
}

Json unitary_to_json(const RestrictedUnitary& u) {
    Json j;
    j["dim"] = u.dim();
    Json entries = Json::array();
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t k = 0; k < u.dim(); ++k) {
            const auto& z = u.corner().at(i, k);
            entries.push_back(Json::array({z.real(), z.imag()}));
        }
    j["entries"] = std::move(entries);
    j["defect"] = u.defect();
    j["tol"] = u.corner().tol();
    return j;
}

RestrictedUnitary unitary_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries") || !j.contains("tol"))
        throw ParseError("unitary file needs 'dim', 'entries' and 'tol'");
    std::size_t dim = j.at("dim").get<std::size_t>();
    const Json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != dim * dim)
        throw ParseError("'entries' must hold dim*dim complex pairs");
    FloatMatrix m(dim, j.at("tol").get<double>());
    for (std::size_t n = 0; n < dim * dim; ++n) {
        const Json& e = entries[n];
        if (!e.is_array() || e.size() != 2)
            throw ParseError("'entries' elements must be [re, im] pairs");
        m.at(n / dim, n % dim) = {e[0].get<double>(), e[1].get<double>()};
    }
    return RestrictedUnitary(std::move(m));
}

Json certificate_to_json(const Certificate& c) {
    Json arr = Json::array();
    for (const auto& v : c.coefficients()) {
        if (!v.fits_slong_p()) throw Error("certificate coefficient too large to serialize");
        arr.push_back(v.get_si());
    }
    return Json{{"coefficients", std::move(arr)}};
}

Json kmodule_to_json(const KModule& k) {
    Json j;
    j["spectrum"] = Json::array();
    for (const auto& p : k.spectrum()) j["spectrum"].push_back(gaussian_to_json(p));
    j["rank"] = k.rank();
    j["denom"] = k.denom().get_str();
    Json gens = Json::array();
    for (const auto& g : k.generators())
        gens.push_back(Json::array({g[0].get_str(), g[1].get_str()}));
    j["generators"] = std::move(gens);
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

} // namespace edop
