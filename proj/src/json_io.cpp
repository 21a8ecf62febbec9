#include "herglotz/json_io.hpp"

namespace herglotz::io {

json to_json(const ExtendedReal& s) {
    if (s.is_infinite()) return json("inf");
    return json(s.value());
}

ExtendedReal extended_real_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return ExtendedReal::infinity();
        throw std::invalid_argument("extended real: expected a number or \"inf\"");
    }
    return ExtendedReal(j.get<double>());
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("complex: expected [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json to_json(const DensitySpec& d) {
    if (const auto* r = std::get_if<RationalDensity>(&d))
        return json{{"kind", "rational"}, {"num", r->num}, {"den", r->den}};
    const auto& g = std::get<GridDensity>(d);
    return json{{"kind", "grid"}, {"nodes", g.nodes}, {"values", g.values}, {"tail", g.tail}};
}

namespace {
std::optional<DensitySpec> density_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rational")
        return RationalDensity{j.at("num").get<std::vector<double>>(),
                               j.at("den").get<std::vector<double>>(),
                               {}};
    if (kind == "grid")
        return GridDensity{j.at("nodes").get<std::vector<double>>(),
                           j.at("values").get<std::vector<double>>(),
                           j.value("tail", 0.0)};
    throw std::invalid_argument("density: unknown kind \"" + kind + "\"");
}

json atoms_to_json(const BoundaryMeasure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms())
        atoms.push_back(json{{"loc", to_json(a.location)}, {"mass", a.mass}});
    return atoms;
}

std::vector<BoundaryMeasure::Atom> atoms_from_json(const json& j) {
    std::vector<BoundaryMeasure::Atom> atoms;
    for (const auto& a : j)
        atoms.push_back({extended_real_from_json(a.at("loc")), a.at("mass").get<double>()});
    return atoms;
}
}  // namespace

json to_json(const BoundaryMeasure& m) {
    json out{{"atoms", atoms_to_json(m)}};
    out["density"] = m.density() ? to_json(*m.density()) : json(nullptr);
    return out;
}

BoundaryMeasure measure_from_json(const json& j) {
    return BoundaryMeasure(atoms_from_json(j.value("atoms", json::array())),
                           density_from_json(j.value("density", json(nullptr))));
}

json to_json(const HerglotzFunction& phi) {
    json out = to_json(phi.measure);
    out["alpha"] = phi.alpha;
    return out;
}

HerglotzFunction herglotz_from_json(const json& j) {
    return {j.value("alpha", 0.0), measure_from_json(j)};
}

json to_json(const Matrix2C& m) {
    return json{{"a", to_json(m.a())}, {"b", to_json(m.b())}, {"c", to_json(m.c())},
                {"d", to_json(m.d())}};
}

Matrix2C matrix_from_json(const json& j) {
    return Matrix2C(complex_from_json(j.at("a")), complex_from_json(j.at("b")),
                    complex_from_json(j.at("c")), complex_from_json(j.at("d")));
}

json to_json(const EndoClass& c) {
    if (std::holds_alternative<RealOrbit>(c)) return json{{"class", "real-orbit"}};
    if (const auto* nc = std::get_if<NonContact>(&c))
        return json{{"class", "non-contact"},
                    {"kappa", nc->kappa},
                    {"disk", {{"center", to_json(nc->disk.center)}, {"radius", nc->disk.radius}}}};
    if (const auto* cc = std::get_if<ContactCircle>(&c))
        return json{{"class", "contact-circle"},
                    {"kappa", 1.0},
                    {"tangency", cc->tangency},
                    {"disk", {{"center", to_json(cc->disk.center)}, {"radius", cc->disk.radius}}}};
    const auto& cl = std::get<ContactLine>(c);
    return json{{"class", "contact-line"}, {"kappa", 1.0}, {"offset", cl.offset}};
}

json to_json(const EndofunctionCertificate& cert) {
    json out{{"verdict", cert.verdict}, {"reason", cert.reason}};
    if (cert.representation) out["representation"] = to_json(*cert.representation);
    if (cert.witness) out["witness"] = to_json(*cert.witness);
    if (!cert.warnings.empty()) out["warnings"] = cert.warnings;
    return out;
}

namespace {
CPoly cpoly_from_json(const json& j) {
    CPoly out;
    for (const auto& c : j) out.push_back(complex_from_json(c));
    return out;
}
}  // namespace

RationalFunction rational_from_json(const json& j) {
    return RationalFunction(cpoly_from_json(j.at("num")), cpoly_from_json(j.at("den")));
}

json to_json(const DiskMeasure& mu) {
    json atoms = json::array();
    for (const auto& a : mu.atoms) atoms.push_back(json{{"angle", a.angle}, {"mass", a.mass}});
    json out{{"atoms", atoms}};
    if (!mu.density_nodes.empty()) {
        out["density"] = json{{"nodes", mu.density_nodes}, {"values", mu.density_values}};
    } else {
        out["density"] = nullptr;
    }
    return out;
}

DiskMeasure disk_measure_from_json(const json& j) {
    DiskMeasure mu;
    for (const auto& a : j.value("atoms", json::array()))
        mu.atoms.push_back({a.at("angle").get<double>(), a.at("mass").get<double>()});
    const json d = j.value("density", json(nullptr));
    if (!d.is_null()) {
        mu.density_nodes = d.at("nodes").get<std::vector<double>>();
        mu.density_values = d.at("values").get<std::vector<double>>();
    }
    return mu;
}

}  // namespace herglotz::io
