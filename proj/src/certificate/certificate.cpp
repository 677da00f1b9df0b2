#include "nulla/certificate.hpp"

#include <json.hpp>

namespace nulla {

using nlohmann::json;

int Certificate::degree() const noexcept
{
    int d = -1;
    for (const auto& e : entries)
        d = std::max(d, e.beta.degree());
    return d;
}

namespace {

void check_shape(const Certificate& cert)
{
    auto same = [&](const Polynomial& p, const std::string& what) {
        if (p.field() != cert.field || p.n_vars() != cert.n_vars)
            throw CertificateError(what + " is not over GF(" + std::to_string(cert.field.p()) + ") in " +
                                   std::to_string(cert.n_vars) + " variables");
    };
    same(cert.target, "target");
    for (std::size_t i = 0; i < cert.entries.size(); ++i) {
        const auto& e = cert.entries[i];
        const std::string where = "entry " + std::to_string(i) + " (" + e.tag + ")";
        same(e.f, where + " f");
        same(e.beta, where + " beta");
        if (e.beta.is_zero())
            throw CertificateError(where + " has a zero beta");
    }
}

} // namespace

bool verify(const Certificate& cert)
{
    check_shape(cert);
    Polynomial sum(cert.n_vars, cert.field);
    for (const auto& e : cert.entries)
        sum = sum + e.beta * e.f;
    return sum == cert.target;
}

std::string write_cert(const Certificate& cert)
{
    json doc;
    doc["version"] = certificate_format_version;
    doc["field_p"] = cert.field.p();
    doc["n_vars"] = cert.n_vars;
    doc["target"] = to_string(cert.target);
    json entries = json::array();
    for (const auto& e : cert.entries)
        entries.push_back({{"tag", e.tag}, {"f", to_string(e.f)}, {"beta", to_string(e.beta)}});
    doc["entries"] = std::move(entries);
    doc["provenance"] = {{"degree", cert.provenance.degree},
                         {"pruning", cert.provenance.pruning},
                         {"symmetry", cert.provenance.symmetry},
                         {"graph", cert.provenance.graph_fingerprint}};
    return doc.dump(2) + "\n";
}

namespace {

template <class T>
T field_of(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw CertificateError(where + ": missing field '" + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw CertificateError(where + ": field '" + key + "' has the wrong type");
    }
}

Polynomial poly_of(const json& obj, const char* key, std::uint32_t n_vars, FieldSpec field, const std::string& where)
{
    auto text = field_of<std::string>(obj, key, where);
    try {
        return parse_polynomial(text, n_vars, field);
    } catch (const std::exception& e) {
        throw CertificateError(where + "." + key + ": " + e.what());
    }
}

} // namespace

Certificate read_cert(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw CertificateError(std::string("certificate JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw CertificateError("certificate: top level is not an object");
    const std::string top = "certificate";
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "version" && key != "field_p" && key != "n_vars" && key != "target" && key != "entries" &&
            key != "provenance")
            throw CertificateError(top + ": unknown field '" + key + "'");
    }
    auto version = field_of<int>(doc, "version", top);
    if (version != certificate_format_version)
        throw CertificateError(top + ": unsupported version " + std::to_string(version));
    auto p = field_of<std::int64_t>(doc, "field_p", top);
    if (p < 2 || p > 0xffffffffll)
        throw CertificateError(top + ": field_p out of range");
    Certificate cert;
    try {
        cert.field = FieldSpec(static_cast<std::uint32_t>(p));
    } catch (const std::exception& e) {
        throw CertificateError(top + ".field_p: " + e.what());
    }
    auto n_vars = field_of<std::int64_t>(doc, "n_vars", top);
    if (n_vars < 0 || n_vars > 0xffffffffll)
        throw CertificateError(top + ": n_vars out of range");
    cert.n_vars = static_cast<std::uint32_t>(n_vars);
    cert.target = poly_of(doc, "target", cert.n_vars, cert.field, top);

    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw CertificateError(top + ": 'entries' must be an array");
    std::size_t i = 0;
    for (const auto& e : doc["entries"]) {
        const std::string where = "entries[" + std::to_string(i++) + "]";
        cert.entries.push_back({field_of<std::string>(e, "tag", where),
                                poly_of(e, "f", cert.n_vars, cert.field, where),
                                poly_of(e, "beta", cert.n_vars, cert.field, where)});
    }
    if (doc.contains("provenance")) {
        const auto& pv = doc["provenance"];
        const std::string where = "provenance";
        cert.provenance.degree = field_of<int>(pv, "degree", where);
        cert.provenance.pruning = field_of<std::string>(pv, "pruning", where);
        cert.provenance.symmetry = field_of<std::string>(pv, "symmetry", where);
        cert.provenance.graph_fingerprint = field_of<std::string>(pv, "graph", where);
    }
    return cert;
}

} // namespace nulla
