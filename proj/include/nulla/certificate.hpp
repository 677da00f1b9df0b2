#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nulla/polynomial.hpp"

namespace nulla {

struct CertificateEntry {
    std::string tag; // "vertex:i", "edge:u-v", "cutter:u-v-w", "user:k"
    Polynomial f;
    Polynomial beta;

    bool operator==(const CertificateEntry&) const = default;
};

struct Provenance {
    int degree = 0;
    std::string pruning;
    std::string symmetry = "none";
    std::string graph_fingerprint;

    bool operator==(const Provenance&) const = default;
};

/// Witness g = sum beta_i f_i. Carries the f_i, so it can be checked with
/// polynomial arithmetic alone.
struct Certificate {
    FieldSpec field{2};
    std::uint32_t n_vars = 0;
    Polynomial target{0, FieldSpec{2}};
    std::vector<CertificateEntry> entries;
    Provenance provenance;

    /// max deg(beta_i), -1 with no entries.
    int degree() const noexcept;

    bool operator==(const Certificate&) const = default;
};

class CertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Expands sum beta_i f_i and compares with the target term by term.
/// Throws CertificateError when the certificate is malformed (mixed fields or
/// variable counts, zero beta).
bool verify(const Certificate& cert);

/// Versioned JSON document.
std::string write_cert(const Certificate& cert);
/// Throws CertificateError with the offending location on bad input.
Certificate read_cert(std::string_view text);

inline constexpr int certificate_format_version = 1;

} // namespace nulla
