#pragma once

// Certificate bundles: everything a pipeline run claims, in one document.

#include "cantorland/paradox.hpp"
#include "cantorland/serialize.hpp"

namespace cantorland {

inline json bundle_to_json(const PipelineResult& r)
{
    json certs = json::array();
    for (const auto& c : r.certificates)
        certs.push_back(certificate_to_json(c));
    json targets = json::array();
    for (const auto& t : r.targets)
        targets.push_back(localset_to_json(t));
    json matrix = json::array();
    for (const auto& row : r.matrix) {
        json cells = json::array();
        for (const auto& cell : row)
            cells.push_back(cell ? json(*cell) : json(nullptr));
        matrix.push_back(std::move(cells));
    }
    json doubling = json::array();
    for (const auto& m : r.maps)
        doubling.push_back({{"status", to_string(m.status)},
                            {"K", m.K},
                            {"coreRadius", m.core_radius},
                            {"domain", m.domain.size()},
                            {"matchedFraction", m.matched_fraction}});
    return {{"schema", kBundleSchema},
            {"window", window_ref(*r.initial.window)},
            {"targets", std::move(targets)},
            {"certificates", std::move(certs)},
            {"doubling", std::move(doubling)},
            {"matrix", std::move(matrix)},
            {"halted", r.halted},
            {"haltReason", r.halt_reason},
            {"finalChannelCeiling", r.final.channel_ceiling}};
}

/// Certificates from a bundle or a single certificate document.
inline std::vector<DoublingCertificate> certificates_from_json(const json& j)
{
    if (j.is_object() && j.value("schema", std::string()) == kCertificateSchema)
        return {certificate_from_json(j)};
    require_schema(j, kBundleSchema);
    std::vector<DoublingCertificate> out;
    for (const auto& c : j.at("certificates"))
        out.push_back(certificate_from_json(c));
    return out;
}

}  // namespace cantorland
