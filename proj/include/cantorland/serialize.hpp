#pragma once

// Versioned JSON documents: windows, landscape snapshots, local sets, target
// lists and certificate bundles. Readers reject unknown schema strings.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cantorland/certificate.hpp"
#include "cantorland/landscape.hpp"
#include "cantorland/localset.hpp"

namespace cantorland {

using json = nlohmann::json;

inline constexpr const char* kWindowSchema = "cantorland.window/1";
inline constexpr const char* kSnapshotSchema = "cantorland.snapshot/1";
inline constexpr const char* kLocalSetSchema = "cantorland.localset/1";
inline constexpr const char* kTargetsSchema = "cantorland.targets/1";
inline constexpr const char* kCertificateSchema = "cantorland.certificate/1";
inline constexpr const char* kBundleSchema = "cantorland.bundle/1";

class SchemaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require_schema(const json& j, const char* expected)
{
    if (!j.is_object() || !j.contains("schema"))
        throw SchemaError(std::string("document has no schema field, expected ") + expected);
    const auto got = j.at("schema").get<std::string>();
    if (got != expected)
        throw SchemaError("unsupported schema '" + got + "', expected '" + expected + "'");
}

/// "z", "f2", "f3", ...
inline GroupSpec parse_group(const std::string& name)
{
    if (name == "z")
        return GroupSpec::integers();
    if (name.size() >= 2 && name[0] == 'f') {
        std::size_t used = 0;
        int rank = 0;
        try {
            rank = std::stoi(name.substr(1), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == name.size() - 1 && rank >= 1 && rank <= 26)
            return GroupSpec::free_group(rank);
    }
    throw std::invalid_argument("unknown group '" + name + "' (expected z or f<k>)");
}

/// Free words as signed letter arrays; integers as [signed count].
inline json word_to_json(const Word& w)
{
    if (w.spec().kind == GroupKind::integers)
        return json::array({w.exponent()});
    json a = json::array();
    for (Letter l : w.free_letters())
        a.push_back(static_cast<int>(l));
    return a;
}

inline Word word_from_json(const GroupSpec& spec, const json& j)
{
    if (!j.is_array())
        throw std::invalid_argument("word must be an array");
    if (spec.kind == GroupKind::integers) {
        if (j.empty())
            return identity(spec);
        if (j.size() != 1)
            throw std::invalid_argument("an integer word is a single signed count");
        return Word::power(spec, j.at(0).get<std::int64_t>());
    }
    std::vector<Letter> letters;
    for (const auto& x : j) {
        const int l = x.get<int>();
        if (l == 0 || l < -127 || l > 127)
            throw std::out_of_range("letter " + std::to_string(l) + " out of range");
        letters.push_back(static_cast<Letter>(l));
    }
    return reduce(spec, letters);
}

inline json window_ref(const Window& w) { return {{"group", to_string(w.spec())}, {"radius", w.radius()}}; }

inline json window_to_json(const Window& w)
{
    json vertices = json::array();
    json adjacency = json::array();
    for (VertexId v = 0; v < w.size(); ++v) {
        vertices.push_back(word_to_json(w.word(v)));
        adjacency.push_back(w.adjacency(v));
    }
    return {{"schema", kWindowSchema},
            {"spec", {{"kind", w.spec().kind == GroupKind::free ? "free" : "integers"}, {"rank", w.spec().rank}}},
            {"group", to_string(w.spec())},
            {"radius", w.radius()},
            {"vertices", std::move(vertices)},
            {"adjacency", std::move(adjacency)}};
}

// ---------------------------------------------------------------------------
// Snapshots

inline json snapshot_to_json(const Landscape& z)
{
    json labels = json::array();
    for (const auto& l : z.labels)
        labels.push_back(l.hex());
    return {{"schema", kSnapshotSchema},
            {"provenance", to_string(z.provenance)},
            {"labelStage", to_string(z.stage)},
            {"window", window_ref(*z.window)},
            {"heights", z.heights},
            {"labelPrefixLen", z.label_bits},
            {"labels", std::move(labels)},
            {"channelCeiling", z.channel_ceiling}};
}

inline Landscape snapshot_from_json(const json& j, std::uint64_t vertex_budget = kDefaultVertexBudget)
{
    require_schema(j, kSnapshotSchema);
    const auto& ref = j.at("window");
    const auto spec = parse_group(ref.at("group").get<std::string>());
    Landscape z;
    z.window = ball(spec, ref.at("radius").get<std::size_t>(), vertex_budget);
    z.provenance = provenance_from_string(j.at("provenance").get<std::string>());
    z.stage = label_stage_from_string(j.at("labelStage").get<std::string>());
    z.heights = j.at("heights").get<std::vector<Height>>();
    z.label_bits = j.at("labelPrefixLen").get<std::size_t>();
    z.channel_ceiling = j.at("channelCeiling").get<std::size_t>();
    const auto& labels = j.at("labels");
    if (z.heights.size() != z.window->size() || labels.size() != z.window->size())
        throw std::invalid_argument("snapshot holds " + std::to_string(z.heights.size()) + " heights and " +
                                    std::to_string(labels.size()) + " labels for a window of " +
                                    std::to_string(z.window->size()) + " vertices");
    z.labels.reserve(labels.size());
    for (const auto& h : labels)
        z.labels.push_back(BitString::from_hex(h.get<std::string>(), z.label_bits));
    return z;
}

// ---------------------------------------------------------------------------
// Local sets

inline json localset_to_json(const LocalSet& s)
{
    if (s.kind == LocalSet::Kind::center_bit)
        return {{"schema", kLocalSetSchema},
                {"kind", "centerBit"},
                {"m", s.m},
                {"bit", s.center_bit},
                {"maxHeight", s.max_height}};
    json patterns = json::array();
    for (const auto& p : s.patterns)
        patterns.push_back(p.canonical());
    return {{"schema", kLocalSetSchema}, {"kind", "patterns"}, {"m", s.m}, {"patterns", std::move(patterns)}};
}

inline LocalSet localset_from_json(const GroupSpec& spec, const json& j)
{
    require_schema(j, kLocalSetSchema);
    const auto m = j.at("m").get<std::size_t>();
    const auto kind = j.value("kind", std::string("patterns"));
    if (kind == "centerBit")
        return LocalSet::cylinder(m, j.at("bit").get<std::size_t>(), j.at("maxHeight").get<Height>());
    if (kind != "patterns")
        throw std::invalid_argument("unknown local set kind '" + kind + "'");
    std::set<PatternBall> patterns;
    for (const auto& p : j.at("patterns"))
        patterns.insert(PatternBall::parse(spec, m, p.get<std::string>()));
    return LocalSet::explicit_set(m, std::move(patterns));
}

inline json targets_to_json(const GroupSpec& spec, const std::vector<LocalSet>& targets)
{
    json list = json::array();
    for (const auto& t : targets)
        list.push_back(localset_to_json(t));
    return {{"schema", kTargetsSchema}, {"group", to_string(spec)}, {"targets", std::move(list)}};
}

/// Accepts a target list or a single local set.
inline std::vector<LocalSet> targets_from_json(const GroupSpec& spec, const json& j)
{
    if (j.is_object() && j.value("schema", std::string()) == kLocalSetSchema)
        return {localset_from_json(spec, j)};
    require_schema(j, kTargetsSchema);
    if (j.contains("group") && parse_group(j.at("group").get<std::string>()) != spec)
        throw std::invalid_argument("targets are for group " + j.at("group").get<std::string>());
    std::vector<LocalSet> out;
    for (const auto& t : j.at("targets"))
        out.push_back(localset_from_json(spec, t));
    return out;
}

// ---------------------------------------------------------------------------
// Certificates

inline json report_to_json(const VerificationReport& r)
{
    json clauses = json::array();
    for (const auto& c : r.clauses)
        clauses.push_back({{"clause", c.clause}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"pass", r.pass}, {"clauses", std::move(clauses)}};
}

inline json certificate_to_json(const DoublingCertificate& c)
{
    json translators = json::array();
    for (const auto& g : c.translators)
        translators.push_back(word_to_json(g));
    json pieces = json::array();
    for (const auto& s : c.pieces)
        pieces.push_back(localset_to_json(s));
    json out = {{"schema", kCertificateSchema},
                {"windowRef", {{"group", to_string(c.spec)}, {"radius", c.window_radius}}},
                {"m", c.m},
                {"S", localset_to_json(c.target)},
                {"l", c.l},
                {"K", c.K},
                {"p", c.p},
                {"q", c.q},
                {"pieces", std::move(pieces)},
                {"translators", std::move(translators)},
                {"channelPositions", c.channels},
                {"coreRadius", c.core_radius}};
    out["verification"] = c.verification ? report_to_json(*c.verification) : json(nullptr);
    return out;
}

inline DoublingCertificate certificate_from_json(const json& j)
{
    require_schema(j, kCertificateSchema);
    DoublingCertificate c;
    const auto& ref = j.at("windowRef");
    c.spec = parse_group(ref.at("group").get<std::string>());
    c.window_radius = ref.at("radius").get<std::size_t>();
    c.m = j.at("m").get<std::size_t>();
    c.target = localset_from_json(c.spec, j.at("S"));
    c.l = j.at("l").get<std::size_t>();
    c.K = j.at("K").get<std::size_t>();
    c.p = j.at("p").get<std::size_t>();
    c.q = j.at("q").get<std::size_t>();
    for (const auto& s : j.at("pieces"))
        c.pieces.push_back(localset_from_json(c.spec, s));
    for (const auto& g : j.at("translators"))
        c.translators.push_back(word_from_json(c.spec, g));
    c.channels = j.at("channelPositions").get<std::vector<std::size_t>>();
    c.core_radius = j.at("coreRadius").get<std::size_t>();
    return c;
}

}  // namespace cantorland
