// cantorland: build landscapes, measure the amenability defect, and produce
// or check doubling certificates on finite Cayley balls.
//
// Exit codes: 0 pass, 1 verification failure, 2 input error, 3 budget or
// inconclusive matching.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cantorland/cantorland.hpp"
#include "cantorland/cheeger.hpp"

namespace fs = std::filesystem;
using namespace cantorland;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kBudget = 3 };

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_text(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(1) + "\n"); }

// The axiom core is B_{(R-1)/2}; below R = 3 it is just the identity.
constexpr std::size_t kMinimalRadius = 3;

// ---------------------------------------------------------------------------

struct BuildArgs {
    std::string group = "f2";
    std::string landscape;
    std::size_t radius = 0;
    std::size_t label_bits = 256;
    std::string stage = "padded";
    std::size_t anchors = 0;
    std::string out = ".";
};

Landscape build_landscape(const BuildArgs& a, std::uint64_t budget)
{
    const auto spec = parse_group(a.group);
    if (a.radius < kMinimalRadius)
        throw InputError("radius " + std::to_string(a.radius) + " is too small for the " + a.landscape +
                         " landscape; the minimal radius is " + std::to_string(kMinimalRadius));
    const auto stage = label_stage_from_string(a.stage);
    std::optional<LandscapeRule> rule;
    if (a.landscape == "river") {
        rule = river_landscape(spec);
    } else if (a.landscape == "ternary") {
        if (spec.kind != GroupKind::integers)
            throw InputError("the ternary landscape lives on z");
        rule = ternary_landscape();
    } else if (a.landscape == "fractal") {
        std::size_t count = a.anchors;
        if (count == 0)
            while (pow10(count) < 2 * a.radius)
                ++count;
        rule = fractal_landscape(spec, AnchorSet::powers(spec, std::max<std::size_t>(count, 1)));
    } else {
        throw InputError("unknown landscape '" + a.landscape + "'");
    }
    const bool coded = a.landscape == "river" && stage != LabelStage::proper;
    const std::size_t divisor = (coded ? 2 : 1) * (stage == LabelStage::padded ? 2 : 1);
    if (stage == LabelStage::coded && a.landscape != "river")
        throw InputError("the coded stage needs the river landscape");
    if (a.label_bits == 0 || a.label_bits % divisor != 0)
        throw InputError("--label-bits must be a positive multiple of " + std::to_string(divisor));
    auto window = ball(spec, a.radius, budget);
    auto z = materialize(*rule, window, a.label_bits / divisor);
    if (coded)
        z = attach_witness_code(z);
    if (stage == LabelStage::padded)
        z = pad_even(z);
    return z;
}

std::string axiom_text(const Landscape& z, const AxiomReport& r)
{
    std::ostringstream o;
    const auto& w = *z.window;
    o << "landscape: " << to_string(z.provenance) << "\n";
    o << "window: " << to_string(w.spec()) << " radius " << w.radius() << ", " << w.size() << " vertices\n";
    o << "core radius: " << r.constants.core_radius << "\n";
    if (r.pass) {
        o << "axioms: pass\n";
    } else {
        const auto& v = *r.violation;
        o << "axioms: FAIL\n";
        o << "violated axiom " << v.axiom << " at " << to_string(w.word(v.vertex));
        if (v.other != kNoVertex)
            o << " / " << to_string(w.word(v.other));
        o << " (" << v.detail << ")\n";
    }
    auto table = [&](const char* name, const std::map<int, int>& t) {
        o << name << ":";
        for (const auto& [k, v] : t)
            o << " " << k << "->" << v;
        o << "\n";
    };
    table("M", r.constants.M);
    table("N", r.constants.N);
    table("S", r.constants.S);
    if (!r.constants.Q.empty())
        table("Q", r.constants.Q);
    return o.str();
}

int cmd_build(const BuildArgs& a, std::uint64_t budget)
{
    const auto z = build_landscape(a, budget);
    const auto& w = *z.window;
    auto report = verify_axioms(z.heights, w);
    if (z.provenance == Provenance::ternary || z.provenance == Provenance::fractal)
        attach_hilly_constants(report, z.heights, w);
    auto text = axiom_text(z, report);
    if (z.provenance == Provenance::river) {
        std::vector<VertexId> river;
        for (VertexId v = 0; v < w.size(); ++v)
            if (z.heights[v] == 1)
                river.push_back(v);
        const auto core = w.radius() > river::kBilipschitz ? w.radius() - river::kBilipschitz : 0;
        const auto g = river_graph(river, w, core);
        std::ostringstream o;
        o << "river graph: " << g.vertices.size() << " vertices, " << g.edges << " edges, max degree "
          << g.max_degree << ", " << g.core_components << " component(s) meeting the core\n";
        std::size_t inner = core;
        while (inner > 0 && ball_size(w.spec(), inner) > 4 * kMaxCheegerInterior)
            --inner;
        if (const auto est = cheeger_lower_bound(g, w, inner))
            o << "river graph expansion on B_" << inner << ": edge boundary >= " << est->edge_bound
              << " |S|, vertex boundary >= " << est->vertex_bound << " |S|\n";
        text += o.str();
    }
    const fs::path out(a.out);
    write_json(out / "snapshot.json", snapshot_to_json(z));
    write_text(out / "axioms.txt", text);
    std::cout << text;
    return report.pass ? kPass : kFail;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> parse_m_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || v < 1)
            throw InputError("bad m value '" + item + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

struct AmenabilityArgs {
    std::string snapshot;
    std::string m_list = "5,10,20";
    int max_height = 3;
    std::size_t m_max = 2;
    std::string out = ".";
};

int cmd_amenability(const AmenabilityArgs& a, std::uint64_t budget)
{
    const auto z = snapshot_from_json(read_json(a.snapshot), budget);
    const auto& spec = z.window->spec();
    if (spec.kind != GroupKind::free || spec.rank < 2 ||
        (z.provenance != Provenance::river && z.provenance != Provenance::relabeled) ||
        z.heights != river_landscape(spec).heights(*z.window))
        throw InputError("the amenability report needs a river snapshot");
    const auto ms = parse_m_list(a.m_list);
    const auto& w = *z.window;
    const auto core = w.radius() - 1;

    std::ostringstream csv;
    csv << "vertex,word,height,generator,m,defect,defect_value,bound,within\n";
    json summary = json::array();
    bool ok = true;
    std::cout << "m,edges,max_defect,mean_defect,max_bound_ratio,violations\n";
    for (auto m : ms) {
        std::size_t edges = 0, violations = 0;
        double sum = 0, worst = 0, worst_ratio = 0;
        for (VertexId v = 0; v < w.core_size(core); ++v) {
            const auto h = z.heights[v];
            if (h > a.max_height)
                continue;
            const auto gamma = w.word(v);
            for (int s = 0; s < w.degree(); ++s) {
                const auto sigma = letter_from_order(s);
                const auto d = defect(gamma, sigma, m);
                const auto bound = defect_bound(h, m);
                const bool within = d <= bound;
                ++edges;
                violations += !within;
                sum += d.value();
                worst = std::max(worst, d.value());
                worst_ratio = std::max(worst_ratio, d.value() / bound.value());
                csv << v << ',' << to_string(gamma) << ',' << h << ',' << to_string(generator(w.spec(), sigma)) << ','
                    << m << ',' << d.str() << ',' << d.value() << ',' << bound.str() << ',' << (within ? 1 : 0)
                    << '\n';
            }
        }
        const double mean = edges ? sum / static_cast<double>(edges) : 0.0;
        ok = ok && violations == 0;
        summary.push_back({{"m", m},
                           {"edges", edges},
                           {"maxDefect", worst},
                           {"meanDefect", mean},
                           {"maxBoundRatio", worst_ratio},
                           {"violations", violations},
                           {"bound", "2(H+2)C/m"}});
        std::cout << m << ',' << edges << ',' << worst << ',' << mean << ',' << worst_ratio << ',' << violations
                  << '\n';
    }

    json codes = json::array();
    for (VertexId v = 0; v < w.size() && w.length(v) <= 2; ++v) {
        const auto gamma = w.word(v);
        json entry = {{"word", word_to_json(gamma)}, {"height", z.heights[v]}};
        try {
            const auto bits = encode_witness(gamma, a.m_max);
            json idx = json::array();
            for (const auto& b : decode_witness(bits, z.heights[v]))
                idx.push_back(b.index);
            entry["bits"] = bits.size();
            entry["hex"] = bits.hex();
            entry["indices"] = idx;
            entry["framing"] = "11 (010)^i per block, m = 1.." + std::to_string(a.m_max);
        } catch (const BudgetError& e) {
            entry["skipped"] = e.what();
        }
        codes.push_back(std::move(entry));
    }

    const fs::path out(a.out);
    write_text(out / "defects.csv", csv.str());
    write_json(out / "defect_report.json", {{"schema", "cantorland.defects/1"},
                                            {"window", window_ref(w)},
                                            {"maxHeight", a.max_height},
                                            {"C", river::kBilipschitz},
                                            {"summary", summary},
                                            {"witnessCodes", codes},
                                            {"pass", ok}});
    return ok ? kPass : kFail;
}

// ---------------------------------------------------------------------------

struct TargetsArgs {
    std::string snapshot;
    std::vector<std::string> selects;
    std::string out = "targets.json";
};

int cmd_targets(const TargetsArgs& a, std::uint64_t budget)
{
    const auto z = snapshot_from_json(read_json(a.snapshot), budget);
    std::vector<LocalSet> targets;
    for (const auto& sel : a.selects) {
        // m:h or m:lo-hi
        const auto colon = sel.find(':');
        if (colon == std::string::npos)
            throw InputError("selection '" + sel + "' should read m:h or m:lo-hi");
        const auto m = parse_m_list(sel.substr(0, colon));
        const auto range = sel.substr(colon + 1);
        const auto dash = range.find('-');
        const auto lo = parse_m_list(range.substr(0, dash));
        const auto hi = dash == std::string::npos ? lo : parse_m_list(range.substr(dash + 1));
        if (m.size() != 1 || lo.size() != 1 || hi.size() != 1)
            throw InputError("selection '" + sel + "' should read m:h or m:lo-hi");
        targets.push_back(LocalSet::explicit_set(
            m[0], observed_patterns(z, m[0], static_cast<Height>(lo[0]), static_cast<Height>(hi[0]))));
        std::cout << sel << ": " << targets.back().patterns.size() << " pattern(s), "
                  << realize(targets.back(), z).size() << " vertices\n";
    }
    write_json(a.out, targets_to_json(z.window->spec(), targets));
    return kPass;
}

// ---------------------------------------------------------------------------

struct ParadoxArgs {
    std::string snapshot;
    std::string targets;
    std::size_t k_ceiling = 6;
    std::string out = ".";
};

int cmd_paradoxicalize(const ParadoxArgs& a, std::uint64_t budget)
{
    const auto z = snapshot_from_json(read_json(a.snapshot), budget);
    const auto targets = targets_from_json(z.window->spec(), read_json(a.targets));
    PipelineOptions options;
    options.doubling.k_ceiling = a.k_ceiling;
    const auto result = paradoxicalize_sequence(z, targets, options);

    const fs::path out(a.out);
    write_json(out / "certificates.json", bundle_to_json(result));
    write_json(out / "final_snapshot.json", snapshot_to_json(result.final));

    for (std::size_t k = 0; k < result.maps.size(); ++k) {
        const auto& m = result.maps[k];
        std::cout << "target " << k + 1 << ": " << to_string(m.status);
        if (k < result.certificates.size()) {
            const auto& c = result.certificates[k];
            std::cout << ", K = " << c.K << ", p = " << c.p << ", q = " << c.q << ", core B_" << c.core_radius;
        } else {
            std::cout << ", best matched fraction " << m.matched_fraction;
        }
        std::cout << "\n";
    }
    std::cout << "re-verification matrix (row: certificate, column: rule after step):\n";
    for (const auto& row : result.matrix) {
        for (const auto& cell : row)
            std::cout << ' ' << (cell ? (*cell ? "pass" : "FAIL") : "  - ");
        std::cout << "\n";
    }
    if (result.halted) {
        std::cout << "halted: " << result.halt_reason << "\n";
        return kBudget;
    }
    return result.all_pass() ? kPass : kFail;
}

// ---------------------------------------------------------------------------

int cmd_check(const std::string& certificate, const std::string& snapshot, std::uint64_t budget)
{
    const auto certs = certificates_from_json(read_json(certificate));
    const auto z = snapshot_from_json(read_json(snapshot), budget);
    bool ok = true;
    for (std::size_t i = 0; i < certs.size(); ++i) {
        const auto report = verify_certificate(z, certs[i]);
        std::cout << "certificate " << i + 1 << ": " << (report.pass ? "pass" : "FAIL") << "\n";
        for (const auto& c : report.clauses)
            std::cout << "  clause " << c.clause << ": " << (c.pass ? "pass" : "FAIL") << " - " << c.detail << "\n";
        ok = ok && report.pass;
    }
    return ok ? kPass : kFail;
}

int cmd_window(const std::string& group, std::size_t radius, const std::string& out, std::uint64_t budget)
{
    const auto w = ball(parse_group(group), radius, budget);
    write_json(out, window_to_json(*w));
    std::cout << w->size() << " vertices\n";
    return kPass;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Landscapes, witness codes and doubling certificates on Cayley balls"};
    app.require_subcommand(1);
    std::uint64_t budget = kDefaultVertexBudget;
    app.add_option("--budget-vertices", budget, "Largest window to enumerate")->check(CLI::PositiveNumber);

    BuildArgs build;
    auto* b = app.add_subcommand("build", "Build a landscape snapshot and check the axioms");
    b->add_option("--group", build.group, "z or f<k>");
    b->add_option("--landscape", build.landscape, "river, ternary or fractal")->required();
    b->add_option("--radius", build.radius, "Window radius")->required();
    b->add_option("--label-bits", build.label_bits, "Final label length in bits");
    b->add_option("--stage", build.stage, "proper, coded or padded");
    b->add_option("--anchors", build.anchors, "Fractal anchor count (0 = enough for the window)");
    b->add_option("--out", build.out, "Output directory");

    AmenabilityArgs amen;
    auto* am = app.add_subcommand("amenability", "Defect table of the witness maps");
    am->add_option("--snapshot", amen.snapshot)->required();
    am->add_option("--m", amen.m_list, "Comma separated m values");
    am->add_option("--max-height", amen.max_height, "Only vertices up to this height");
    am->add_option("--m-max", amen.m_max, "Witness code blocks to dump");
    am->add_option("--out", amen.out, "Output directory");

    TargetsArgs targ;
    auto* t = app.add_subcommand("targets", "Local sets of observed patterns");
    t->add_option("--snapshot", targ.snapshot)->required();
    t->add_option("--select", targ.selects, "m:h or m:lo-hi (repeatable)")->required();
    t->add_option("--out", targ.out, "Output file");

    ParadoxArgs para;
    auto* p = app.add_subcommand("paradoxicalize", "Doubling certificates for a list of targets");
    p->add_option("--snapshot", para.snapshot)->required();
    p->add_option("--targets", para.targets)->required();
    p->add_option("--k-ceiling", para.k_ceiling, "Largest displacement tried")->check(CLI::PositiveNumber);
    p->add_option("--out", para.out, "Output directory");

    std::string cert_file, snap_file;
    auto* c = app.add_subcommand("check", "Verify certificates against a snapshot");
    c->add_option("--certificate", cert_file)->required();
    c->add_option("--snapshot", snap_file)->required();

    std::string wgroup = "f2", wout = "window.json";
    std::size_t wradius = 0;
    auto* wi = app.add_subcommand("window", "Write a window as JSON");
    wi->add_option("--group", wgroup);
    wi->add_option("--radius", wradius)->required();
    wi->add_option("--out", wout);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInput;
    }

    try {
        if (*b)
            return cmd_build(build, budget);
        if (*am)
            return cmd_amenability(amen, budget);
        if (*t)
            return cmd_targets(targ, budget);
        if (*p)
            return cmd_paradoxicalize(para, budget);
        if (*c)
            return cmd_check(cert_file, snap_file, budget);
        if (*wi)
            return cmd_window(wgroup, wradius, wout, budget);
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const json::exception& e) {
        std::cerr << "input: " << e.what() << "\n";
        return kInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input: " << e.what() << "\n";
        return kInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "input: " << e.what() << "\n";
        return kInput;
    } catch (const InputError& e) {
        std::cerr << "input: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}
