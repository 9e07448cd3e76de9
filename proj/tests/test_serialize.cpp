#include <gtest/gtest.h>

#include "cantorland/bundle.hpp"

using namespace cantorland;

namespace {

const GroupSpec F2 = GroupSpec::free_group(2);

Landscape padded_river(std::size_t radius) { return pad_even(materialize(river_landscape(), ball(F2, radius), 64)); }

}  // namespace

TEST(Serialize, GroupNames)
{
    EXPECT_EQ(parse_group("z"), GroupSpec::integers());
    EXPECT_EQ(parse_group("f3"), GroupSpec::free_group(3));
    for (const char* bad : {"", "f", "f0", "f2x", "g2", "F2"})
        EXPECT_THROW(parse_group(bad), std::invalid_argument) << bad;
}

TEST(Serialize, Words)
{
    const auto g = reduce(F2, {1, -2, -2});
    EXPECT_EQ(word_to_json(g).dump(), "[1,-2,-2]");
    EXPECT_EQ(word_from_json(F2, word_to_json(g)), g);
    const auto Z = GroupSpec::integers();
    EXPECT_EQ(word_to_json(Word::power(Z, -7)).dump(), "[-7]");
    EXPECT_EQ(word_from_json(Z, json::parse("[-7]")), Word::power(Z, -7));
    EXPECT_TRUE(word_from_json(Z, json::array()).is_identity());
    EXPECT_THROW(word_from_json(Z, json::parse("[1,2]")), std::invalid_argument);
    EXPECT_THROW(word_from_json(F2, json::parse("[3]")), std::out_of_range);
    EXPECT_THROW(word_from_json(F2, json::parse("{}")), std::invalid_argument);
}

TEST(Serialize, WindowDocument)
{
    const Window w(F2, 2);
    const auto j = window_to_json(w);
    EXPECT_EQ(j.at("schema"), kWindowSchema);
    EXPECT_EQ(j.at("vertices").size(), 17u);
    EXPECT_EQ(j.at("vertices")[2].dump(), "[-1]");
    EXPECT_EQ(j.at("adjacency")[0].size(), 4u);
}

TEST(Serialize, SnapshotRoundTrip)
{
    const auto z = padded_river(4);
    const auto back = snapshot_from_json(json::parse(snapshot_to_json(z).dump()));
    EXPECT_EQ(back.window->radius(), 4u);
    EXPECT_EQ(back.heights, z.heights);
    EXPECT_EQ(back.labels, z.labels);
    EXPECT_EQ(back.stage, LabelStage::padded);
    EXPECT_EQ(back.provenance, Provenance::river);
    EXPECT_EQ(back.label_bits, 128u);
}

TEST(Serialize, SnapshotSizeMismatch)
{
    auto j = snapshot_to_json(padded_river(3));
    j["heights"].erase(0);
    EXPECT_THROW(snapshot_from_json(j), std::invalid_argument);
}

TEST(Serialize, LocalSetsRoundTrip)
{
    const auto z = padded_river(5);
    const auto explicit_set = LocalSet::explicit_set(2, observed_patterns(z, 2, 1, 2));
    EXPECT_EQ(localset_from_json(F2, localset_to_json(explicit_set)), explicit_set);
    const auto cyl = LocalSet::cylinder(9, 8, 3);
    EXPECT_EQ(localset_from_json(F2, localset_to_json(cyl)), cyl);
    const std::vector<LocalSet> targets{explicit_set, cyl};
    const auto back = targets_from_json(F2, targets_to_json(F2, targets));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0], explicit_set);
    EXPECT_EQ(back[1], cyl);
    EXPECT_EQ(targets_from_json(F2, localset_to_json(cyl)).size(), 1u);
    EXPECT_THROW(targets_from_json(GroupSpec::integers(), targets_to_json(F2, targets)), std::invalid_argument);
}

TEST(Serialize, CertificateRoundTripStillVerifies)
{
    const auto z = padded_river(8);
    const auto target = LocalSet::explicit_set(1, observed_patterns(z, 1, 1, 1));
    const auto r = paradoxicalize_sequence(z, {target});
    ASSERT_EQ(r.certificates.size(), 1u);
    const auto bundle = json::parse(bundle_to_json(r).dump());
    EXPECT_EQ(bundle.at("schema"), kBundleSchema);
    const auto certs = certificates_from_json(bundle);
    ASSERT_EQ(certs.size(), 1u);
    const auto& c = certs[0];
    const auto& orig = r.certificates[0];
    EXPECT_EQ(c.translators, orig.translators);
    EXPECT_EQ(c.channels, orig.channels);
    EXPECT_EQ(c.target, orig.target);
    EXPECT_EQ(c.p, orig.p);
    EXPECT_EQ(c.q, orig.q);
    EXPECT_EQ(c.core_radius, orig.core_radius);
    const auto final_z = snapshot_from_json(json::parse(snapshot_to_json(r.final).dump()));
    EXPECT_TRUE(verify_certificate(final_z, c).pass);
    EXPECT_EQ(certificates_from_json(certificate_to_json(orig)).size(), 1u);
}

TEST(Serialize, UnknownSchemaRejected)
{
    auto j = snapshot_to_json(padded_river(2));
    j["schema"] = "cantorland.snapshot/2";
    EXPECT_THROW(snapshot_from_json(j), SchemaError);
    EXPECT_THROW(certificates_from_json(json::parse(R"({"schema":"other/1"})")), SchemaError);
    EXPECT_THROW(localset_from_json(F2, json::parse(R"({"m":1})")), SchemaError);
    EXPECT_THROW(localset_from_json(F2, json::parse(R"({"schema":"cantorland.localset/1","m":1,"kind":"ball"})")),
                 std::invalid_argument);
}
