#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>

#include "chc/errors.hpp"
#include "chc/keyfile.hpp"
#include "doctest.h"

using namespace chc;

namespace {

const char* kChaosText =
    "# chaos key\n"
    "a = 10\n"
    "b = 3\n"
    "c = 2.5\n"
    "e1 = 12\n"
    "e2 = 0.1\n"
    "k = 2\n"
    "m = 2\n"
    "x0 = 1\n"
    "y0 = 1\n"
    "z0 = 1\n"
    "w0 = 1\n";

const char* kEccText =
    "a = 5376\n"
    "b = 2438\n"
    "p = 123457\n"
    "G.x = 2225\n"
    "G.y = 75856\n"
    "y = 36548\n"
    "k = 23412\n"
    "P_B.x = 30402\n"
    "P_B.y = 35513\n";

}  // namespace

TEST_CASE("generic name = value parsing") {
    const auto kv = parse_key_value_text("  a =  1.5 \n\n# note\r\nname= hello world \n");
    CHECK(kv.size() == 2);
    CHECK(kv.at("a") == "1.5");
    CHECK(kv.at("name") == "hello world");

    CHECK_THROWS_AS(parse_key_value_text("novalue\n"), KeyFileError);
    CHECK_THROWS_AS(parse_key_value_text("= 3\n"), KeyFileError);
    CHECK_THROWS_AS(parse_key_value_text("x =\n"), KeyFileError);
    CHECK_THROWS_AS(parse_key_value_text("x = 1\nx = 2\n"), KeyFileError);
}

TEST_CASE("chaos key parses with defaults for dt and transient") {
    const ChaosKey key = parse_chaos_key(kChaosText);
    CHECK(key.params.a == 10.0);
    CHECK(key.params.e2 == 0.1);
    CHECK(key.params.k_fb == 2.0);
    CHECK(key.initial.x == 1.0);
    CHECK(key.dt == 0.002);
    CHECK(key.n_transient == 1000);
}

TEST_CASE("chaos key honors explicit dt and transient") {
    const std::string text = std::string(kChaosText) + "dt = 0.001\ntransient = 250\n";
    const ChaosKey key = parse_chaos_key(text);
    CHECK(key.dt == 0.001);
    CHECK(key.n_transient == 250);
}

TEST_CASE("chaos key validation failures") {
    CHECK_THROWS_AS(parse_chaos_key("a = 10\n"), KeyFileError);  // missing fields
    const std::string unknown = std::string(kChaosText) + "qq = 1\n";
    CHECK_THROWS_AS(parse_chaos_key(unknown), KeyFileError);
    std::string bad = kChaosText;
    bad.replace(bad.find("b = 3"), 5, "b = x");
    CHECK_THROWS_AS(parse_chaos_key(bad), KeyFileError);
    // negative parameter caught by the flow validation
    std::string neg = kChaosText;
    neg.replace(neg.find("b = 3"), 5, "b = -3");
    CHECK_THROWS_AS(parse_chaos_key(neg), InvalidParams);
}

TEST_CASE("ECC key parses and cross-checks") {
    const EccKeyMaterial m = parse_ecc_key(kEccText);
    CHECK(m.curve.p == 123457);
    CHECK(m.G.x == 2225);
    CHECK(m.private_scalar == 36548);
    CHECK(m.ephemeral_k == 23412);
    CHECK(m.public_point.x == 30402);
}

TEST_CASE("ECC key rejects inconsistent material") {
    std::string off_curve = kEccText;
    off_curve.replace(off_curve.find("G.y = 75856"), 11, "G.y = 75857");
    CHECK_THROWS_AS(parse_ecc_key(off_curve), KeyFileError);

    // P_B on the curve but not equal to y*G
    std::string wrong_pb = kEccText;
    wrong_pb.replace(wrong_pb.find("P_B.x = 30402\nP_B.y = 35513"), 27,
                     "P_B.x = 2225\nP_B.y = 75856");
    CHECK_THROWS_AS(parse_ecc_key(wrong_pb), KeyFileError);

    std::string not_prime = kEccText;
    not_prime.replace(not_prime.find("p = 123457"), 10, "p = 123456");
    CHECK_THROWS_AS(parse_ecc_key(not_prime), NotPrime);

    std::string zero_y = kEccText;
    zero_y.replace(zero_y.find("y = 36548"), 9, "y = 0");
    CHECK_THROWS_AS(parse_ecc_key(zero_y), KeyFileError);

    CHECK_THROWS_AS(parse_ecc_key("a = 1\n"), KeyFileError);
}

TEST_CASE("format/parse roundtrips") {
    ChaosKey key = parse_chaos_key(kChaosText);
    key.initial.y = 1.0000000001;
    key.dt = 0.004;
    const ChaosKey back = parse_chaos_key(format_chaos_key(key));
    CHECK(back.initial.y == key.initial.y);  // exact through shortest printing
    CHECK(back.dt == 0.004);
    CHECK(back.n_transient == key.n_transient);
    CHECK(back.params.e2 == key.params.e2);

    const EccKeyMaterial m = parse_ecc_key(kEccText);
    const EccKeyMaterial m2 = parse_ecc_key(format_ecc_key(m));
    CHECK(m2.curve.a == m.curve.a);
    CHECK(m2.public_point == m.public_point);
    CHECK(m2.ephemeral_k == m.ephemeral_k);
}

TEST_CASE("file loading") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "chc_keyfile_test";
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "chaos.key");
        f << kChaosText;
    }
    const ChaosKey key = load_chaos_key_file(dir / "chaos.key");
    CHECK(key.params.a == 10.0);
    CHECK_THROWS_AS(load_chaos_key_file(dir / "nope.key"), KeyFileError);
    {
        std::ofstream f(dir / "ecc.key");
        f << kEccText;
    }
    CHECK(load_ecc_key_file(dir / "ecc.key").curve.p == 123457);
    fs::remove_all(dir);
}
