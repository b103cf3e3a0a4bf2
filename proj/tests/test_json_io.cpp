#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "torussym/json_io.hpp"

using namespace torussym;

TEST_CASE("field order is preserved and doubles round trip") {
    nlohmann::ordered_json j;
    j["zeta"] = 1;
    j["alpha"] = 0.1;
    j["list"] = {1.5, 2.5};
    std::string text = dump_json(j);
    CHECK(text.find("zeta") < text.find("alpha"));

    auto parsed = nlohmann::ordered_json::parse(text);
    CHECK(parsed["alpha"].get<double>() == 0.1);

    nlohmann::ordered_json tricky;
    tricky["x"] = 0.1 + 0.2;  // 0.30000000000000004, needs 17 digits
    auto back = nlohmann::ordered_json::parse(dump_json(tricky));
    CHECK(back["x"].get<double>() == 0.1 + 0.2);
}

TEST_CASE("identical values give byte-identical text") {
    nlohmann::ordered_json a, b;
    a["v"] = 3.141592653589793;
    a["w"] = nlohmann::ordered_json::array();
    b["v"] = 3.141592653589793;
    b["w"] = nlohmann::ordered_json::array();
    CHECK(dump_json(a) == dump_json(b));
}

TEST_CASE("atomic write") {
    std::string path = "test_json_io_tmp_output.json";
    atomic_write_file(path, "{\"ok\": true}\n");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "{\"ok\": true}\n");
    std::remove(path.c_str());
}

TEST_CASE("content hash is stable and sensitive") {
    CHECK(content_hash("") == "cbf29ce484222325");  // FNV-1a offset basis
    CHECK(content_hash("a") != content_hash("b"));
    CHECK(content_hash("type = ball") == content_hash("type = ball"));
    CHECK(content_hash("a").size() == 16);
}
