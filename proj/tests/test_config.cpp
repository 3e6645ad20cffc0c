#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "config_file.hpp"

using namespace vine::cli;

TEST_SUITE("config") {

TEST_CASE("key = value parsing")
{
    KeyValues kv = parse_config("# header\n\nn = 50\n--omega=10\nname = \"two words\"\n  p =2  \n");
    CHECK(kv == KeyValues{{"n", "50"}, {"omega", "10"}, {"name", "two words"}, {"p", "2"}});
    CHECK_THROWS_WITH(parse_config("n 50\n"), doctest::Contains("line 1"));
    CHECK_THROWS_WITH(parse_config("ok = 1\n = 3\n"), doctest::Contains("line 2"));
}

TEST_CASE("config entries become flags after the subcommand")
{
    auto path = std::filesystem::temp_directory_path() / "vine-config-test.cfg";
    {
        std::ofstream out(path);
        out << "n = 30\nseed = 4\n";
    }
    std::vector<std::string> argv{"vine", "simulate", "--config", path.string(), "--n", "40"};
    auto spliced = splice_config(argv);
    CHECK(spliced == std::vector<std::string>{"vine", "simulate", "--n=30", "--seed=4", "--n", "40"});
    std::vector<std::string> eq{"vine", "--config=" + path.string(), "infer"};
    CHECK(splice_config(eq) == std::vector<std::string>{"vine", "infer", "--n=30", "--seed=4"});
    CHECK(splice_config({"vine", "eval"}) == std::vector<std::string>{"vine", "eval"});
    CHECK_THROWS(splice_config({"vine", "simulate", "--config"}));
    CHECK_THROWS(splice_config({"vine", "simulate", "--config", "/nonexistent/file.cfg"}));
    std::filesystem::remove(path);
}

TEST_CASE("hash is order independent and value sensitive")
{
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    std::string h = config_hash({{"n", "50"}, {"seed", "7"}});
    CHECK(h.size() == 16);
    CHECK(h == config_hash({{"seed", "7"}, {"n", "50"}}));
    CHECK(h != config_hash({{"seed", "8"}, {"n", "50"}}));
}

}
