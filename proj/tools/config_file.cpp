#include "config_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace vine::cli {

namespace {

std::string trim(const std::string &s)
{
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return {};
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

KeyValues parse_config(const std::string &text)
{
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(fmt::format("config line {}: expected key = value", number));
        std::string key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(fmt::format("config line {}: empty key", number));
        if (key.rfind("--", 0) == 0)
            key = key.substr(2);
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        out.emplace_back(key, value);
    }
    return out;
}

KeyValues read_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::vector<std::string> splice_config(const std::vector<std::string> &argv)
{
    std::vector<std::string> out;
    std::string config;
    std::size_t sub = argv.size();
    for (std::size_t k = 0; k < argv.size(); ++k) {
        const std::string &a = argv[k];
        if (a == "--config") {
            if (k + 1 >= argv.size())
                throw std::runtime_error("--config needs a path");
            config = argv[++k];
            continue;
        }
        if (a.rfind("--config=", 0) == 0) {
            config = a.substr(9);
            continue;
        }
        if (k > 0 && sub == argv.size() && !a.empty() && a[0] != '-')
            sub = out.size();
        out.push_back(a);
    }
    if (config.empty())
        return out;
    if (sub == argv.size())
        throw std::runtime_error("--config requires a subcommand");
    std::vector<std::string> injected;
    for (const auto &[key, value] : read_config_file(config))
        injected.push_back("--" + key + "=" + value);
    out.insert(out.begin() + long(sub) + 1, injected.begin(), injected.end());
    return out;
}

std::uint64_t fnv1a(const std::string &bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(KeyValues entries)
{
    std::sort(entries.begin(), entries.end());
    std::string canonical;
    for (const auto &[k, v] : entries)
        canonical += k + "=" + v + "\n";
    return fmt::format("{:016x}", fnv1a(canonical));
}

} // namespace vine::cli
