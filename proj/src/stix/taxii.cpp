#include "ckg/stix/taxii.hpp"

#include "ckg/error.hpp"

#include <httplib.h>

#include <fstream>
#include <regex>
#include <sstream>

namespace ckg::stix {

Bundle FileCollectionSource::fetch(const std::string& path) const {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FetchError("cannot open collection '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_bundle(ss.str());
    } catch (const ParseError& e) {
        throw FetchError(path + ": " + e.what());
    }
}

Bundle HttpCollectionSource::fetch(const std::string& url) const {
    static const std::regex re(R"(^(http://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(url, m, re)) throw FetchError("unsupported collection URL '" + url + "'");
    httplib::Client client(m[1].str());
    client.set_connection_timeout(timeout_seconds_);
    client.set_read_timeout(timeout_seconds_);
    const std::string path = m[2].matched ? m[2].str() : "/";
    auto res = client.Get(path, {{"Accept", "application/taxii+json;version=2.1"}});
    if (!res) throw FetchError("request to '" + url + "' failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw FetchError("request to '" + url + "' returned HTTP " + std::to_string(res->status));
    try {
        return parse_bundle(res->body);
    } catch (const ParseError& e) {
        throw FetchError(url + ": " + e.what());
    }
}

std::unique_ptr<CollectionSource> make_source(const std::string& locator) {
    if (locator.rfind("http://", 0) == 0) return std::make_unique<HttpCollectionSource>();
    if (locator.rfind("https://", 0) == 0) throw FetchError("https collections are not supported: '" + locator + "'");
    return std::make_unique<FileCollectionSource>();
}

Bundle fetch_collection(const std::string& locator) { return make_source(locator)->fetch(locator); }

}  // namespace ckg::stix
