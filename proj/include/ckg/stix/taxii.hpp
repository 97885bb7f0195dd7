#pragma once

#include "ckg/stix/bundle.hpp"

#include <memory>
#include <string>

namespace ckg::stix {

// Source of STIX bundles addressed by a collection locator.
class CollectionSource {
public:
    virtual ~CollectionSource() = default;
    // Throws FetchError when the source is unreachable or the payload
    // does not parse.
    virtual Bundle fetch(const std::string& locator) const = 0;
};

// Reads a bundle from a local JSON file.
class FileCollectionSource final : public CollectionSource {
public:
    Bundle fetch(const std::string& path) const override;
};

// GET on a plain-http TAXII 2.1 `.../collections/<id>/objects/` endpoint
// (or any URL serving a bundle-shaped JSON envelope).
class HttpCollectionSource final : public CollectionSource {
public:
    explicit HttpCollectionSource(int timeout_seconds = 10) : timeout_seconds_(timeout_seconds) {}
    Bundle fetch(const std::string& url) const override;

private:
    int timeout_seconds_;
};

// Picks the HTTP source for http:// locators and the file source otherwise.
std::unique_ptr<CollectionSource> make_source(const std::string& locator);

Bundle fetch_collection(const std::string& locator);

}  // namespace ckg::stix
