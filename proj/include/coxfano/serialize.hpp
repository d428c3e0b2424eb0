#pragma once

// JSON encoding of data, invariants and result sets.
//
// Group elements are [free, [residues]] with a scalar free part when the
// group has free rank one, rationals are "p/q" strings.  Object keys keep a
// fixed order, so equal values always serialize to equal bytes.

#include "coxfano/enumerate.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace coxfano {

using Json = nlohmann::ordered_json;

inline constexpr int data_format_version = 1;
std::string tool_version();

Json to_json(const AbGroup& g);
Json to_json(const GroupElem& g);
Json to_json(const RingData& d);
Json to_json(const VarietyInvariants& inv);
Json to_json(const ClassifiedVariety& v);
Json options_json(const ClassifyOptions& o);

AbGroup group_from_json(const Json& j);
GroupElem elem_from_json(const Json& j, const AbGroup& group);
RingData ring_from_json(const Json& j);
VarietyInvariants invariants_from_json(const Json& j, const AbGroup& group);
ClassifiedVariety variety_from_json(const Json& j);
/// Reads the echoed options back; execution settings (jobs, limits) keep defaults.
ClassifyOptions options_from_json(const Json& j);

struct ResultSet {
    std::string tool = "coxfano";
    std::string version = tool_version();
    ClassifyOptions options;
    ClassifyResult result;
    double seconds = 0.0; // timing metadata
    bool cached = false;  // timing metadata

    bool operator==(const ResultSet& o) const;
};

Json to_json(const ResultSet& rs);
ResultSet result_set_from_json(const Json& j);

/// Canonical text form: two-space indentation and a trailing newline.
std::string dump(const Json& j);

/// Stable 64-bit FNV-1a hash, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// The cache directory from an explicit flag or COXFANO_CACHE_DIR.
    static std::optional<ResultCache> from(const std::string& flag);

    std::filesystem::path path_for(const ClassifyOptions& o) const;
    /// A stored result for these options written by this tool version.
    std::optional<ResultSet> load(const ClassifyOptions& o) const;
    void store(const ResultSet& rs) const;

private:
    std::filesystem::path dir_;
};

} // namespace coxfano
