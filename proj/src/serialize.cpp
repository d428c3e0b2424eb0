#include "coxfano/serialize.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace coxfano {

namespace {

void require(bool cond, const std::string& what)
{
    if (!cond) throw std::invalid_argument("malformed JSON: " + what);
}

std::vector<Int> int_list(const Json& j, const std::string& what)
{
    require(j.is_array(), what + " must be an array");
    std::vector<Int> out;
    for (const auto& x : j) {
        require(x.is_number_integer(), what + " must contain integers");
        out.push_back(x.get<Int>());
    }
    return out;
}

bool same_options(const ClassifyOptions& a, const ClassifyOptions& b)
{
    return options_json(a) == options_json(b);
}

} // namespace

std::string tool_version() { return COXFANO_VERSION; }

Json to_json(const AbGroup& g)
{
    Json j;
    j["free_rank"] = g.free_rank;
    j["torsion"] = g.torsion;
    return j;
}

Json to_json(const GroupElem& g)
{
    Json free = g.free.size() == 1 ? Json(g.free[0]) : Json(g.free);
    return Json::array({free, g.tors});
}

Json to_json(const RingData& d)
{
    Json j;
    j["version"] = data_format_version;
    j["r"] = d.r;
    Json blocks = Json::array();
    for (const auto& b : d.blocks) {
        Json bj;
        bj["n"] = b.size();
        bj["l"] = b.exponents;
        blocks.push_back(std::move(bj));
    }
    j["blocks"] = std::move(blocks);
    j["m"] = d.m;
    j["group"] = to_json(d.grading.group);
    Json ws = Json::array();
    for (const auto& w : d.grading.weights) ws.push_back(to_json(w));
    j["weights"] = std::move(ws);
    Json us = Json::array();
    for (const auto& u : d.grading.free_weights) us.push_back(to_json(u));
    j["free_weights"] = std::move(us);
    j["moduli_count"] = d.moduli_count;
    return j;
}

Json to_json(const VarietyInvariants& inv)
{
    Json j;
    j["picard_index"] = inv.picard_index;
    j["anticanonical"] = to_json(inv.anticanonical);
    j["degree"] = inv.degree.to_string();
    j["gorenstein_index"] = inv.gorenstein_index;
    j["torsion_order"] = inv.torsion_order;
    j["local_group_orders"] = inv.local_group_orders;
    return j;
}

Json to_json(const ClassifiedVariety& v)
{
    Json j;
    j["case"] = to_string(v.case_tag);
    j["moduli_count"] = v.moduli_count;
    j["data"] = to_json(v.data);
    j["invariants"] = to_json(v.invariants);
    return j;
}

Json options_json(const ClassifyOptions& o)
{
    Json j;
    j["dimension"] = o.dimension;
    j["picard_index"] = o.picard_index;
    j["torsion"] = to_string(o.torsion_filter);
    j["include_toric"] = o.include_toric;
    j["require_fano"] = o.require_fano;
    j["separated_only"] = o.separated_only;
    j["inclusive_prime_count"] = o.bounds.inclusive_prime_count;
    return j;
}

AbGroup group_from_json(const Json& j)
{
    require(j.is_object() && j.contains("free_rank") && j.contains("torsion"), "group needs free_rank and torsion");
    require(j["free_rank"].is_number_unsigned(), "free_rank must be a non-negative integer");
    return AbGroup::make(j["free_rank"].get<std::size_t>(), int_list(j["torsion"], "torsion"));
}

GroupElem elem_from_json(const Json& j, const AbGroup& group)
{
    require(j.is_array() && j.size() == 2, "group element must be [free, [residues]]");
    GroupElem g;
    if (j[0].is_number_integer()) {
        g.free = {j[0].get<Int>()};
    } else {
        g.free = int_list(j[0], "free part");
    }
    g.tors = int_list(j[1], "residues");
    if (g.free.size() != group.free_rank || g.tors.size() != group.torsion.size())
        throw GroupMismatch("element shape does not match " + group.to_string());
    if (!group.owns(g)) throw GroupMismatch("residues must be reduced modulo the torsion factors of " + group.to_string());
    return g;
}

RingData ring_from_json(const Json& j)
{
    require(j.is_object(), "ring datum must be an object");
    if (j.contains("version")) require(j["version"] == data_format_version, "unsupported data version");
    for (const char* key : {"blocks", "m", "group", "weights", "free_weights"})
        require(j.contains(key), std::string("ring datum needs ") + key);
    const AbGroup group = group_from_json(j["group"]);
    std::vector<BlockData> blocks;
    require(j["blocks"].is_array(), "blocks must be an array");
    for (const auto& b : j["blocks"]) {
        require(b.is_object() && b.contains("l"), "block needs l");
        BlockData bd{int_list(b["l"], "exponents")};
        if (b.contains("n")) require(b["n"] == bd.size(), "block size n disagrees with l");
        blocks.push_back(std::move(bd));
    }
    std::vector<GroupElem> ws, us;
    require(j["weights"].is_array() && j["free_weights"].is_array(), "weights must be arrays");
    for (const auto& w : j["weights"]) ws.push_back(elem_from_json(w, group));
    for (const auto& u : j["free_weights"]) us.push_back(elem_from_json(u, group));
    require(j["m"].is_number_integer(), "m must be an integer");
    RingData d = RingData::make(std::move(blocks), j["m"].get<int>(), group, std::move(ws), std::move(us));
    if (j.contains("r")) d.r = j["r"].get<int>();
    if (j.contains("moduli_count")) d.moduli_count = j["moduli_count"].get<int>();
    return d;
}

VarietyInvariants invariants_from_json(const Json& j, const AbGroup& group)
{
    require(j.is_object(), "invariants must be an object");
    VarietyInvariants inv;
    inv.picard_index = j.at("picard_index").get<Int>();
    inv.anticanonical = elem_from_json(j.at("anticanonical"), group);
    inv.degree = Rational::parse(j.at("degree").get<std::string>());
    inv.gorenstein_index = j.at("gorenstein_index").get<Int>();
    inv.torsion_order = j.at("torsion_order").get<Int>();
    inv.local_group_orders = int_list(j.at("local_group_orders"), "local_group_orders");
    return inv;
}

ClassifiedVariety variety_from_json(const Json& j)
{
    require(j.is_object(), "variety must be an object");
    ClassifiedVariety v;
    v.data = ring_from_json(j.at("data"));
    v.invariants = invariants_from_json(j.at("invariants"), v.data.group());
    v.case_tag = case_tag_from_string(j.at("case").get<std::string>());
    v.moduli_count = j.at("moduli_count").get<int>();
    return v;
}

ClassifyOptions options_from_json(const Json& j)
{
    ClassifyOptions o;
    o.dimension = j.at("dimension").get<int>();
    o.picard_index = j.at("picard_index").get<Int>();
    o.torsion_filter = torsion_filter_from_string(j.at("torsion").get<std::string>());
    o.include_toric = j.at("include_toric").get<bool>();
    o.require_fano = j.at("require_fano").get<bool>();
    o.separated_only = j.at("separated_only").get<bool>();
    o.bounds.inclusive_prime_count = j.value("inclusive_prime_count", false);
    return o;
}

bool ResultSet::operator==(const ResultSet& o) const
{
    return tool == o.tool && version == o.version && same_options(options, o.options) &&
           result.varieties == o.result.varieties && result.toric == o.result.toric &&
           result.warnings == o.result.warnings && result.candidates == o.result.candidates;
}

Json to_json(const ResultSet& rs)
{
    Json j;
    j["tool"] = rs.tool;
    j["version"] = rs.version;
    j["options"] = options_json(rs.options);
    j["count"] = rs.result.varieties.size();
    j["candidates"] = rs.result.candidates;
    Json vs = Json::array();
    for (const auto& v : rs.result.varieties) vs.push_back(to_json(v));
    j["varieties"] = std::move(vs);
    if (rs.options.include_toric) {
        Json ts = Json::array();
        for (const auto& v : rs.result.toric) ts.push_back(to_json(v));
        j["toric"] = std::move(ts);
    }
    j["warnings"] = rs.result.warnings;
    Json timing;
    timing["seconds"] = rs.seconds;
    timing["cached"] = rs.cached;
    j["timing"] = std::move(timing);
    return j;
}

ResultSet result_set_from_json(const Json& j)
{
    require(j.is_object(), "result set must be an object");
    ResultSet rs;
    rs.tool = j.at("tool").get<std::string>();
    rs.version = j.at("version").get<std::string>();
    rs.options = options_from_json(j.at("options"));
    rs.result.candidates = j.at("candidates").get<std::uint64_t>();
    for (const auto& v : j.at("varieties")) rs.result.varieties.push_back(variety_from_json(v));
    if (j.contains("toric"))
        for (const auto& v : j["toric"]) rs.result.toric.push_back(variety_from_json(v));
    rs.result.warnings = j.at("warnings").get<std::vector<std::string>>();
    require(j.at("count") == rs.result.varieties.size(), "count disagrees with the variety list");
    if (j.contains("timing")) {
        rs.seconds = j["timing"].value("seconds", 0.0);
        rs.cached = j["timing"].value("cached", false);
    }
    return rs;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string fnv1a_hex(const std::string& text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

std::optional<ResultCache> ResultCache::from(const std::string& flag)
{
    if (!flag.empty()) return ResultCache(flag);
    if (const char* env = std::getenv("COXFANO_CACHE_DIR"); env && *env) return ResultCache(env);
    return std::nullopt;
}

std::filesystem::path ResultCache::path_for(const ClassifyOptions& o) const
{
    Json key;
    key["version"] = tool_version();
    key["options"] = options_json(o);
    return dir_ / ("classify-" + fnv1a_hex(key.dump()) + ".json");
}

std::optional<ResultSet> ResultCache::load(const ClassifyOptions& o) const
{
    std::ifstream in(path_for(o));
    if (!in) return std::nullopt;
    try {
        ResultSet rs = result_set_from_json(Json::parse(in));
        if (rs.version != tool_version() || !same_options(rs.options, o)) return std::nullopt;
        return rs;
    } catch (const std::exception&) {
        return std::nullopt; // unreadable entries are recomputed
    }
}

void ResultCache::store(const ResultSet& rs) const
{
    std::filesystem::create_directories(dir_);
    const auto target = path_for(rs.options);
    const auto tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write cache entry " + tmp);
        out << dump(to_json(rs));
    }
    std::filesystem::rename(tmp, target);
}

} // namespace coxfano
