#include "coxfano/cli.hpp"

#include "coxfano/fixtures.hpp"
#include "coxfano/report.hpp"
#include "coxfano/serialize.hpp"
#include "coxfano/strata.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

namespace coxfano::cli {

namespace {

struct ClassifyArgs {
    int dim = 0;
    Int mu = 0;
    std::string torsion = "any";
    bool include_toric = false;
    bool no_fano = false;
    bool separated_only = false;
    std::string format = "json";
    std::string out;
    unsigned jobs = 1;
    std::string cache_dir;
    std::uint64_t max_candidates = 100'000'000;
};

struct CountArgs {
    std::string dim_range;
    std::string mu_range;
    std::string torsion = "any";
    bool include_toric = false;
    std::string format = "table";
    unsigned jobs = 1;
    std::uint64_t max_candidates = 100'000'000;
};

struct Range {
    Int lo = 0;
    Int hi = -1;
};

Range parse_range(const std::string& text)
{
    static const std::regex pattern(R"(^\s*(\d+)\s*\.\.\s*(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw std::invalid_argument("range must look like a..b, got '" + text + "'");
    return {std::stoll(m[1].str()), std::stoll(m[2].str())};
}

void write_output(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

std::string support_text(const RingData& d, const Support& s)
{
    std::string out = "{";
    bool first = true;
    for (const auto& [i, j] : s.t_coords) {
        out += (first ? "T" : ",T") + std::to_string(d.offset(i) + j + 1);
        first = false;
    }
    for (std::size_t k : s.s_coords) {
        out += (first ? "S" : ",S") + std::to_string(k + 1);
        first = false;
    }
    return out + "}";
}

int cmd_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err)
{
    ClassifyOptions o;
    try {
        o.dimension = a.dim;
        o.picard_index = a.mu;
        o.torsion_filter = torsion_filter_from_string(a.torsion);
        o.include_toric = a.include_toric;
        o.require_fano = !a.no_fano;
        o.separated_only = a.separated_only;
        o.jobs = a.jobs;
        o.candidate_limit = a.max_candidates;
        o.check();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    const auto cache = ResultCache::from(a.cache_dir);
    const auto start = std::chrono::steady_clock::now();
    ResultSet rs;
    std::optional<ResultSet> hit = cache ? cache->load(o) : std::nullopt;
    if (hit) {
        rs = std::move(*hit);
        rs.cached = true;
    } else {
        rs.options = o;
        try {
            rs.result = classify(o);
        } catch (const ResourceLimitExceeded& e) {
            err << "error: resource limit reached, the result would be incomplete: " << e.what() << "\n";
            return resource_limit;
        }
    }
    rs.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cache && !hit) cache->store(rs);

    for (const auto& w : rs.result.warnings) err << "warning: " << w << "\n";
    if (a.format == "table") {
        write_output(render_table(rs.result), a.out, out);
    } else if (a.format == "latex") {
        write_output(render_latex(rs.result), a.out, out);
    } else {
        write_output(dump(to_json(rs)), a.out, out);
    }
    return ok;
}

int cmd_verify(const std::string& fixtures_path, const std::string& dump_path, std::ostream& out, std::ostream& err)
{
    std::vector<Fixture> fixtures;
    try {
        fixtures = fixtures_path.empty() ? embedded_fixtures() : load_fixtures(fixtures_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }
    if (!dump_path.empty()) {
        Json all = Json::array();
        for (const auto& f : fixtures) all.push_back(to_json(f));
        write_output(dump(all), dump_path, out);
    }
    std::size_t passed = 0;
    for (const auto& f : fixtures) {
        const FixtureOutcome o = verify_fixture(f);
        if (o.pass) {
            ++passed;
            out << "PASS " << o.name << "\n";
        } else {
            out << "FAIL " << o.name;
            for (const auto& why : o.failures) out << "; " << why;
            out << "\n";
        }
    }
    out << passed << "/" << fixtures.size() << " fixtures passed\n";
    return passed == fixtures.size() ? ok : fixture_failure;
}

int cmd_invariants(const std::string& input, std::ostream& out, std::ostream& err)
{
    RingData data;
    try {
        std::ifstream in(input);
        if (!in) throw std::runtime_error("cannot read " + input);
        data = ring_from_json(Json::parse(in));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }
    const ValidationReport rep = validate(data);
    Json j;
    j["valid"] = rep.ok;
    if (!rep.ok) {
        Json vs = Json::array();
        for (const auto& v : rep.violations) {
            vs.push_back(Json{{"check", v.check}, {"detail", v.detail}});
            err << "invalid (" << v.check << "): " << v.detail << "\n";
        }
        j["violations"] = std::move(vs);
        out << dump(j);
        return invalid_data;
    }
    try {
        const VarietyInvariants inv = compute_all(data);
        j["class_group"] = data.group().to_string();
        j["dimension"] = dimension(data);
        j["fano"] = is_fano(data);
        j["picard_index"] = inv.picard_index;
        j["anticanonical"] = to_json(inv.anticanonical);
        j["degree"] = inv.degree.to_string();
        j["gorenstein_index"] = inv.gorenstein_index;
        j["torsion_order"] = inv.torsion_order;
        Json supports = Json::array();
        const auto ms = minimal_supports(data);
        for (std::size_t i = 0; i < ms.size(); ++i)
            supports.push_back(Json{{"support", support_text(data, ms[i])}, {"local_group_order", inv.local_group_orders[i]}});
        j["minimal_supports"] = std::move(supports);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return invalid_data;
    }
    out << dump(j);
    return ok;
}

int cmd_count(const CountArgs& a, std::ostream& out, std::ostream& err)
{
    Range dims, mus;
    ClassifyOptions base;
    try {
        dims = parse_range(a.dim_range);
        mus = parse_range(a.mu_range);
        base.torsion_filter = torsion_filter_from_string(a.torsion);
        base.include_toric = a.include_toric;
        base.jobs = a.jobs;
        base.candidate_limit = a.max_candidates;
        if ((dims.lo <= dims.hi && dims.lo < 1) || (mus.lo <= mus.hi && mus.lo < 1))
            throw std::invalid_argument("dimension and Picard index must be at least 1");
        if (a.format != "table" && a.format != "json") throw std::invalid_argument("format must be table or json");
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    Json rows = Json::array();
    std::ostringstream table;
    table << "d\tmu\tcount" << (a.include_toric ? "\ttoric\ttoric_bound" : "") << "\tupper_bound\n";
    try {
        for (Int d = dims.lo; d <= dims.hi; ++d)
            for (Int mu = mus.lo; mu <= mus.hi; ++mu) {
                const TypeCount c = count_types(static_cast<int>(d), mu, base);
                const std::string bound = count_upper_bound(static_cast<int>(d), mu).get_str();
                Json row;
                row["dimension"] = d;
                row["picard_index"] = mu;
                row["count"] = c.types;
                table << d << "\t" << mu << "\t" << c.types;
                if (a.include_toric) {
                    const std::string tb = toric_count_bound(static_cast<int>(d), mu).get_str();
                    row["toric"] = c.toric;
                    row["toric_bound"] = tb;
                    table << "\t" << c.toric << "\t" << tb;
                }
                row["upper_bound"] = bound;
                table << "\t" << bound << "\n";
                rows.push_back(std::move(row));
            }
    } catch (const ResourceLimitExceeded& e) {
        err << "error: resource limit reached, the counts would be incomplete: " << e.what() << "\n";
        return resource_limit;
    }
    if (a.format == "json") {
        Json j;
        j["tool"] = "coxfano";
        j["version"] = tool_version();
        j["torsion"] = a.torsion;
        j["rows"] = std::move(rows);
        out << dump(j);
    } else {
        out << table.str();
    }
    return ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Classify Fano varieties of Picard number one with a torus action of complexity one", "coxfano"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    ClassifyArgs ca;
    auto* classify_cmd = app.add_subcommand("classify", "Enumerate all deformation types for a dimension and Picard index");
    classify_cmd->add_option("--dim", ca.dim, "Dimension d >= 1")->required();
    classify_cmd->add_option("--picard-index", ca.mu, "Picard index mu >= 1")->required();
    classify_cmd->add_option("--torsion", ca.torsion, "Class group torsion: any, nontrivial or trivial")
        ->check(CLI::IsMember({"any", "nontrivial", "trivial"}));
    classify_cmd->add_flag("--include-toric", ca.include_toric, "Also list toric varieties (fake weighted projective spaces)");
    classify_cmd->add_flag("--no-fano", ca.no_fano, "Drop the Fano condition");
    classify_cmd->add_flag("--separated-only", ca.separated_only, "Only relations in one variable per monomial");
    classify_cmd->add_option("--format", ca.format, "Output format")->check(CLI::IsMember({"json", "table", "latex"}));
    classify_cmd->add_option("--out", ca.out, "Output file (default: standard output)");
    classify_cmd->add_option("--jobs", ca.jobs, "Worker threads")->check(CLI::PositiveNumber);
    classify_cmd->add_option("--cache-dir", ca.cache_dir, "Result cache directory (default: $COXFANO_CACHE_DIR)");
    classify_cmd->add_option("--max-candidates", ca.max_candidates, "Candidate visit limit")->check(CLI::PositiveNumber);

    std::string fixtures_path, dump_path;
    auto* verify_cmd = app.add_subcommand("verify", "Recompute the invariants of the reference fixtures");
    verify_cmd->add_option("--fixtures", fixtures_path, "Fixture file (default: embedded set)");
    verify_cmd->add_option("--dump", dump_path, "Write the fixtures being checked as JSON to this file");

    std::string input;
    auto* inv_cmd = app.add_subcommand("invariants", "Validate a ring datum and print its invariants");
    inv_cmd->add_option("--input", input, "Ring datum JSON file")->required();

    CountArgs cn;
    auto* count_cmd = app.add_subcommand("count", "Count deformation types over ranges of d and mu");
    count_cmd->add_option("--dim-range", cn.dim_range, "Dimensions a..b")->required();
    count_cmd->add_option("--mu-range", cn.mu_range, "Picard indices c..e")->required();
    count_cmd->add_option("--torsion", cn.torsion, "Class group torsion: any, nontrivial or trivial")
        ->check(CLI::IsMember({"any", "nontrivial", "trivial"}));
    count_cmd->add_flag("--include-toric", cn.include_toric, "Also count toric varieties");
    count_cmd->add_option("--format", cn.format, "Output format")->check(CLI::IsMember({"table", "json"}));
    count_cmd->add_option("--jobs", cn.jobs, "Worker threads")->check(CLI::PositiveNumber);
    count_cmd->add_option("--max-candidates", cn.max_candidates, "Candidate visit limit")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << tool_version() << "\n";
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    try {
        if (*classify_cmd) return cmd_classify(ca, out, err);
        if (*verify_cmd) return cmd_verify(fixtures_path, dump_path, out, err);
        if (*inv_cmd) return cmd_invariants(input, out, err);
        if (*count_cmd) return cmd_count(cn, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }
    return usage_error;
}

} // namespace coxfano::cli
