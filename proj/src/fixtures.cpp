#include "coxfano/fixtures.hpp"

#include <fstream>
#include <stdexcept>

namespace coxfano {

namespace {

using Elem = std::vector<Int>; // free part followed by residues

RingData build(std::vector<std::vector<Int>> exponents, std::vector<Int> torsion, std::vector<Elem> weights,
               std::vector<Elem> free_weights = {})
{
    const AbGroup k = AbGroup::rank_one(torsion);
    auto to_elem = [&](const Elem& e) { return k.elem({e.at(0)}, Elem(e.begin() + 1, e.end())); };
    std::vector<BlockData> blocks;
    for (auto& l : exponents) blocks.push_back({std::move(l)});
    std::vector<GroupElem> ws, us;
    for (const auto& w : weights) ws.push_back(to_elem(w));
    for (const auto& u : free_weights) us.push_back(to_elem(u));
    const int m = static_cast<int>(us.size());
    return RingData::make(std::move(blocks), m, k, std::move(ws), std::move(us));
}

Fixture surface(int number, RingData data, Int mu, Rational degree, Int iota)
{
    Fixture f;
    f.name = "surface-" + std::to_string(number);
    f.picard_index = mu;
    f.degree = degree;
    f.gorenstein_index = iota;
    f.torsion_order = data.group().torsion_order();
    f.class_group = data.group().to_string();
    f.fano = true;
    f.moduli_count = data.moduli_count;
    f.data = std::move(data);
    return f;
}

Fixture grading(int number, std::vector<Int> torsion, std::vector<Int> residues)
{
    std::vector<Elem> weights;
    const std::vector<Int> free = {1, 3, 2, 5};
    for (std::size_t i = 0; i < free.size(); ++i) {
        Elem e = {free[i]};
        if (!residues.empty()) e.push_back(residues[i]);
        weights.push_back(e);
    }
    Fixture f;
    f.name = "grading-Q" + std::to_string(number);
    f.data = build({{7, 1}, {5}, {2}}, std::move(torsion), weights);
    f.class_group = f.data.group().to_string();
    f.fano = true;
    return f;
}

template <class T>
void expect(FixtureOutcome& out, const std::string& what, const std::optional<T>& expected, const T& actual,
            const std::string& shown)
{
    if (expected && !(*expected == actual)) {
        out.pass = false;
        out.failures.push_back(what + " is " + shown);
    }
}

} // namespace

const std::vector<Fixture>& embedded_fixtures()
{
    static const std::vector<Fixture> fixtures = [] {
        std::vector<Fixture> f;
        f.push_back(surface(1, build({{1, 3}, {4}, {2}}, {2}, {{1, 0}, {1, 0}, {1, 1}, {2, 1}}), 2, 1, 1));
        f.push_back(surface(2, build({{1, 2}, {3}, {3}}, {3}, {{1, 1}, {1, 1}, {1, 2}, {1, 0}}), 3, 1, 1));
        f.push_back(surface(3, build({{2}, {2}, {2}}, {2, 2}, {{1, 1, 0}, {1, 1, 1}, {1, 0, 1}}, {{1, 0, 0}}), 4, 2, 1));
        f.push_back(surface(4, build({{1, 1}, {2}, {2}}, {4}, {{1, 1}, {1, 3}, {1, 2}, {1, 0}}), 4, 2, 1));
        f.push_back(surface(5, build({{2, 1}, {2}, {4}}, {2}, {{1, 1}, {2, 0}, {2, 1}, {1, 0}}), 4, 2, 1));
        f.push_back(surface(6, build({{1, 2}, {6}, {2}}, {2}, {{2, 0}, {2, 1}, {1, 0}, {3, 1}}), 4, 1, 2));
        f.push_back(surface(7,
                            build({{1, 1}, {2}, {2}, {2}}, {2, 2},
                                  {{1, 1, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}, {1, 0, 0}}),
                            4, 1, 1));
        f.push_back(surface(8, build({{3}, {3}, {2}}, {3}, {{2, 1}, {2, 2}, {3, 0}}, {{1, 0}}), 6, Rational(2, 3), 3));
        f.push_back(surface(9, build({{1, 1}, {3}, {3}}, {3}, {{1, 1}, {2, 2}, {1, 2}, {1, 0}}), 6, 2, 1));
        f.push_back(surface(10, build({{1, 1}, {2}, {4}}, {2}, {{3, 1}, {1, 1}, {2, 1}, {1, 0}}), 6, 3, 1));
        f.push_back(surface(11, build({{1, 5}, {2}, {8}}, {2}, {{3, 1}, {1, 1}, {4, 1}, {1, 0}}), 6, Rational(1, 3), 3));
        f.push_back(grading(1, {}, {}));
        f.push_back(grading(2, {3}, {0, 2, 1, 1}));
        f.push_back(grading(3, {9}, {2, 1, 3, 3}));
        f.push_back(grading(4, {11}, {0, 1, 9, 6}));
        f.push_back(grading(5, {13}, {0, 3, 11, 8}));
        f.push_back(grading(6, {17}, {0, 7, 15, 12}));
        return f;
    }();
    return fixtures;
}

FixtureOutcome verify_fixture(const Fixture& f)
{
    FixtureOutcome out{f.name, true, {}};
    const ValidationReport rep = validate(f.data);
    if (!rep.ok) {
        out.pass = false;
        for (const auto& v : rep.violations) out.failures.push_back("invalid (" + v.check + "): " + v.detail);
        return out;
    }
    try {
        expect(out, "Fano", f.fano, is_fano(f.data), is_fano(f.data) ? "true" : "false");
        expect(out, "class group", f.class_group, f.data.group().to_string(), f.data.group().to_string());
        expect(out, "moduli count", f.moduli_count, f.data.moduli_count, std::to_string(f.data.moduli_count));
        if (f.picard_index || f.degree || f.gorenstein_index || f.torsion_order) {
            const VarietyInvariants inv = compute_all(f.data);
            expect(out, "Picard index", f.picard_index, inv.picard_index, std::to_string(inv.picard_index));
            expect(out, "degree", f.degree, inv.degree, inv.degree.to_string());
            expect(out, "Gorenstein index", f.gorenstein_index, inv.gorenstein_index,
                   std::to_string(inv.gorenstein_index));
            expect(out, "torsion order", f.torsion_order, inv.torsion_order, std::to_string(inv.torsion_order));
        }
    } catch (const std::exception& e) {
        out.pass = false;
        out.failures.push_back(std::string("error: ") + e.what());
    }
    return out;
}

Json to_json(const Fixture& f)
{
    Json j;
    j["name"] = f.name;
    j["data"] = to_json(f.data);
    Json e = Json::object();
    if (f.picard_index) e["picard_index"] = *f.picard_index;
    if (f.degree) e["degree"] = f.degree->to_string();
    if (f.gorenstein_index) e["gorenstein_index"] = *f.gorenstein_index;
    if (f.torsion_order) e["torsion_order"] = *f.torsion_order;
    if (f.class_group) e["class_group"] = *f.class_group;
    if (f.fano) e["fano"] = *f.fano;
    if (f.moduli_count) e["moduli_count"] = *f.moduli_count;
    j["expected"] = std::move(e);
    return j;
}

Fixture fixture_from_json(const Json& j)
{
    Fixture f;
    f.name = j.at("name").get<std::string>();
    f.data = ring_from_json(j.at("data"));
    const Json& e = j.at("expected");
    if (e.contains("picard_index")) f.picard_index = e["picard_index"].get<Int>();
    if (e.contains("degree")) f.degree = Rational::parse(e["degree"].get<std::string>());
    if (e.contains("gorenstein_index")) f.gorenstein_index = e["gorenstein_index"].get<Int>();
    if (e.contains("torsion_order")) f.torsion_order = e["torsion_order"].get<Int>();
    if (e.contains("class_group")) f.class_group = e["class_group"].get<std::string>();
    if (e.contains("fano")) f.fano = e["fano"].get<bool>();
    if (e.contains("moduli_count")) f.moduli_count = e["moduli_count"].get<int>();
    return f;
}

std::vector<Fixture> load_fixtures(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read fixture file " + path);
    const Json j = Json::parse(in);
    if (!j.is_array()) throw std::invalid_argument("fixture file must hold a JSON array");
    std::vector<Fixture> out;
    for (const auto& x : j) out.push_back(fixture_from_json(x));
    return out;
}

} // namespace coxfano
