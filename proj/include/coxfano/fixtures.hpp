#pragma once

#include "coxfano/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coxfano {

struct Fixture {
    std::string name;
    RingData data;
    // expectations; absent fields are not checked
    std::optional<Int> picard_index;
    std::optional<Rational> degree;
    std::optional<Int> gorenstein_index;
    std::optional<Int> torsion_order;
    std::optional<std::string> class_group; // AbGroup::to_string form
    std::optional<bool> fano;
    std::optional<int> moduli_count;
};

struct FixtureOutcome {
    std::string name;
    bool pass = true;
    std::vector<std::string> failures;
};

/// Known del Pezzo surfaces with torsion (eleven) and six gradings of one ring.
const std::vector<Fixture>& embedded_fixtures();

FixtureOutcome verify_fixture(const Fixture& f);

Json to_json(const Fixture& f);
Fixture fixture_from_json(const Json& j);

/// A fixture file is a JSON array of fixtures.
std::vector<Fixture> load_fixtures(const std::string& path);

} // namespace coxfano
