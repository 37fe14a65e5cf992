#pragma once

#include <string>

#include "pidlab/scenario.hpp"

namespace pidlab {

// Declarative description of a Scenario, serialized as JSON. Parsing is
// strict: unknown keys anywhere in the document are rejected, and
// serialize(parse(x)) round-trips field-for-field.
struct RunConfig {
    Scenario scenario;
    std::string output = "";  // output basename; scenario name when empty

    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_file(const std::string& path);
    std::string to_json_text() const;
};

}  // namespace pidlab
