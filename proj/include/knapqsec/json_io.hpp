#pragma once

#include <string>

#include <json.hpp>

#include "knapqsec/audit.hpp"
#include "knapqsec/chor_rivest.hpp"
#include "knapqsec/core.hpp"
#include "knapqsec/qsim.hpp"

namespace knapqsec::io {

using json = nlohmann::json;

// Instance documents look like {"r": 8, "s": 5, "b": [1, 2, 4]}. Rejections
// name the offending field.
core::KnapsackInstance instance_from_json(const json& doc);
core::KnapsackInstance load_instance(const std::string& path);

json to_json(const qsim::OutcomeDistribution& dist);
json to_json(const qsim::Estimate& est);
json to_json(const qsim::BoundReport& report);
json to_json(const audit::SecurityReport& report);
json to_json(const audit::ZrVerdict& verdict);

json to_json(const cr::PublicKey& key);
json to_json(const cr::PrivateKey& key);
cr::PublicKey public_key_from_json(const json& doc);
cr::PrivateKey private_key_from_json(const json& doc);

cr::PublicKey load_public_key(const std::string& path);
cr::PrivateKey load_private_key(const std::string& path);
void save_json(const json& doc, const std::string& path);

// "num/den" (or plain integer) rendering of an exact rational.
std::string fraction_string(const qsim::Rational& value);

}  // namespace knapqsec::io
