#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bindcap/capacity.hpp"
#include "bindcap/channel.hpp"

#include <json.hpp>

namespace bindcap {

/// A partially specified channel, as read from a spec document or CLI flags.
/// Fields left empty here can be filled from the other source; flags win.
struct ChannelParams {
  std::optional<std::string> kind;
  std::optional<int> n;
  std::optional<double> alpha_l;
  std::optional<double> alpha_h;
  std::optional<double> beta;
  std::optional<std::vector<double>> up_h;
  std::optional<std::vector<double>> up_l;
  std::optional<std::vector<double>> down;
};

/// Parses the JSON channel-spec document. Unknown keys are rejected.
/// Schema (see README): {"kind", "n", "alpha_l", "alpha_h", "beta"} or
/// {"kind": "custom", "up_h": [...], "up_l": [...], "down": [...]},
/// plus an optional "optimizer" object.
ChannelParams params_from_json(const nlohmann::json& doc);

ChannelParams load_channel_params(const std::string& path);

/// Builds and validates the channel; throws ValidationError on missing or
/// inconsistent fields.
BirthDeathChannel build_channel(const ChannelParams& params);

nlohmann::json channel_to_json(const BirthDeathChannel& ch);

/// Applies the optional "optimizer" object of a spec document on top of the
/// given defaults.
CapacityOptions optimizer_options_from_json(const nlohmann::json& doc,
                                            CapacityOptions base = {});

}  // namespace bindcap
