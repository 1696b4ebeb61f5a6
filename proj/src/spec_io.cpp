#include "bindcap/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "bindcap/errors.hpp"

namespace bindcap {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& doc, const char* what,
                         std::initializer_list<const char*> known) {
  for (const auto& item : doc.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (item.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      std::ostringstream msg;
      msg << "unknown key \"" << item.key() << "\" in " << what;
      throw ValidationError(msg.str());
    }
  }
}

double as_number(const json& v, const char* key) {
  if (!v.is_number()) {
    std::ostringstream msg;
    msg << "field \"" << key << "\" must be a number";
    throw ValidationError(msg.str());
  }
  return v.get<double>();
}

int as_integer(const json& v, const char* key) {
  if (!v.is_number_integer()) {
    std::ostringstream msg;
    msg << "field \"" << key << "\" must be an integer";
    throw ValidationError(msg.str());
  }
  return v.get<int>();
}

std::vector<double> as_rate_vector(const json& v, const char* key) {
  if (!v.is_array() || v.empty()) {
    std::ostringstream msg;
    msg << "field \"" << key << "\" must be a non-empty array of numbers";
    throw ValidationError(msg.str());
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as_number(e, key));
  return out;
}

}  // namespace

ChannelParams params_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw ValidationError("channel spec must be a JSON object");
  }
  reject_unknown_keys(doc, "channel spec",
                      {"kind", "n", "alpha_l", "alpha_h", "beta", "up_h",
                       "up_l", "down", "optimizer"});

  ChannelParams p;
  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) {
      throw ValidationError("field \"kind\" must be a string");
    }
    p.kind = doc["kind"].get<std::string>();
  }
  if (doc.contains("n")) p.n = as_integer(doc["n"], "n");
  if (doc.contains("alpha_l")) p.alpha_l = as_number(doc["alpha_l"], "alpha_l");
  if (doc.contains("alpha_h")) p.alpha_h = as_number(doc["alpha_h"], "alpha_h");
  if (doc.contains("beta")) p.beta = as_number(doc["beta"], "beta");
  if (doc.contains("up_h")) p.up_h = as_rate_vector(doc["up_h"], "up_h");
  if (doc.contains("up_l")) p.up_l = as_rate_vector(doc["up_l"], "up_l");
  if (doc.contains("down")) p.down = as_rate_vector(doc["down"], "down");
  return p;
}

ChannelParams load_channel_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open channel spec file: " + path);
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    std::ostringstream msg;
    msg << "malformed channel spec " << path << ": " << e.what();
    throw ValidationError(msg.str());
  }
  return params_from_json(doc);
}

BirthDeathChannel build_channel(const ChannelParams& params) {
  const ChannelKind kind =
      channel_kind_from_string(params.kind.value_or("independent"));

  if (kind == ChannelKind::custom) {
    if (params.alpha_l || params.alpha_h || params.beta) {
      throw ValidationError(
          "custom channels take explicit rate vectors, not per-receptor "
          "kinetics (alpha_l/alpha_h/beta)");
    }
    if (!params.up_h || !params.up_l || !params.down) {
      throw ValidationError(
          "custom channels need all three rate vectors: up_h, up_l, down");
    }
    if (params.n &&
        *params.n != static_cast<int>(params.up_h->size())) {
      std::ostringstream msg;
      msg << "n = " << *params.n << " disagrees with rate vectors of length "
          << params.up_h->size();
      throw ValidationError(msg.str());
    }
    return build_custom_channel(*params.up_h, *params.up_l, *params.down);
  }

  if (params.up_h || params.up_l || params.down) {
    throw ValidationError(
        "explicit rate vectors apply only to kind=custom; use "
        "alpha_l/alpha_h/beta for " +
        to_string(kind) + " channels");
  }
  if (!params.n) {
    throw ValidationError("missing receptor count: set n");
  }
  if (!params.alpha_l || !params.alpha_h || !params.beta) {
    throw ValidationError(
        "missing kinetics: alpha_l, alpha_h and beta are all required");
  }
  const ReceptorKinetics kin{*params.alpha_l, *params.alpha_h, *params.beta};
  return kind == ChannelKind::independent
             ? build_independent_channel(*params.n, kin)
             : build_cooperative_channel(*params.n, kin);
}

json channel_to_json(const BirthDeathChannel& ch) {
  json j;
  j["kind"] = to_string(ch.kind());
  j["n"] = ch.n();
  if (ch.kinetics()) {
    j["alpha_l"] = ch.kinetics()->alpha_l;
    j["alpha_h"] = ch.kinetics()->alpha_h;
    j["beta"] = ch.kinetics()->beta;
  } else {
    j["up_h"] = ch.up_h();
    j["up_l"] = ch.up_l();
    j["down"] = ch.down();
  }
  return j;
}

CapacityOptions optimizer_options_from_json(const json& doc,
                                            CapacityOptions base) {
  if (!doc.is_object() || !doc.contains("optimizer")) return base;
  const json& o = doc["optimizer"];
  if (!o.is_object()) {
    throw ValidationError("field \"optimizer\" must be an object");
  }
  reject_unknown_keys(o, "optimizer options",
                      {"max_feedback_n", "grid_points", "lhs_samples",
                       "lhs_seed", "p_tol", "sweep_tol", "max_sweeps"});
  if (o.contains("max_feedback_n")) {
    base.max_feedback_n = as_integer(o["max_feedback_n"], "max_feedback_n");
  }
  if (o.contains("grid_points")) {
    base.grid_points = as_integer(o["grid_points"], "grid_points");
  }
  if (o.contains("lhs_samples")) {
    base.lhs_samples = as_integer(o["lhs_samples"], "lhs_samples");
  }
  if (o.contains("lhs_seed")) {
    if (!o["lhs_seed"].is_number_unsigned() && !o["lhs_seed"].is_number_integer()) {
      throw ValidationError("field \"lhs_seed\" must be an integer");
    }
    base.lhs_seed = o["lhs_seed"].get<std::uint64_t>();
  }
  if (o.contains("p_tol")) base.p_tol = as_number(o["p_tol"], "p_tol");
  if (o.contains("sweep_tol")) {
    base.sweep_tol = as_number(o["sweep_tol"], "sweep_tol");
  }
  if (o.contains("max_sweeps")) {
    base.max_sweeps = as_integer(o["max_sweeps"], "max_sweeps");
  }
  return base;
}

}  // namespace bindcap
