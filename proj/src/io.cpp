#include "levyfn/io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace levyfn {
namespace {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "sample files are little-endian; add byte swapping first");

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    fail(ErrorCode::Schema, std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

std::string require_string(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    fail(ErrorCode::Schema, std::string("missing string field '") + key + "'");
  return j.at(key).get<std::string>();
}

json components_to_json(const std::vector<ExpComponent>& comps) {
  json arr = json::array();
  for (const ExpComponent& c : comps)
    arr.push_back(json{{"mass", c.mass}, {"rate", c.rate}});
  return arr;
}

std::vector<ExpComponent> components_from_json(const json& j,
                                               const char* key) {
  std::vector<ExpComponent> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array())
    fail(ErrorCode::Schema, std::string("field '") + key + "' must be an array");
  for (const json& e : j.at(key)) {
    if (!e.is_object())
      fail(ErrorCode::Schema, "exponential component must be an object");
    out.push_back({require_number(e, "mass"), require_number(e, "rate")});
  }
  return out;
}

json jumps_to_json(const JumpSpec& jumps) {
  const std::string& fam = jumps.family();
  json j{{"family", fam}};
  if (fam == "none") return j;
  if (fam == "exponential-two-sided") {
    const auto& p = jumps.exp_plus();
    const auto& m = jumps.exp_minus();
    j["lambda_plus"] = p.empty() ? 0.0 : p[0].mass;
    j["eta_plus"] = p.empty() ? 1.0 : p[0].rate;
    j["lambda_minus"] = m.empty() ? 0.0 : m[0].mass;
    j["eta_minus"] = m.empty() ? 1.0 : m[0].rate;
    return j;
  }
  if (fam == "compound-poisson" || fam == "hyper-exponential") {
    j["plus"] = components_to_json(jumps.exp_plus());
    j["minus"] = components_to_json(jumps.exp_minus());
    return j;
  }
  if (fam == "tilted-stable-tail" || fam == "spectrally-negative-parametric") {
    const TiltedTail& t = jumps.tilted().front();
    j["c"] = t.c;
    j["alpha"] = t.alpha;
    j["gamma"] = t.gamma;
    return j;
  }
  if (fam == "lamperti-stable") {
    const LampertiTail& l = *jumps.lamperti();
    j["alpha"] = l.alpha;
    j["c_plus"] = l.c_plus;
    j["c_minus"] = l.c_minus;
    return j;
  }
  // composite (and any transformed measure): full structural dump
  j["family"] = "composite";
  j["plus"] = components_to_json(jumps.exp_plus());
  j["minus"] = components_to_json(jumps.exp_minus());
  json tilted = json::array();
  for (const TiltedTail& t : jumps.tilted())
    tilted.push_back(json{{"side", t.side},
                          {"c", t.c},
                          {"alpha", t.alpha},
                          {"gamma", t.gamma},
                          {"shift", t.shift}});
  j["tilted"] = tilted;
  return j;
}

JumpSpec jumps_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::Schema, "jumps must be an object");
  std::string fam = require_string(j, "family");
  if (fam == "none") return JumpSpec::none();
  if (fam == "exponential-two-sided")
    return JumpSpec::exponential_two_sided(
        require_number(j, "lambda_plus"), require_number(j, "eta_plus"),
        require_number(j, "lambda_minus"), require_number(j, "eta_minus"));
  if (fam == "compound-poisson")
    return JumpSpec::compound_poisson(components_from_json(j, "plus"),
                                      components_from_json(j, "minus"));
  if (fam == "hyper-exponential")
    return JumpSpec::hyper_exponential(components_from_json(j, "plus"),
                                       components_from_json(j, "minus"));
  if (fam == "tilted-stable-tail")
    return JumpSpec::tilted_stable_tail(require_number(j, "c"),
                                        require_number(j, "alpha"),
                                        require_number(j, "gamma"));
  if (fam == "spectrally-negative-parametric")
    return JumpSpec::spectrally_negative_parametric(
        require_number(j, "c"), require_number(j, "alpha"),
        require_number(j, "gamma"));
  if (fam == "lamperti-stable")
    return JumpSpec::lamperti_stable(require_number(j, "alpha"),
                                     require_number(j, "c_plus"),
                                     require_number(j, "c_minus"));
  if (fam == "composite") {
    std::vector<TiltedTail> tilted;
    if (j.contains("tilted")) {
      if (!j.at("tilted").is_array())
        fail(ErrorCode::Schema, "field 'tilted' must be an array");
      for (const json& e : j.at("tilted")) {
        if (!e.is_object())
          fail(ErrorCode::Schema, "tilted part must be an object");
        TiltedTail t;
        t.side = static_cast<int>(require_number(e, "side"));
        t.c = require_number(e, "c");
        t.alpha = require_number(e, "alpha");
        t.gamma = require_number(e, "gamma");
        t.shift = e.contains("shift") ? require_number(e, "shift") : 0.0;
        tilted.push_back(t);
      }
    }
    return JumpSpec::composite(components_from_json(j, "plus"),
                               components_from_json(j, "minus"),
                               std::move(tilted));
  }
  fail(ErrorCode::Schema, "unknown jump family '" + fam + "'");
}

json model_to_json_obj(const LevyModel& model) {
  return json{{"drift", model.drift},
              {"gaussian", model.gaussian},
              {"kill", model.kill},
              {"jumps", jumps_to_json(model.jumps)}};
}

LevyModel model_from_json_obj(const json& j) {
  if (!j.is_object()) fail(ErrorCode::Schema, "model must be a JSON object");
  LevyModel m;
  m.drift = require_number(j, "drift");
  m.gaussian = require_number(j, "gaussian");
  m.kill = require_number(j, "kill");
  if (!j.contains("jumps"))
    fail(ErrorCode::Schema, "missing field 'jumps'");
  m.jumps = jumps_from_json(j.at("jumps"));
  validate_model(m);
  return m;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::Schema, "input is not valid JSON");
  return j;
}

}  // namespace

uint64_t text_hash(const std::string& text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(uint64_t h) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string model_to_json(const LevyModel& model) {
  return model_to_json_obj(model).dump(2) + "\n";
}

LevyModel model_from_json(const std::string& text) {
  return model_from_json_obj(parse(text));
}

LevyModel load_model(const std::string& path) {
  return model_from_json(read_text(path));
}

void save_model(const LevyModel& model, const std::string& path) {
  write_text(path, model_to_json(model));
}

uint64_t model_hash(const LevyModel& model) {
  return text_hash(model_to_json(model));
}

std::string factor_to_json(const LadderExponent& factor) {
  if (!factor.has_triplet())
    fail(ErrorCode::ParameterViolation,
         "custom quotient factors have no parametric serialization");
  json j{{"role", factor.side() == LadderExponent::Side::Ascending
                      ? "ascending"
                      : "descending"},
         {"kill", factor.kill()},
         {"delta", factor.delta()},
         {"measure", jumps_to_json(factor.measure())}};
  return j.dump(2) + "\n";
}

LadderExponent factor_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.is_object()) fail(ErrorCode::Schema, "factor must be a JSON object");
  std::string role = require_string(j, "role");
  double kill = require_number(j, "kill");
  double delta = require_number(j, "delta");
  if (!j.contains("measure"))
    fail(ErrorCode::Schema, "missing field 'measure'");
  JumpSpec measure = jumps_from_json(j.at("measure"));
  if (role == "ascending")
    return LadderExponent::ascending(kill, delta, std::move(measure));
  if (role == "descending")
    return LadderExponent::descending(kill, delta, std::move(measure));
  fail(ErrorCode::Schema, "role must be 'ascending' or 'descending'");
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_format(const CsvMeta& meta,
                       const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  out << "# levyfn-version: " << kLibraryVersion << "\n";
  out << "# model-hash: " << hash_hex(meta.model_hash) << "\n";
  out << "# seed: " << meta.seed << "\n";
  if (!meta.scheme.empty()) out << "# scheme: " << meta.scheme << "\n";
  for (const auto& [k, v] : meta.extra) out << "# " << k << ": " << v << "\n";
  for (size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const std::vector<double>& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
  return out.str();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) fail(ErrorCode::Io, "failed writing '" + path + "'");
}

void save_samples(const SampleSet& samples, const std::string& path) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(samples.draws.data()),
              static_cast<std::streamsize>(samples.draws.size() *
                                           sizeof(double)));
    if (!out) fail(ErrorCode::Io, "failed writing '" + path + "'");
  }
  json side{{"n", samples.draws.size()},
            {"scheme", scheme_label(samples.scheme, samples.dt, samples.eps)},
            {"dt", samples.dt},
            {"eps", samples.eps},
            {"seed", samples.seed},
            {"model_hash", hash_hex(samples.model_hash)},
            {"version", kLibraryVersion}};
  write_text(path + ".json", side.dump(2) + "\n");
}

SampleSet load_samples(const std::string& path) {
  json side = parse(read_text(path + ".json"));
  SampleSet s;
  if (!side.is_object()) fail(ErrorCode::Schema, "sidecar must be an object");
  size_t n = static_cast<size_t>(require_number(side, "n"));
  s.dt = require_number(side, "dt");
  s.eps = require_number(side, "eps");
  s.seed = static_cast<uint64_t>(require_number(side, "seed"));
  std::string label = require_string(side, "scheme");
  std::string base = label.substr(0, label.find('('));
  if (auto sc = scheme_from_name(base))
    s.scheme = *sc;
  else
    fail(ErrorCode::Schema, "unknown scheme '" + label + "'");
  std::string hash = require_string(side, "model_hash");
  s.model_hash = std::strtoull(hash.c_str(), nullptr, 16);

  std::string raw = read_text(path);
  if (raw.size() != n * sizeof(double))
    fail(ErrorCode::Schema, "sample file size does not match sidecar n");
  s.draws.resize(n);
  std::memcpy(s.draws.data(), raw.data(), raw.size());
  return s;
}

std::string error_json(ErrorCode code, const std::string& message) {
  json j{{"error", error_code_name(code)}, {"message", message}};
  return j.dump() + "\n";
}

}  // namespace levyfn
