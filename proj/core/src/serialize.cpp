#include "pathweave/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pathweave/order.hpp"

namespace pathweave {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

nlohmann::json ext_to_json(ExtReal v) {
  if (v == kPlusInf) return "inf";
  if (v == kMinusInf) return "-inf";
  return v;
}

ExtReal ext_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kPlusInf;
    if (s == "-inf") return kMinusInf;
    throw std::invalid_argument("path json: bad extended-real sentinel '" + s + "'");
  }
  return j.get<double>();
}

}  // namespace

nlohmann::json path_to_json(const CadlagPath& p) {
  nlohmann::json j;
  j["components"] = nlohmann::json::array();
  for (const auto& c : p.components())
    j["components"].push_back({{"lo", ext_to_json(c.lo)}, {"hi", ext_to_json(c.hi)}});
  j["breakpoints"] = nlohmann::json::array();
  for (const auto& b : p.breakpoints())
    j["breakpoints"].push_back({b.t, ext_to_json(b.left), ext_to_json(b.right)});
  j["tails"] = nlohmann::json::object();
  for (const auto& [idx, v] : p.tails()) j["tails"][std::to_string(idx)] = ext_to_json(v);
  if (p.truncation_horizon) j["truncated_at"] = *p.truncation_horizon;
  return j;
}

CadlagPath path_from_json(const nlohmann::json& j) {
  std::vector<DomainComponent> components;
  for (const auto& c : j.at("components"))
    components.push_back({ext_from_json(c.at("lo")), ext_from_json(c.at("hi"))});
  std::vector<Breakpoint> bps;
  for (const auto& b : j.at("breakpoints")) {
    if (!b.is_array() || b.size() != 3)
      throw std::invalid_argument("path json: breakpoint must be [t, left, right]");
    bps.push_back({b[0].get<double>(), ext_from_json(b[1]), ext_from_json(b[2])});
  }
  std::map<std::size_t, ExtReal> tails;
  if (j.contains("tails"))
    for (const auto& [key, v] : j.at("tails").items())
      tails[static_cast<std::size_t>(std::stoull(key))] = ext_from_json(v);
  CadlagPath p(std::move(components), std::move(bps), std::move(tails));
  if (j.contains("truncated_at")) p.truncation_horizon = j.at("truncated_at").get<double>();
  return p;
}

nlohmann::json ensemble_to_json(const PathEnsemble& e) {
  nlohmann::json j;
  j["paths"] = nlohmann::json::array();
  for (std::size_t i = 0; i < e.size(); ++i) {
    nlohmann::json entry = path_to_json(e[i]);
    entry["id"] = e.id(i);
    j["paths"].push_back(std::move(entry));
  }
  return j;
}

PathEnsemble ensemble_from_json(const nlohmann::json& j) {
  PathEnsemble e;
  for (const auto& entry : j.at("paths"))
    e.add(path_from_json(entry), entry.value("id", std::string{}));
  return e;
}

std::string events_to_csv(const EventSample& sample) {
  std::string out = "x,t,r\n";
  for (const auto& e : sample.events) {
    out += format_double(e.x);
    out += ',';
    out += format_double(e.t);
    out += ',';
    out += format_double(e.r);
    out += '\n';
  }
  return out;
}

nlohmann::json crossing_report_json(const PathEnsemble& e) {
  const NoncrossingReport rep = is_noncrossing_set(e);
  nlohmann::json j;
  j["noncrossing"] = rep.noncrossing;
  if (!rep.noncrossing) {
    j["pair"] = {e.id(rep.first), e.id(rep.second)};
    const auto collisions = collision_scan(e[rep.first], e[rep.second]);
    if (!collisions.empty()) {
      j["witness_time"] = collisions.front().t;
      j["boundary"] = collisions.front().boundary;
    }
  }
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << contents;
}

PathEnsemble load_paths_file(const std::string& path) {
  const nlohmann::json j = nlohmann::json::parse(read_text_file(path));
  if (j.contains("paths")) return ensemble_from_json(j);
  PathEnsemble e;
  e.add(path_from_json(j));
  return e;
}

}  // namespace pathweave
