#include "dcpack/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dcpack/errors.hpp"

namespace dcpack {

using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double positive_number(const json& value, const std::string& field) {
  if (!value.is_number()) throw InputError(field + ": expected a number");
  const double v = value.get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InputError(field + ": must be positive and finite, got " +
                     value.dump());
  }
  return v;
}

ContainerKind parse_container(const json& node) {
  if (node.is_string()) {
    const auto kind = node.get<std::string>();
    if (kind == "circle") return CircleContainer{};
    if (kind == "strip") {
      throw InputError("container: strip needs an object with a width");
    }
    throw InputError("container: unknown kind '" + kind + "'");
  }
  if (!node.is_object()) throw InputError("container: expected string or object");
  const auto type = node.value("type", std::string{});
  if (type == "circle") return CircleContainer{};
  if (type == "strip") {
    if (!node.contains("width")) throw InputError("container.width: missing");
    return StripContainer{positive_number(node.at("width"), "container.width")};
  }
  throw InputError("container.type: unknown kind '" + type + "'");
}

json container_json(const ContainerKind& kind) {
  if (const auto* strip = std::get_if<StripContainer>(&kind)) {
    return json{{"type", "strip"}, {"width", strip->width}};
  }
  return json{{"type", "circle"}};
}

json parse_document(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Report a line number rather than the byte offset alone.
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(),
                                     text.begin() + static_cast<long>(offset),
                                     '\n');
    throw InputError(what + ": JSON syntax error near line " +
                     std::to_string(line) + " (" + e.what() + ")");
  }
}

}  // namespace

const char* tool_version() { return "0.1.0"; }

InstanceFile parse_instance_json(const std::string& text,
                                 const std::string& fallback_name) {
  const json doc = parse_document(text, "instance");
  if (!doc.is_object()) throw InputError("instance: expected a JSON object");
  InstanceFile file;
  file.name = doc.value("name", fallback_name);
  file.container = doc.contains("container") ? parse_container(doc["container"])
                                             : ContainerKind{CircleContainer{}};
  if (!doc.contains("radii") || !doc["radii"].is_array()) {
    throw InputError("radii: missing or not an array");
  }
  const json& radii = doc["radii"];
  if (radii.empty()) throw InputError("radii: empty");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    file.radii.push_back(
        positive_number(radii[k], "radii[" + std::to_string(k) + "]"));
  }
  if (doc.contains("best_known") && !doc["best_known"].is_null()) {
    file.best_known = positive_number(doc["best_known"], "best_known");
  }
  file.instance();  // validates the container against the radii
  return file;
}

InstanceFile parse_instance_text(const std::string& text,
                                 const std::string& name) {
  std::istringstream in(text);
  long long count = 0;
  if (!(in >> count) || count <= 0) {
    throw InputError("line 1: expected a positive circle count");
  }
  InstanceFile file;
  file.name = name;
  file.container = CircleContainer{};
  for (long long k = 0; k < count; ++k) {
    std::string token;
    if (!(in >> token)) {
      throw InputError("radius #" + std::to_string(k + 1) + ": missing");
    }
    double r = 0.0;
    try {
      std::size_t used = 0;
      r = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InputError("radius #" + std::to_string(k + 1) + ": '" + token +
                       "' is not a number");
    }
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw InputError("radius #" + std::to_string(k + 1) +
                       ": must be positive and finite, got " + token);
    }
    file.radii.push_back(r);
  }
  std::string extra;
  if (in >> extra) throw InputError("unexpected trailing token '" + extra + "'");
  return file;
}

InstanceFile read_instance(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  const std::string stem = path.stem().string();
  try {
    if (path.extension() == ".json") return parse_instance_json(text, stem);
    return parse_instance_text(text, stem);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string instance_to_json(const InstanceFile& file) {
  json doc{{"name", file.name},
           {"container", container_json(file.container)},
           {"radii", file.radii}};
  if (file.best_known) doc["best_known"] = *file.best_known;
  return doc.dump(2) + "\n";
}

ResultFile make_result(const InstanceFile& instance, const RunResult& run,
                       double epsilon) {
  ResultFile result;
  result.instance_name = instance.name;
  result.container = instance.container;
  result.radii = instance.instance().radii();
  result.lower = run.lower;
  result.upper = run.upper;
  result.gap = run.gap;
  result.epsilon = epsilon;
  result.status = to_string(run.status);
  result.placement = run.incumbent;
  result.log = run.log;
  result.seconds = run.seconds;
  result.bounds_seconds = run.bounds_seconds;
  result.version = tool_version();
  return result;
}

std::string result_to_json(const ResultFile& result) {
  json doc;
  doc["format_version"] = kResultFormatVersion;
  doc["tool_version"] = result.version;
  doc["instance"] = result.instance_name;
  doc["container"] = container_json(result.container);
  doc["radii"] = result.radii;
  doc["lower"] = result.lower;
  doc["upper"] = result.upper;
  doc["gap"] = result.gap;
  doc["epsilon"] = result.epsilon;
  doc["status"] = result.status;
  if (result.placement) {
    json centers = json::array();
    for (std::size_t k = 0; k < result.placement->centers.size(); ++k) {
      const Point& p = result.placement->centers[k];
      centers.push_back({{"id", k + 1},
                         {"radius", result.radii.at(k)},
                         {"x", p.x},
                         {"y", p.y}});
    }
    doc["placement"] = {{"container_size", result.placement->container_size},
                        {"centers", centers}};
  } else {
    doc["placement"] = nullptr;
  }
  json log = json::array();
  for (const IterationRecord& r : result.log) {
    log.push_back({{"trial", r.trial},
                   {"R", r.R},
                   {"delta", r.delta},
                   {"theta", r.theta},
                   {"model", r.model},
                   {"outcome", r.outcome},
                   {"lower", r.lower},
                   {"upper", r.upper},
                   {"seconds", r.seconds},
                   {"nodes", r.nodes}});
  }
  doc["log"] = log;
  doc["timings"] = {{"total_seconds", result.seconds},
                    {"bounds_seconds", result.bounds_seconds}};
  return doc.dump(2) + "\n";
}

ResultFile parse_result_json(const std::string& text) {
  const json doc = parse_document(text, "result");
  ResultFile result;
  try {
    result.instance_name = doc.value("instance", std::string{});
    result.container = doc.contains("container")
                           ? parse_container(doc["container"])
                           : ContainerKind{CircleContainer{}};
    result.radii = doc.at("radii").get<std::vector<double>>();
    result.lower = doc.value("lower", 0.0);
    result.upper = doc.value("upper", 0.0);
    result.gap = doc.value("gap", 0.0);
    result.epsilon = doc.value("epsilon", 0.0);
    result.status = doc.value("status", std::string{});
    result.version = doc.value("tool_version", std::string{});
    if (doc.contains("placement") && !doc["placement"].is_null()) {
      const json& node = doc["placement"];
      Placement placement;
      placement.container_size = node.at("container_size").get<double>();
      const json& centers = node.at("centers");
      placement.centers.assign(centers.size(), Point{});
      std::vector<bool> seen(centers.size(), false);
      for (const json& c : centers) {
        const auto id = c.at("id").get<std::size_t>();
        if (id < 1 || id > centers.size() || seen[id - 1]) {
          throw InputError("placement.centers: bad or repeated id " +
                           std::to_string(id));
        }
        seen[id - 1] = true;
        placement.centers[id - 1] = {c.at("x").get<double>(),
                                     c.at("y").get<double>()};
      }
      result.placement = std::move(placement);
    }
    if (doc.contains("log")) {
      for (const json& r : doc["log"]) {
        IterationRecord rec;
        rec.trial = r.value("trial", 0);
        rec.R = r.value("R", 0.0);
        rec.delta = r.value("delta", 0.0);
        rec.theta = r.value("theta", 0);
        rec.model = r.value("model", std::string{});
        rec.outcome = r.value("outcome", std::string{});
        rec.lower = r.value("lower", 0.0);
        rec.upper = r.value("upper", 0.0);
        rec.seconds = r.value("seconds", 0.0);
        rec.nodes = r.value("nodes", std::uint64_t{0});
        result.log.push_back(rec);
      }
    }
    if (doc.contains("timings")) {
      result.seconds = doc["timings"].value("total_seconds", 0.0);
      result.bounds_seconds = doc["timings"].value("bounds_seconds", 0.0);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("result: ") + e.what());
  }
  return result;
}

ResultFile read_result(const std::filesystem::path& path) {
  try {
    return parse_result_json(slurp(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed while writing " + path.string());
}

std::string bounds_to_json(const BoundReport& report) {
  json doc;
  doc["lb1"] = report.lb1;
  doc["lb2"] = report.lb2;
  doc["lb3"] = report.lb3 ? json(*report.lb3) : json(nullptr);
  doc["lb4"] = report.lb4 ? json(*report.lb4) : json(nullptr);
  if (!report.lb4_note.empty()) doc["lb4_note"] = report.lb4_note;
  doc["chosen_lb"] = report.chosen_lb;
  doc["ub"] = report.ub;
  doc["ub_source"] = report.ub_from_table ? "best-known table" : "greedy";
  doc["timings"] = {{"lb1", report.seconds_lb1},
                    {"lb2", report.seconds_lb2},
                    {"lb3", report.seconds_lb3},
                    {"lb4", report.seconds_lb4},
                    {"ub", report.seconds_ub}};
  return doc.dump(2) + "\n";
}

std::map<std::string, double> parse_best_known(const std::string& text) {
  std::map<std::string, double> table;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;
    double value = 0.0;
    if (!(fields >> value) || !(value > 0.0)) {
      throw InputError("best-known table line " + std::to_string(number) +
                       ": expected 'name value'");
    }
    table[name] = value;
  }
  return table;
}

std::map<std::string, double> read_best_known(
    const std::filesystem::path& path) {
  try {
    return parse_best_known(slurp(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace dcpack
