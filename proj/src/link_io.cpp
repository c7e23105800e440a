#include "trilink/link_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace trilink {
namespace {

using json = nlohmann::json;
using Coeffs = TrigCurve<double>::Coeffs;

Coeffs parse_coeffs(const json& node, const std::string& path) {
  if (!node.is_array()) throw ParseError(path, "expected an array of [x,y,z] triples");
  Coeffs out(3, static_cast<Eigen::Index>(node.size()));
  for (std::size_t k = 0; k < node.size(); ++k) {
    const std::string here = path + "/" + std::to_string(k);
    const json& triple = node[k];
    if (!triple.is_array() || triple.size() != 3) {
      throw ParseError(here, "expected a triple [x,y,z]");
    }
    for (std::size_t c = 0; c < 3; ++c) {
      if (!triple[c].is_number()) {
        throw ParseError(here + "/" + std::to_string(c), "expected a number");
      }
      out(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(k)) = triple[c].get<double>();
    }
  }
  return out;
}

TrigCurve<double> parse_component(const json& node, const std::string& path) {
  if (!node.is_object()) throw ParseError(path, "expected an object with \"cos\" and \"sin\"");
  if (!node.contains("cos")) throw ParseError(path, "missing \"cos\"");
  if (!node.contains("sin")) throw ParseError(path, "missing \"sin\"");
  return TrigCurve<double>(parse_coeffs(node["cos"], path + "/cos"),
                           parse_coeffs(node["sin"], path + "/sin"));
}

json coeffs_to_json(const Coeffs& c) {
  json out = json::array();
  for (Eigen::Index k = 0; k < c.cols(); ++k) out.push_back({c(0, k), c(1, k), c(2, k)});
  return out;
}

}  // namespace

Link3<double> preset(std::string_view name) {
  using V = Vec3<double>;
  using C = TrigCurve<double>;
  const V zero = V::Zero();
  if (name == "borromean" || name == "borromean-reversed") {
    C x = C::ellipse(zero, V(2, 0, 0), V(0, 7, 0));
    const C y = C::ellipse(zero, V(0, 2, 0), V(0, 0, 7));
    const C z = C::ellipse(zero, V(0, 0, 2), V(7, 0, 0));
    if (name == "borromean-reversed") x = x.reversed();
    return Link3<double>(x, y, z);
  }
  if (name == "split-unlink") {
    // Unit circles in parallel xy-planes, centers 10 apart.
    return Link3<double>(C::ellipse(V(0, 0, 0), V(1, 0, 0), V(0, 1, 0)),
                         C::ellipse(V(10, 0, 0), V(1, 0, 0), V(0, 1, 0)),
                         C::ellipse(V(20, 0, 0), V(1, 0, 0), V(0, 1, 0)));
  }
  throw UnknownPreset("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"borromean", "split-unlink", "borromean-reversed"};
}

Link3<double> load_link(std::string_view document, const LinkOptions& options) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  if (!root.is_object() || !root.contains("components")) {
    throw ParseError("/", "expected an object with a \"components\" array");
  }
  const json& comps = root["components"];
  if (!comps.is_array() || comps.size() != 3) {
    throw ParseError("/components", "expected exactly three components");
  }
  return Link3<double>(parse_component(comps[0], "/components/0"),
                       parse_component(comps[1], "/components/1"),
                       parse_component(comps[2], "/components/2"), options);
}

Link3<double> load_link_file(const std::filesystem::path& path, const LinkOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_link(buf.str(), options);
}

std::string serialize_link(const Link3<double>& link) {
  json comps = json::array();
  for (int i = 0; i < 3; ++i) {
    const auto& c = link.component(i);
    comps.push_back({{"cos", coeffs_to_json(c.cos_coeffs())},
                     {"sin", coeffs_to_json(c.sin_coeffs())}});
  }
  return json{{"components", comps}}.dump(2) + "\n";
}

}  // namespace trilink
