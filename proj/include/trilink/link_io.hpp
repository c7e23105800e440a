#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "trilink/link.hpp"

namespace trilink {

/// Built-in links: "borromean", "split-unlink", "borromean-reversed".
Link3<double> preset(std::string_view name);
std::vector<std::string> preset_names();

/// Parse a link document:
///   {"components": [{"cos": [[x,y,z], ...], "sin": [[x,y,z], ...]}, x3]}
/// Entry k of each array is the coefficient of cos(k theta) / sin(k theta).
/// Throws ParseError or DisjointnessViolation.
Link3<double> load_link(std::string_view document, const LinkOptions& options = {});
Link3<double> load_link_file(const std::filesystem::path& path,
                             const LinkOptions& options = {});

/// Inverse of load_link; doubles are written in shortest round-trip form.
std::string serialize_link(const Link3<double>& link);

}  // namespace trilink
