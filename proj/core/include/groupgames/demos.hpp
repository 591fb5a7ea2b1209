#pragma once

#include "groupgames/document.hpp"

#include <string>
#include <vector>

namespace gg {

/// Built-in demonstration games, one per supported construction:
/// mp-finite, rsp-finite, mp-z, wald, rsp-q1, cones-z2, love-hate,
/// fubini-remark.
std::vector<std::string> demo_names();

/// The game document of a builtin demo (with a canonical profile embedded
/// where one exists). Throws DocumentError for unknown names.
std::string demo_game_document(const std::string& name);

/// Runs the demo's full computation and renders its composite report.
RenderedReport run_demo(const std::string& name, const ReportOptions& options = {});

}  // namespace gg
