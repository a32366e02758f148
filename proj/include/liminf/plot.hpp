#pragma once

#include <string>

#include "liminf/config.hpp"
#include "liminf/report.hpp"

namespace liminf {

/// The report lacks the series a plot needs; `task` produces it.
class MissingSeries : public Error {
 public:
  MissingSeries(PlotKind kind, Task task)
      : Error("plot '" + to_string(kind) + "' needs the '" + to_string(task) + "' task"), task_(task) {}
  Task task() const { return task_; }

 private:
  Task task_;
};

Task required_task(PlotKind kind);

/// Self-contained SVG document.
std::string render_svg(const Report& report, PlotKind kind);
void write_plot(const Report& report, PlotKind kind, const std::string& path);

}  // namespace liminf
