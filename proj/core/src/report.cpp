#include "rwre/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rwre {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
      throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " +
                               ec.message());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() +
                                   ": " + ec.message());
}

std::string plot_series(const std::string& x_name, const std::string& y_name,
                        const std::vector<std::pair<double, double>>& points) {
  std::string out = "# " + x_name + " " + y_name + "\n";
  for (const auto& [x, y] : points) out += format_double(x) + " " + format_double(y) + "\n";
  return out;
}

}  // namespace rwre
