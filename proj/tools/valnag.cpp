#include "valnag/valnag.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

namespace fs = std::filesystem;

namespace {

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

std::optional<std::optional<valnag::Rational>> parse_t_max(const std::string& text) {
  if (text == "auto") return std::optional<valnag::Rational>{};
  auto q = valnag::parse_rational(text);
  if (!q || *q <= 0) return std::nullopt;
  return std::optional<valnag::Rational>{*q};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants, Zariski chambers and Seshadri bounds of plane divisorial valuations"};
  std::string command, scene_file, json_out, svg_out, t_text, t_max_text, batch_dir;
  app.add_option("subcommand", command, "invariants | zariski | walk | nok | bounds | verdict | suite | threshold")
      ->required()
      ->check(CLI::IsMember(valnag::subcommands()));
  app.add_option("scene", scene_file, "scene file (.valnag)");
  app.add_option("--json", json_out, "also write the JSON result to this file");
  app.add_option("--svg", svg_out, "write the polygon drawing (nok only)");
  app.add_option("--t", t_text, "segment parameter for zariski");
  app.add_option("--t-max", t_max_text, "walk bound: rational or auto");
  app.add_option("--batch", batch_dir, "run every .valnag file of a directory");
  CLI11_PARSE(app, argc, argv);

  valnag::RunOptions opts;
  if (!t_text.empty()) {
    opts.t = valnag::parse_rational(t_text);
    if (!opts.t) {
      std::cerr << "error: --t expects a rational, got '" << t_text << "'\n";
      return 1;
    }
  }
  if (!t_max_text.empty()) {
    opts.t_max = parse_t_max(t_max_text);
    if (!opts.t_max) {
      std::cerr << "error: --t-max expects a positive rational or auto, got '" << t_max_text << "'\n";
      return 1;
    }
  }
  opts.want_svg = !svg_out.empty();

  if (!batch_dir.empty()) {
    std::vector<std::string> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(batch_dir, ec))
      if (entry.is_regular_file() && entry.path().extension() == ".valnag") files.push_back(entry.path().string());
    if (ec) {
      std::cerr << "error: cannot list " << batch_dir << ": " << ec.message() << "\n";
      return 1;
    }
    std::sort(files.begin(), files.end());
    valnag::RunOptions batch_opts = opts;
    batch_opts.want_svg = false;
    std::vector<std::future<valnag::RunResult>> jobs;
    for (const auto& f : files)
      jobs.push_back(std::async(std::launch::async, [&, f] { return valnag::run_file(command, f, batch_opts); }));
    valnag::report::Json all = valnag::report::Json::array();
    int exit_code = 0;
    for (std::size_t k = 0; k < files.size(); ++k) {
      auto res = jobs[k].get();
      exit_code = std::max(exit_code, res.exit_code);
      all.push_back({{"file", fs::path(files[k]).filename().string()}, {"exitCode", res.exit_code}, {"result", res.json}});
    }
    std::string text = all.dump(2) + "\n";
    std::cout << text;
    if (!json_out.empty() && !write_file(json_out, text)) {
      std::cerr << "error: cannot write " << json_out << "\n";
      return 1;
    }
    return exit_code;
  }

  if (scene_file.empty()) {
    std::cerr << "error: a scene file or --batch is required\n";
    return 1;
  }
  auto res = valnag::run_file(command, scene_file, opts);
  std::string text = res.json.dump(2) + "\n";
  std::cout << text;
  for (const auto& d : res.diagnostics) std::cerr << scene_file << ":" << d.str() << "\n";
  if (!json_out.empty() && !write_file(json_out, text)) {
    std::cerr << "error: cannot write " << json_out << "\n";
    return 1;
  }
  if (!svg_out.empty()) {
    if (res.svg) {
      if (!write_file(svg_out, *res.svg)) {
        std::cerr << "error: cannot write " << svg_out << "\n";
        return 1;
      }
    } else if (res.exit_code == 0) {
      std::cerr << "warning: --svg is only produced by nok\n";
    }
  }
  return res.exit_code;
}
