#pragma once

// The digisurf command line: gen | nerve | compress | weight, plus check,
// iso, verify and surface. Exit codes: 0 success, 1 negative answer or
// failed verification, 2 usage or parse error, 3 resource cutoff.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "digisurf/digisurf.hpp"

namespace digisurf::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kResource = 3 };

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw ParseError("cannot open '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

// Writes to `path`, or to `out` when the path is empty or "-".
inline void write_output(const std::string& path, const std::string& text,
                         std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw ParseError("cannot write '" + path + "'");
  file << text;
}

inline DigitalGraph read_graph(const std::string& path, std::istream& in) {
  return graph_from_json_string(read_input(path, in));
}

}  // namespace detail

/// Runs one invocation and returns its exit code.
inline int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Digital models of closed surfaces: LCL covers, nerves, compression"};
  app.require_subcommand(1);

  std::string word = "torus";
  int rows = 4;
  int cols = 4;
  bool aligned = false;
  std::string input;
  std::string input_b;
  std::string output;
  std::string trace_path;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::string surface_name;
  std::size_t max_points = 20;

  auto* gen = app.add_subcommand("gen", "Generate a brick cover of a surface");
  gen->add_option("--word", word, "sphere | torus | klein | projective")->required();
  gen->add_option("--rows", rows, "Brick rows (even, >= 4)")->required();
  gen->add_option("--cols", cols, "Bricks per row (>= 2)")->required();
  gen->add_flag("--aligned", aligned, "Aligned squares instead of bricks (not LCL)");
  gen->add_option("-o,--output", output, "Cover JSON output (default stdout)");

  auto* nerve_cmd = app.add_subcommand("nerve", "Intersection graph of a cover");
  nerve_cmd->add_option("input", input, "Cover JSON (default stdin)");
  nerve_cmd->add_option("-o,--output", output, "Graph output (default stdout)");
  nerve_cmd->add_option("--format", format, "json | dot")
      ->check(CLI::IsMember({"json", "dot"}));

  auto* verify_cmd = app.add_subcommand("verify", "LCL report of a cover");
  verify_cmd->add_option("input", input, "Cover JSON (default stdin)");

  auto* check = app.add_subcommand("check", "Classify a graph as a digital manifold");
  check->add_option("input", input, "Graph JSON (default stdin)");

  auto* compress_cmd = app.add_subcommand("compress", "Contract simple pairs");
  compress_cmd->add_option("input", input, "Graph JSON (default stdin)");
  compress_cmd->add_option("-o,--output", output, "Compressed graph (default stdout)");
  compress_cmd->add_option("--trace", trace_path, "Write the compression trace here");
  compress_cmd->add_option("--seed", seed, "Random contraction order with this seed");

  auto* weight = app.add_subcommand("weight", "Digital weight of a manifold");
  weight->add_option("input", input, "Graph JSON (default stdin)");

  auto* iso = app.add_subcommand("iso", "Graph isomorphism test");
  iso->add_option("a", input, "First graph JSON")->required();
  iso->add_option("b", input_b, "Second graph JSON")->required();

  auto* contract = app.add_subcommand("contractible", "Contractibility test");
  contract->add_option("input", input, "Graph JSON (default stdin)");
  contract->add_option("--max-points", max_points, "Search size cutoff");

  auto* surface = app.add_subcommand("surface", "Emit a canonical surface graph");
  surface->add_option("--name", surface_name,
                      "minimal-1-sphere | minimal-2-sphere | icosahedron | "
                      "king-torus | hex-torus")
      ->required();
  surface->add_option("--rows", rows, "Torus rows");
  surface->add_option("--cols", cols, "Torus columns");
  surface->add_option("-o,--output", output, "Graph output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    io.err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (gen->parsed()) {
      const PolygonWord w = parse_word(word);
      Cover cover;
      if (aligned) {
        cover = generate_aligned_grid(w, rows, cols);
      } else {
        try {
          cover = generate_brick_cover(w, rows, cols);
        } catch (const LclError& e) {
          io.err << "error: " << e.what() << "\n"
                 << lcl_report_to_json(e.report()).dump() << "\n";
          return kNegative;
        }
      }
      detail::write_output(output, cover_to_json(cover).dump() + "\n", io.out);
      return kOk;
    }

    if (nerve_cmd->parsed()) {
      const Cover cover = cover_from_json_string(detail::read_input(input, io.in));
      DigitalGraph g;
      try {
        g = nerve(cover);
      } catch (const LclError& e) {
        io.err << "error: " << e.what() << "\n"
               << lcl_report_to_json(e.report(), &cover).dump() << "\n";
        return kNegative;
      } catch (const CoverError& e) {
        io.err << "error: " << e.what() << "\n";
        return kNegative;
      }
      const std::string text =
          format == "dot" ? graph_to_dot(g) : graph_to_json_string(g) + "\n";
      detail::write_output(output, text, io.out);
      return kOk;
    }

    if (verify_cmd->parsed()) {
      const Cover cover = cover_from_json_string(detail::read_input(input, io.in));
      const auto problems = coverage_problems(cover);
      for (const auto& p : problems) io.err << "coverage: " << p << "\n";
      const LclReport report = verify_lcl(cover);
      io.out << lcl_report_to_json(report, &cover).dump() << "\n";
      return problems.empty() && report.pass() ? kOk : kNegative;
    }

    if (check->parsed()) {
      const DigitalGraph g = detail::read_graph(input, io.in);
      const ManifoldReport report = classify_manifold(g);
      nlohmann::ordered_json j;
      j["manifold"] = report.dimension.has_value();
      if (report.dimension) {
        j["dimension"] = *report.dimension;
      } else {
        j["dimension"] = nullptr;
      }
      j["sphere"] = to_string(report.is_sphere);
      j["euler"] = euler_characteristic(g);
      j["points"] = g.size();
      j["edges"] = g.edge_count();
      if (!report.dimension) {
        j["summary"] = "not a digital manifold";
      } else {
        j["summary"] = "dimension " + std::to_string(*report.dimension) + ", " +
                       to_string(report.is_sphere) + ", chi=" +
                       std::to_string(euler_characteristic(g));
      }
      io.out << j.dump() << "\n";
      return report.dimension ? kOk : kNegative;
    }

    if (compress_cmd->parsed()) {
      const DigitalGraph g = detail::read_graph(input, io.in);
      if (!manifold_dimension(g) || *manifold_dimension(g) == 0) {
        io.err << "error: input is not a digital 1- or 2-manifold\n";
        return kNegative;
      }
      CompressOptions opts;
      opts.seed = seed;
      const Compression c = compress(g, opts);
      detail::write_output(output, graph_to_json_string(c.graph) + "\n", io.out);
      if (!trace_path.empty()) {
        detail::write_output(trace_path,
                             compression_trace_to_json(c.trace).dump() + "\n", io.out);
      }
      return kOk;
    }

    if (weight->parsed()) {
      const DigitalGraph g = detail::read_graph(input, io.in);
      if (!manifold_dimension(g) || *manifold_dimension(g) == 0) {
        io.err << "error: input is not a digital 1- or 2-manifold\n";
        return kNegative;
      }
      io.out << digital_weight(g) << "\n";
      return kOk;
    }

    if (iso->parsed()) {
      if (input == "-" && input_b == "-") {
        throw ParseError("at most one input may be read from stdin");
      }
      const DigitalGraph a = detail::read_graph(input, io.in);
      const DigitalGraph b = detail::read_graph(input_b, io.in);
      const bool same = isomorphic(a, b);
      io.out << (same ? "isomorphic" : "not-isomorphic") << "\n";
      return same ? kOk : kNegative;
    }

    if (contract->parsed()) {
      const DigitalGraph g = detail::read_graph(input, io.in);
      SearchOptions opts;
      opts.max_points = max_points;
      const ReductionTrace t = reduction_trace(g, opts);
      io.out << trace_to_json(t).dump() << "\n";
      return t.verdict == Verdict::contractible ? kOk : kNegative;
    }

    if (surface->parsed()) {
      const DigitalGraph g =
          canonical_surface(parse_surface_name(surface_name), rows, cols);
      detail::write_output(output, graph_to_json_string(g) + "\n", io.out);
      return kOk;
    }
  } catch (const ResourceError& e) {
    io.err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const ParseError& e) {
    io.err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CoverError& e) {
    io.err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GraphError& e) {
    io.err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kUsage;
}

}  // namespace digisurf::cli
