// brandt — command-line front end.
//
// Subcommands: vertices, complex, graph, mass, spectra, verify.
// Exit codes: 0 success (and all checks passed for `verify`),
//             2 invalid parameters,
//             3 internal invariant violation.

#include "brandt/io.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace brandt;

namespace {

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out);
  f << text;
}

std::string dumps(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brandt graphs and Brandt complexes of definite rational quaternion algebras"};
  app.require_subcommand(1);

  JobSpec js;
  int64_t ell = 0, disc = 0;
  std::string out, kind = "little", types;
  int block = -1;
  bool no_cache = false;
  int jobs = 1;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--g", js.g, "dimension g (1..4)")->required();
    c->add_option("--ell", ell, "isogeny prime ell")->required();
    c->add_option("--disc", disc, "discriminant (squarefree, odd number of primes)")->required();
    c->add_option("--max-dim", js.max_dim, "truncate the complex at this dimension");
    c->add_option("--out", out, "write the primary artifact to this path");
    c->add_flag("--no-cache", no_cache, "skip the result cache");
    c->add_option("--jobs", jobs, "worker count (accepted for compatibility; runs serially)");
  };

  CLI::App* c_vertices = app.add_subcommand("vertices", "class census with types and weights");
  add_common(c_vertices);
  CLI::App* c_complex = app.add_subcommand("complex", "cells, weights and the involution");
  add_common(c_complex);
  CLI::App* c_graph = app.add_subcommand("graph", "adjacency matrices as CSV plus DOT");
  add_common(c_graph);
  c_graph->add_option("--kind", kind, "enhanced | little | big")
      ->check(CLI::IsMember({"enhanced", "little", "big"}));
  c_graph->add_option("--types", types, "restrict to a type pair r,s (enhanced only)");
  CLI::App* c_mass = app.add_subcommand("mass", "mass table with formula verification");
  add_common(c_mass);
  CLI::App* c_spectra = app.add_subcommand("spectra", "certified spectra of the regular blocks");
  add_common(c_spectra);
  c_spectra->add_option("--block", block, "restrict to one bar type");
  CLI::App* c_verify = app.add_subcommand("verify", "run the instance verification suite");
  add_common(c_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ? 0 : 2;
  }

  js.ell = Int(static_cast<long>(ell));
  js.disc = Int(static_cast<long>(disc));

  try {
    if (auto err = validate_job(js)) {
      std::cerr << "error: " << *err << "\n";
      return 2;
    }
    (void)jobs;

    if (c_verify->parsed()) {
      JobSpec full = js;
      full.max_dim = -1;  // the checks need the full complex
      bool all = true;
      for (const auto& [name, ok] : verify_instance(full)) {
        std::printf("%s: %s\n", ok ? "PASS" : "FAIL", name.c_str());
        all = all && ok;
      }
      std::printf("%s\n", all ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED");
      return all ? 0 : 1;
    }

    json bundle = load_or_compute(js, !no_cache);

    if (c_vertices->parsed()) {
      json j{{"params", bundle.at("params")}, {"vertices", bundle.at("vertices")}};
      emit(dumps(j), out);
    } else if (c_complex->parsed()) {
      json j{{"params", bundle.at("params")},
             {"vertices", bundle.at("vertices")},
             {"cells", bundle.at("cells")},
             {"involution", bundle.at("involution")}};
      emit(dumps(j), out);
    } else if (c_graph->parsed()) {
      json m;
      if (kind == "enhanced" && !types.empty()) {
        int r = -1, s = -1;
        if (std::sscanf(types.c_str(), "%d,%d", &r, &s) != 2 || r < 0 || r > js.g || s < 0 ||
            s > js.g) {
          std::cerr << "error: --types expects r,s with 0 <= r,s <= g\n";
          return 2;
        }
        // carve the (r,s) block out of the stored full matrix
        const json& full = bundle.at("graphs").at("enhanced");
        std::vector<int> counts(js.g + 1, 0);
        for (const auto& v : bundle.at("vertices")) counts[v.at("type").get<int>()]++;
        std::vector<int> off(js.g + 2, 0);
        for (int t = 0; t <= js.g; ++t) off[t + 1] = off[t] + counts[t];
        json labels = json::array(), rows = json::array();
        json collabels = json::array();
        for (int i = 0; i < counts[r]; ++i) labels.push_back(full.at("labels")[off[r] + i]);
        for (int j2 = 0; j2 < counts[s]; ++j2) collabels.push_back(full.at("labels")[off[s] + j2]);
        for (int i = 0; i < counts[r]; ++i) {
          json row = json::array();
          for (int j2 = 0; j2 < counts[s]; ++j2)
            row.push_back(full.at("rows")[off[r] + i][off[s] + j2]);
          rows.push_back(std::move(row));
        }
        // rectangular block: CSV keeps row labels, columns take the target labels
        std::ostringstream os;
        for (const auto& l : collabels) os << "," << csv_escape(l.get<std::string>());
        os << "\r\n";
        for (int i = 0; i < counts[r]; ++i) {
          os << csv_escape(labels[i].get<std::string>());
          for (int j2 = 0; j2 < counts[s]; ++j2) os << "," << rows[i][j2].get<int64_t>();
          os << "\r\n";
        }
        emit(os.str(), out.empty() ? "" : out + ".csv");
        {
          std::ostringstream dot;
          dot << "graph enhanced_" << r << "_" << s << " {\n";
          for (const auto& l : labels) dot << "  " << l.get<std::string>() << ";\n";
          for (const auto& l : collabels)
            if (r != s) dot << "  " << l.get<std::string>() << ";\n";
          const json& fullrows = bundle.at("graphs").at("enhanced").at("rows");
          for (int i = 0; i < counts[r]; ++i)
            for (int j2 = 0; j2 < counts[s]; ++j2) {
              int gi = off[r] + i, gj = off[s] + j2;
              if (r == s && gj < gi) continue;
              int64_t a = fullrows[gi][gj].get<int64_t>();
              int64_t b = fullrows[gj][gi].get<int64_t>();
              if (a == 0 && b == 0) continue;
              dot << "  " << full.at("labels")[gi].get<std::string>() << " -- "
                  << full.at("labels")[gj].get<std::string>() << " [label=\"" << a << "/" << b
                  << "\"];\n";
            }
          dot << "}\n";
          emit(dot.str(), out.empty() ? "" : out + ".dot");
        }
      } else {
        if (kind == "big" && !bundle.at("graphs").count("big")) {
          std::cerr << "error: big graph needs the 1-skeleton; rerun without --max-dim 0\n";
          return 2;
        }
        m = bundle.at("graphs").at(kind);
        emit(matrix_csv(m), out.empty() ? "" : out + ".csv");
        std::string dot =
            kind == "little" ? little_dot(bundle) : matrix_dot(m, kind);
        emit(dot, out.empty() ? "" : out + ".dot");
      }
    } else if (c_mass->parsed()) {
      json j{{"params", bundle.at("params")}};
      if (bundle.count("masses"))
        j["masses"] = bundle.at("masses");
      else
        j["masses"] = nullptr;  // closed formulas cover prime discriminant
      emit(dumps(j), out);
    } else if (c_spectra->parsed()) {
      json sel = json::array();
      for (const auto& s : bundle.at("spectra"))
        if (block < 0 || s.at("bar").get<int>() == block) sel.push_back(s);
      json j{{"params", bundle.at("params")}, {"spectra", std::move(sel)}};
      emit(dumps(j), out);
    }
    return 0;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
