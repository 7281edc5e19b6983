// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: decompose semilinear sets, refine decompositions
// to special ones, compute stars, cover open sets by open cells, verify the
// structural properties, and render 2-D pictures.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lincell/io.hpp"
#include "lincell/lincell.hpp"
#include "lincell/render.hpp"
#include "lincell/selftest.hpp"

namespace {

using namespace lincell;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text << "\n";
}

std::vector<SemilinearSet> read_targets(const Json& j) {
  std::vector<SemilinearSet> targets;
  if (j.is_array())
    for (const Json& t : j) targets.push_back(semilinear_from_json(t));
  else
    targets.push_back(semilinear_from_json(j));
  return targets;
}

struct VerifyReport {
  std::string check;
  bool pass = true;
  Json witnesses = Json::array();

  void fail(Json witness) {
    pass = false;
    witnesses.push_back(std::move(witness));
  }
  int emit(const std::string& out_path) const {
    Json j{{"check", check}, {"status", pass ? "pass" : "fail"}, {"witnesses", witnesses}};
    write_output(out_path, j.dump(2));
    return pass ? 0 : 1;
  }
};

int run_verify(const std::string& check, const std::string& decomp_path,
               const std::string& set_path, const std::string& cover_path,
               const std::string& targets_path, std::optional<double> grid_box,
               std::optional<unsigned> grid_denom, const std::string& out_path) {
  VerifyReport report;
  report.check = check;

  if (check == "partition") {
    Decomposition d = decomposition_from_json(read_json_file(decomp_path));
    DecompositionCheck chk = is_decomposition(d);
    if (!chk.ok) report.fail(Json{{"diagnostic", chk.diagnostic}});
    if (!targets_path.empty()) {
      std::vector<SemilinearSet> targets = read_targets(read_json_file(targets_path));
      for (size_t t = 0; t < targets.size(); ++t)
        for (size_t i = 0; i < d.cells().size(); ++i) {
          const SemilinearSet cell = d.cells()[i].formula();
          bool inside = targets[t].member(d.cells()[i].sample_point());
          bool ok = inside ? subset_of(cell, targets[t])
                           : !feasible(intersect(cell, targets[t]));
          if (!ok)
            report.fail(Json{{"target", t},
                             {"cell", i},
                             {"reason", "cell straddles the target boundary"}});
        }
    }
  } else if (check == "special") {
    Decomposition d = decomposition_from_json(read_json_file(decomp_path));
    SpecialCheck chk = is_special(d);
    if (!chk.ok)
      report.fail(Json{{"graph_cell", chk.graph_cell},
                       {"band_cell", chk.band_cell},
                       {"reason", chk.violation}});
  } else if (check == "frontier") {
    Decomposition d = decomposition_from_json(read_json_file(decomp_path));
    FrontierCheck chk = frontier_check(d);
    if (!chk.ok)
      report.fail(Json{{"cell", chk.cell}, {"other", chk.other}, {"reason", chk.violation}});
  } else if (check == "cover") {
    SemilinearSet x = semilinear_from_json(read_json_file(set_path));
    std::vector<OpenPLCell> cover = cover_from_json(read_json_file(cover_path));
    SemilinearSet un(x.dim);
    for (size_t i = 0; i < cover.size(); ++i) {
      SemilinearSet r = cover[i].realized_set();
      if (!is_open(r)) report.fail(Json{{"cell", i}, {"reason", "cover cell is not open"}});
      if (!subset_of(r, x))
        report.fail(Json{{"cell", i}, {"reason", "cover cell leaves the set"}});
      un.disjuncts.insert(un.disjuncts.end(), r.disjuncts.begin(), r.disjuncts.end());
    }
    if (!equal_sets(un, x))
      report.fail(Json{{"reason", "union of cover cells differs from the set"}});
    GridSpec g = GridSpec::defaults(x.dim);
    if (grid_box) g.box_radius = Rational(static_cast<long>(*grid_box * 4), 4);
    if (grid_denom) g.denominator = *grid_denom;
    for (const Point& p : grid_compare(un, x, g))
      report.fail(Json{{"grid_point", to_json(p)}, {"reason", "grid disagreement"}});
  } else {
    throw InputError("unknown check '" + check + "'");
  }
  return report.emit(out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact linear cell decompositions, stars, and open-cell covers over Q^n"};
  app.require_subcommand(1);

  std::string in_path, out_path, decomp_path, set_path, cover_path, targets_path, svg_path;
  std::string check, bounds_text;
  std::optional<size_t> cell_index;
  std::optional<double> grid_box;
  std::optional<unsigned> grid_denom;
  uint64_t seed = 42;
  bool minimize = false;

  CLI::App* cmd_decompose = app.add_subcommand("decompose", "decompose Q^n by semilinear sets");
  cmd_decompose->add_option("input", in_path, "semilinear set JSON (object or array)")
      ->required();
  cmd_decompose->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* cmd_specialize =
      app.add_subcommand("specialize", "refine a decomposition to a special one");
  cmd_specialize->add_option("input", in_path, "decomposition JSON")->required();
  cmd_specialize->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* cmd_star = app.add_subcommand("star", "star of a cell or a set");
  cmd_star->add_option("--decomposition", decomp_path, "decomposition JSON")->required();
  cmd_star->add_option("--cell", cell_index, "cell index");
  cmd_star->add_option("--set", set_path, "semilinear set JSON");
  cmd_star->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* cmd_cover = app.add_subcommand("cover", "cover an open set by open cells");
  cmd_cover->add_option("input", in_path, "semilinear set JSON");
  cmd_cover->add_option("--set", set_path, "semilinear set JSON (alternative to positional)");
  cmd_cover->add_flag("--minimize", minimize, "greedily drop redundant cover cells");
  cmd_cover->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* cmd_verify = app.add_subcommand("verify", "verify structural properties");
  cmd_verify->add_option("--check", check, "partition|special|frontier|cover")->required();
  cmd_verify->add_option("--decomposition", decomp_path, "decomposition JSON");
  cmd_verify->add_option("--set", set_path, "semilinear set JSON");
  cmd_verify->add_option("--cover", cover_path, "cover JSON (array of open cells)");
  cmd_verify->add_option("--targets", targets_path, "target sets JSON");
  cmd_verify->add_option("--grid-box", grid_box, "grid box radius");
  cmd_verify->add_option("--grid-denom", grid_denom, "grid denominator");
  cmd_verify->add_option("-o,--output", out_path, "report file (default stdout)");

  CLI::App* cmd_render = app.add_subcommand("render", "render a 2-D figure");
  cmd_render->add_option("input", in_path, "decomposition or cover JSON")->required();
  cmd_render->add_option("--svg", svg_path, "output SVG file")->required();
  cmd_render->add_option("--bounds", bounds_text, "viewport as x0,y0,x1,y1 (default -5,-5,5,5)");

  CLI::App* cmd_selftest = app.add_subcommand("selftest", "run the invariant battery");
  cmd_selftest->add_option("--seed", seed, "random seed (default 42)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_decompose->parsed()) {
      std::vector<SemilinearSet> targets = read_targets(read_json_file(in_path));
      if (targets.empty()) throw InputError("no target sets given");
      Decomposition d = linear_cdt(targets, targets.front().dim);
      write_output(out_path, to_json(d).dump(2));
      return 0;
    }
    if (cmd_specialize->parsed()) {
      Decomposition d = decomposition_from_json(read_json_file(in_path));
      write_output(out_path, to_json(specialize(d)).dump(2));
      return 0;
    }
    if (cmd_star->parsed()) {
      if (cell_index.has_value() == !set_path.empty())
        throw InputError("star needs exactly one of --cell or --set");
      Decomposition d = decomposition_from_json(read_json_file(decomp_path));
      Json j;
      if (cell_index) {
        if (*cell_index >= d.cells().size()) throw InputError("cell index out of range");
        StarIndex idx(d);
        const std::vector<size_t>& row = idx.star_of(*cell_index);
        j["star_cells"] = row;
        SemilinearSet u(d.dim());
        for (size_t i : row) u.add_disjunct(d.cells()[i].formula_system());
        j["st"] = to_json(u);
        if (is_special(d).ok)
          j["open_cell"] = to_json(star_open_cell(d, *cell_index, idx));
      } else {
        SemilinearSet x = semilinear_from_json(read_json_file(set_path));
        std::vector<size_t> row = star_cell_indices(d, x);
        j["star_cells"] = row;
        j["st"] = to_json(st(d, x));
      }
      write_output(out_path, j.dump(2));
      return 0;
    }
    if (cmd_cover->parsed()) {
      if (in_path.empty()) in_path = set_path;
      if (in_path.empty()) throw InputError("cover needs a set file");
      SemilinearSet x = semilinear_from_json(read_json_file(in_path));
      std::vector<OpenPLCell> cover = cover_open_set(x);
      if (minimize) cover = minimize_cover(cover, x);
      write_output(out_path, cover_to_json(cover).dump(2));
      return 0;
    }
    if (cmd_verify->parsed())
      return run_verify(check, decomp_path, set_path, cover_path, targets_path, grid_box,
                        grid_denom, out_path);
    if (cmd_render->parsed()) {
      RenderBounds bounds;
      if (!bounds_text.empty()) {
        if (std::sscanf(bounds_text.c_str(), "%lf,%lf,%lf,%lf", &bounds.x0, &bounds.y0,
                        &bounds.x1, &bounds.y1) != 4 ||
            bounds.x0 >= bounds.x1 || bounds.y0 >= bounds.y1)
          throw InputError("bounds must be x0,y0,x1,y1 with x0<x1 and y0<y1");
      }
      Json j = read_json_file(in_path);
      std::string svg;
      if (j.is_array())
        svg = render_svg(cover_from_json(j), bounds);
      else
        svg = render_svg(decomposition_from_json(j), bounds);
      std::ofstream out(svg_path);
      if (!out) throw InputError("cannot write '" + svg_path + "'");
      out << svg;
      return 0;
    }
    if (cmd_selftest->parsed()) return selftest(seed, std::cout);
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
