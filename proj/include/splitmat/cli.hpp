#pragma once

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "splitmat/splitmat.hpp"

namespace splitmat::cli {

namespace detail {

using nlohmann::json;

inline const char* yn(bool b) { return b ? "yes" : "no"; }

inline std::string join_flats(const std::vector<ElementSet>& flats) {
  if (flats.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < flats.size(); ++i) {
    if (i) out += ";";
    out += flats[i].csv();
  }
  return out;
}

inline json set_json(const ElementSet& s) { return json(s.elements()); }

inline json matroid_json(const Matroid& m) {
  json bases = json::array();
  for (mask_t b : m.bases()) bases.push_back(set_json({b, m.n()}));
  return json{{"n", m.n()}, {"r", m.rank()}, {"bases", bases}};
}

// A source is a catalog name when it looks like one; otherwise a file path.
// Commands that act on one matroid insist the file holds exactly one.
inline Matroid resolve_one(const std::string& src) {
  if (is_catalog_name(src)) return catalog_by_name(src);
  std::vector<Matroid> ms = read_matroid_file(src);
  if (ms.size() != 1)
    fail(errc::parse_error, "'" + src + "' holds " + std::to_string(ms.size()) +
                                " matroids; this command needs exactly one");
  return std::move(ms[0]);
}

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  std::string format = "text";
  bool quiet = false;

  bool text() const { return format == "text"; }
  // Informational lines; never part of the output grammar.
  void note(const std::string& line) const {
    if (text() && !quiet) out << "# " << line << "\n";
  }
};

inline int cmd_check(const Ctx& ctx, const std::string& src) {
  Matroid m = resolve_one(src);
  SplitReport rep = is_split(m);
  bool connected = !rep.component_analysis.has_value();
  ctx.note("n=" + std::to_string(m.n()) + " r=" + std::to_string(m.rank()) + " bases=" +
           std::to_string(m.bases().size()) + " connected=" + yn(connected));
  if (ctx.text()) {
    ctx.out << "SPLIT " << yn(rep.verdict) << "\n";
    for (const Certificate& c : rep.certificates)
      ctx.out << "CERT " << c.flat.csv() << " restr_conn=" << yn(c.restriction_connected)
              << " contr_conn=" << yn(c.contraction_connected)
              << " restr_unif=" << yn(c.restriction_uniform)
              << " contr_unif=" << yn(c.contraction_uniform) << "\n";
    if (rep.component_analysis) {
      for (const ComponentReport& c : rep.component_analysis->items)
        ctx.out << "COMPONENT " << c.block.csv() << " split=" << yn(c.split)
                << " uniform=" << yn(c.uniform) << "\n";
      ctx.out << "NONUNIFORM_COMPONENTS " << rep.component_analysis->non_uniform << "\n";
    }
    return 0;
  }
  json j{{"split", rep.verdict}, {"connected", connected}};
  json certs = json::array();
  for (const Certificate& c : rep.certificates)
    certs.push_back({{"flat", set_json(c.flat)},
                     {"restriction_connected", c.restriction_connected},
                     {"contraction_connected", c.contraction_connected},
                     {"restriction_uniform", c.restriction_uniform},
                     {"contraction_uniform", c.contraction_uniform}});
  j["certificates"] = certs;
  if (rep.component_analysis) {
    json comps = json::array();
    for (const ComponentReport& c : rep.component_analysis->items)
      comps.push_back({{"elements", set_json(c.block)}, {"split", c.split}, {"uniform", c.uniform}});
    j["components"] = comps;
    j["nonuniform_components"] = rep.component_analysis->non_uniform;
  }
  ctx.out << j.dump(2) << "\n";
  return 0;
}

inline int cmd_minor(const Ctx& ctx, const std::string& host_src, const std::string& target_src) {
  Matroid host = resolve_one(host_src);
  Matroid target = resolve_one(target_src);
  ctx.note("host n=" + std::to_string(host.n()) + " r=" + std::to_string(host.rank()) +
           "; target n=" + std::to_string(target.n()) + " r=" + std::to_string(target.rank()));
  std::optional<MinorWitness> w = has_minor(host, target);
  if (ctx.text()) {
    ctx.out << "MINOR " << yn(w.has_value()) << "\n";
    if (w) {
      ctx.out << "CONTRACT " << w->contracted.csv() << "\n";
      ctx.out << "DELETE " << w->deleted.csv() << "\n";
      ctx.out << "RELABEL";
      if (w->relabel.empty()) ctx.out << " -";
      for (std::size_t t = 0; t < w->relabel.size(); ++t)
        ctx.out << " " << t << "->" << w->relabel[t];
      ctx.out << "\n";
    }
    return 0;
  }
  json j{{"found", w.has_value()}};
  if (w) {
    j["contract"] = set_json(w->contracted);
    j["delete"] = set_json(w->deleted);
    j["relabel"] = json(w->relabel);
  }
  ctx.out << j.dump(2) << "\n";
  return 0;
}

inline int cmd_flacets(const Ctx& ctx, const std::string& src) {
  Matroid m = resolve_one(src);
  FlacetCrossCheck fc = crosscheck_flacets(m);
  if (ctx.text()) {
    ctx.out << "FLACETS combinatorial=" << join_flats(fc.combinatorial)
            << " geometric=" << join_flats(fc.geometric) << " agree=" << yn(fc.agree) << "\n";
  } else {
    json comb = json::array(), geom = json::array();
    for (const ElementSet& f : fc.combinatorial) comb.push_back(set_json(f));
    for (const ElementSet& f : fc.geometric) geom.push_back(set_json(f));
    ctx.out << json{{"combinatorial", comb}, {"geometric", geom}, {"agree", fc.agree}}.dump(2)
            << "\n";
  }
  return fc.agree ? 0 : 1;
}

inline int cmd_polytope(const Ctx& ctx, const std::string& src) {
  Matroid m = resolve_one(src);
  int dim = polytope_dim(m);
  bool connected = is_connected(m);
  std::vector<ElementSet> facets;
  if (connected) facets = crosscheck_flacets(m).geometric;
  if (ctx.text()) {
    ctx.out << "DIM " << dim << "\n";
    for (const ElementSet& f : facets) ctx.out << "FACET " << f.csv() << "\n";
    return 0;
  }
  json j{{"dim", dim}, {"connected", connected}};
  if (connected) {
    json arr = json::array();
    for (const ElementSet& f : facets) arr.push_back(set_json(f));
    j["facet_flats"] = arr;
  }
  ctx.out << j.dump(2) << "\n";
  return 0;
}

inline int cmd_catalog(const Ctx& ctx, const std::string& name, bool list, bool compact) {
  static const char* kNames[] = {"MW2", "S0", "S1", "S2", "S3", "S4"};
  if (list) {
    if (ctx.text()) {
      for (const char* s : kNames) ctx.out << s << "\n";
      ctx.out << "U_<r>_<n>\n";
    } else {
      json names = json::array();
      for (const char* s : kNames) names.push_back(s);
      ctx.out << json{{"names", names}, {"uniform_pattern", "U_<r>_<n>"}}.dump(2) << "\n";
    }
    return 0;
  }
  if (name.empty()) fail(errc::unknown_name, "give a matroid name or --list");
  Matroid m = catalog_by_name(name);
  if (ctx.text()) {
    write_matroid(ctx.out, m, compact);
  } else {
    json j = matroid_json(m);
    j["name"] = name;
    ctx.out << j.dump(2) << "\n";
  }
  return 0;
}

inline int cmd_enumerate(const Ctx& ctx, int n, int rank, const EnumOptions& opt,
                         const std::string& out_path, const std::string& encoding) {
  Catalog cat = build_catalog(n, opt);
  std::vector<const CatalogShard*> shards;
  for (const CatalogShard& s : cat.by_n[n])
    if (rank < 0 || s.r == rank) shards.push_back(&s);
  if (shards.empty())
    fail(errc::element_out_of_range, "no matroids of rank " + std::to_string(rank) + " on " +
                                         std::to_string(n) + " elements");

  auto write_data = [&](std::ostream& data) {
    if (encoding == "blocks") {
      bool first = true;
      for (const CatalogShard* s : shards)
        for (const Matroid& m : s->members) {
          if (!first) data << "\n";
          write_matroid(data, m);
          first = false;
        }
    } else {
      for (const CatalogShard* s : shards) {
        data << s->n << " " << s->r << "\n";
        for (const Matroid& m : s->members) data << revlex_string(m) << "\n";
      }
    }
  };

  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) fail(errc::parse_error, "cannot open '" + out_path + "' for writing");
    write_data(f);
  }
  if (ctx.text()) {
    if (out_path.empty()) write_data(ctx.out);
    if (!ctx.quiet)
      for (const CatalogShard* s : shards)
        ctx.err << "# n=" << s->n << " r=" << s->r << " count=" << s->members.size() << "\n";
    return 0;
  }
  json arr = json::array();
  for (const CatalogShard* s : shards) {
    json members = json::array();
    for (const Matroid& m : s->members) members.push_back(revlex_string(m));
    arr.push_back({{"n", s->n}, {"r", s->r}, {"count", s->members.size()}, {"members", members}});
  }
  ctx.out << json{{"shards", arr}}.dump(2) << "\n";
  return 0;
}

inline int cmd_verify(const Ctx& ctx, int max_n, const EnumOptions& opt, bool show_sparse) {
  TheoremReport rep = verify_theorem(max_n, opt);
  long long total = 0;
  for (const TheoremRow& row : rep.rows) total += row.count;
  if (ctx.text()) {
    for (const TheoremRow& row : rep.rows) {
      ctx.out << "N=" << row.n << " R=" << row.r << " COUNT=" << row.count
              << " SPLIT=" << row.split << " NONSPLIT=" << row.nonsplit;
      if (show_sparse) ctx.out << " SPARSE_PAVING=" << row.sparse_paving;
      ctx.out << "\n";
    }
    for (const TheoremMismatch& mm : rep.mismatches)
      ctx.out << "MISMATCH n=" << mm.n << " r=" << mm.r << " index=" << mm.index
              << " split=" << yn(mm.split_verdict) << " minor_free=" << yn(mm.minor_free)
              << " bases=" << revlex_string(mm.matroid) << "\n";
    ctx.out << "TOTAL " << total << " MISMATCHES " << rep.mismatches.size() << "\n";
    for (const auto& ref : rep.literature)
      ctx.out << "LITERATURE n=" << ref.n << " published=" << ref.published
              << " actual=" << ref.actual << "\n";
    ctx.out << "THEOREM " << (rep.ok() ? "ok" : "failed") << "\n";
    return rep.ok() ? 0 : 1;
  }
  json rows = json::array();
  for (const TheoremRow& row : rep.rows) {
    json jr{{"n", row.n}, {"r", row.r},         {"count", row.count},
            {"split", row.split}, {"nonsplit", row.nonsplit}};
    if (show_sparse) jr["sparse_paving"] = row.sparse_paving;
    rows.push_back(jr);
  }
  json mms = json::array();
  for (const TheoremMismatch& mm : rep.mismatches)
    mms.push_back({{"n", mm.n},
                   {"r", mm.r},
                   {"index", mm.index},
                   {"split", mm.split_verdict},
                   {"minor_free", mm.minor_free},
                   {"matroid", matroid_json(mm.matroid)}});
  json lit = json::array();
  for (const auto& ref : rep.literature)
    lit.push_back({{"n", ref.n}, {"published", ref.published}, {"actual", ref.actual}});
  ctx.out << json{{"max_n", max_n},   {"rows", rows},       {"mismatches", mms},
                  {"total", total},   {"literature", lit},  {"ok", rep.ok()}}
                 .dump(2)
          << "\n";
  return rep.ok() ? 0 : 1;
}

}  // namespace detail

// Full command-line front end, callable in-process. Returns the process exit
// code: 0 on success, 1 when a mathematical check finds a discrepancy, 2 for
// usage and input errors.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  detail::Ctx ctx{out, err};

  CLI::App app{"split matroid toolkit"};
  app.name("splitmat");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", ctx.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--quiet", ctx.quiet, "suppress informational '#' lines");

  std::function<int()> action;

  std::string check_src;
  CLI::App* check = app.add_subcommand("check", "decide whether a matroid is split");
  check->add_option("matroid", check_src, "catalog name or matroid file")->required();
  check->callback([&] { action = [&] { return detail::cmd_check(ctx, check_src); }; });

  std::string minor_host, minor_target;
  CLI::App* minor = app.add_subcommand("minor", "search for a minor and print a witness");
  minor->add_option("host", minor_host, "catalog name or matroid file")->required();
  minor->add_option("target", minor_target, "catalog name or matroid file")->required();
  minor->callback(
      [&] { action = [&] { return detail::cmd_minor(ctx, minor_host, minor_target); }; });

  std::string flacet_src;
  CLI::App* flac = app.add_subcommand(
      "flacets", "cross-check combinatorial flacets against polytope facets");
  flac->add_option("matroid", flacet_src, "catalog name or matroid file")->required();
  flac->callback([&] { action = [&] { return detail::cmd_flacets(ctx, flacet_src); }; });

  std::string poly_src;
  CLI::App* poly = app.add_subcommand("polytope", "base polytope dimension and facet flats");
  poly->add_option("matroid", poly_src, "catalog name or matroid file")->required();
  poly->callback([&] { action = [&] { return detail::cmd_polytope(ctx, poly_src); }; });

  std::string cat_name;
  bool cat_list = false, cat_compact = false;
  CLI::App* cat = app.add_subcommand("catalog", "print a named matroid");
  cat->add_option("name", cat_name, "MW2, S0..S4, or U_<r>_<n>");
  cat->add_flag("--list", cat_list, "list known names");
  cat->add_flag("--compact", cat_compact, "one-line basis encoding");
  cat->callback(
      [&] { action = [&] { return detail::cmd_catalog(ctx, cat_name, cat_list, cat_compact); }; });

  int enum_n = 0, enum_rank = -1;
  EnumOptions enum_opt;
  std::string enum_out, enum_encoding = "blocks";
  CLI::App* enm = app.add_subcommand("enumerate", "all matroids on n elements, up to isomorphism");
  enm->add_option("--n", enum_n, "ground set size")->required()->check(CLI::Range(1, 12));
  enm->add_option("--rank", enum_rank, "restrict to one rank");
  enm->add_option("--jobs", enum_opt.jobs, "worker threads (0: all cores)");
  enm->add_option("--cap", enum_opt.hard_cap, "largest ground set the generator may touch")
      ->capture_default_str();
  enm->add_option("--cache", enum_opt.cache_dir, "directory for per-level result caching");
  enm->add_option("--out", enum_out, "write matroids to this file instead of stdout");
  enm->add_option("--encoding", enum_encoding, "matroid encoding")
      ->check(CLI::IsMember({"blocks", "revlex"}))
      ->capture_default_str();
  enm->callback([&] {
    action = [&] { return detail::cmd_enumerate(ctx, enum_n, enum_rank, enum_opt, enum_out,
                                                enum_encoding); };
  });

  int verify_max_n = 7;
  EnumOptions verify_opt;
  bool verify_sparse = false;
  CLI::App* ver = app.add_subcommand(
      "verify-theorem", "check split == excluded-minor-free over the whole catalog");
  ver->add_option("--max-n", verify_max_n, "verify all matroids up to this size")
      ->capture_default_str()
      ->check(CLI::Range(1, 12));
  ver->add_option("--jobs", verify_opt.jobs, "worker threads (0: all cores)");
  ver->add_option("--cap", verify_opt.hard_cap, "largest ground set the generator may touch")
      ->capture_default_str();
  ver->add_option("--cache", verify_opt.cache_dir, "directory for per-level result caching");
  ver->add_flag("--sparse-paving", verify_sparse, "add a sparse-paving column");
  ver->callback([&] {
    action = [&] { return detail::cmd_verify(ctx, verify_max_n, verify_opt, verify_sparse); };
  });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace splitmat::cli
