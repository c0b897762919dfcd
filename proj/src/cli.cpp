#include "coquasi/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "coquasi/json_io.hpp"
#include "coquasi/zoo.hpp"

namespace coquasi::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

/// Raised to leave a command with exit code 1 after a report was emitted.
struct AxiomFailure {
  Report report;
};

struct Options {
  std::string field;
  std::string output;
  std::string report = "json";
};

class Context {
 public:
  Context(const Options& o, std::ostream& out) : opt_(o), out_(out) {
    if (!o.field.empty()) forced_ = io::parse_field(o.field);
  }

  Field field_of(const json& doc) const { return io::resolve_field(doc, forced_); }

  void emit(const std::string& text) const {
    if (opt_.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(opt_.output, std::ios::binary);
    if (!f) throw io::SchemaError("cannot write " + opt_.output);
    f << text;
  }
  void emit_json(const json& j) const { emit(io::dump(j)); }
  void emit_report(const Report& r) const { emit(opt_.report == "text" ? io::report_text(r) : io::dump(io::to_json(r))); }

  /// Emits the report and maps it to an exit code.
  int finish(const Report& r) const {
    emit_report(r);
    return r.pass() ? 0 : 1;
  }

 private:
  const Options& opt_;
  std::ostream& out_;
  std::optional<Field> forced_;
};

Report single_failure(const std::string& axiom, std::vector<std::size_t> index = {}) {
  Report r;
  r.fail(axiom, std::move(index));
  return r;
}

std::string detect_kind(const json& doc) {
  if (!doc.is_object()) throw io::SchemaError("top-level JSON must be an object");
  if (doc.contains("objects")) return "diagram";
  if (doc.contains("omega")) return "coquasi";
  if (doc.contains("phi")) return "quasi";
  if (doc.contains("rho")) return "comodule";
  if (doc.contains("delta")) return "coalgebra";
  if (doc.contains("mult")) return "algebra";
  throw io::SchemaError("cannot tell what kind of structure this is; pass --kind");
}

std::optional<ZooEntry> find_zoo(const std::string& name) {
  for (auto& z : coquasi_zoo())
    if (z.name == name) return z;
  return std::nullopt;
}

std::optional<QuasiZooEntry> find_quasi_zoo(const std::string& name) {
  for (auto& z : quasi_zoo())
    if (z.name == name) return z;
  return std::nullopt;
}

Matrix solved_or_fail(const cqb::PreantipodeSolution& sol) {
  using St = cqb::PreantipodeSolution::Status;
  if (sol.status == St::none) throw AxiomFailure{single_failure("preantipode_exists")};
  if (sol.status == St::nonunique) throw AxiomFailure{single_failure("preantipode_unique", {sol.nullity})};
  return *sol.s;
}

Matrix quasi_preantipode(const qb::QuasiBialgebra& a, const std::string& path, const Context& ctx) {
  if (path.empty()) return solved_or_fail(qb::solve_quasi_preantipode(a));
  json doc = io::read_file(path);
  (void)ctx;
  return io::preantipode_from_json(doc, a.field(), a.dim());
}

Matrix coquasi_preantipode(const cqb::CoquasiBialgebra& h, const std::string& path) {
  if (path.empty()) return solved_or_fail(cqb::solve_preantipode(h));
  return io::preantipode_from_json(io::read_file(path), h.field(), h.dim());
}

comodcat::Comodule read_comodule(const std::string& path, Field f) {
  json doc = io::read_file(path);
  fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& ref) {
    if (auto z = find_zoo(ref)) {
      if (z->data.h->field() != f) throw io::SchemaError("zoo entry " + ref + " is over " + z->data.h->field().name());
      return *z->data.h;
    }
    fs::path p = base / ref;
    if (!fs::exists(p)) throw io::SchemaError("'over' names neither a zoo entry nor a file: " + ref);
    return io::coquasi_from_json(io::read_file(p), f);
  };
  return io::comodule_from_json(doc, f, resolve);
}

int cmd_validate(const Context& ctx, const std::string& path, std::string kind) {
  json doc = io::read_file(path);
  if (kind.empty()) kind = detect_kind(doc);
  Field f = ctx.field_of(doc);
  if (kind == "coquasi") return ctx.finish(cqb::validate_coquasi(io::coquasi_from_json(doc, f)));
  if (kind == "quasi") return ctx.finish(qb::validate_quasi(io::quasi_from_json(doc, f)));
  if (kind == "coalgebra") return ctx.finish(coalg::check_coalgebra(io::coalgebra_from_json(doc, f)));
  if (kind == "algebra") return ctx.finish(coalg::check_algebra(io::algebra_from_json(doc, f)));
  if (kind == "comodule") return ctx.finish(comodcat::check_comodule(read_comodule(path, f)));
  if (kind == "diagram") return ctx.finish(recon::validate_diagram(io::diagram_from_json(doc, f)));
  throw io::SchemaError("unknown kind '" + kind + "'");
}

int cmd_solve(const Context& ctx, const std::string& path, std::string kind) {
  json doc = io::read_file(path);
  if (kind.empty()) kind = detect_kind(doc);
  Field f = ctx.field_of(doc);
  Matrix s;
  if (kind == "coquasi")
    s = solved_or_fail(cqb::solve_preantipode(io::coquasi_from_json(doc, f)));
  else if (kind == "quasi")
    s = solved_or_fail(qb::solve_quasi_preantipode(io::quasi_from_json(doc, f)));
  else
    throw io::SchemaError("preantipodes are defined for coquasi or quasi structures, not " + kind);
  ctx.emit_json(io::preantipode_to_json(s));
  return 0;
}

int cmd_check(const Context& ctx, const std::string& path, const std::string& spath, std::string kind) {
  json doc = io::read_file(path);
  if (kind.empty()) kind = detect_kind(doc);
  Field f = ctx.field_of(doc);
  if (kind == "coquasi") {
    auto h = io::coquasi_from_json(doc, f);
    return ctx.finish(cqb::check_preantipode(h, coquasi_preantipode(h, spath)));
  }
  if (kind == "quasi") {
    auto a = io::quasi_from_json(doc, f);
    return ctx.finish(qb::check_quasi_preantipode(a, quasi_preantipode(a, spath, ctx)));
  }
  throw io::SchemaError("preantipodes are defined for coquasi or quasi structures, not " + kind);
}

struct ReconstructArgs {
  std::string diagram, over, nu;
  bool close = false;
  std::size_t cap = 256;
};

int cmd_reconstruct(const Context& ctx, const ReconstructArgs& a) {
  json doc = io::read_file(a.diagram);
  Field f = ctx.field_of(doc);
  auto d = io::diagram_from_json(doc, f);
  if (a.close) d = recon::close_under_composition(d, a.cap);
  Report vr = recon::validate_diagram(d);
  if (!vr.pass()) throw AxiomFailure{vr};
  auto rc = recon::reconstruct(d);
  json out = io::coend_to_json(d, rc.coend, rc.h);
  out["preantipode"] = io::preantipode_to_json(rc.s);
  if (!a.nu.empty()) {
    json nd = io::read_file(a.nu);
    const auto& table = nd.contains("nu") ? nd["nu"] : nd;
    std::vector<Matrix> nu;
    for (std::size_t x = 0; x < d.objects.size(); ++x) {
      const auto* du = d.dual_of(x);
      if (!du) throw io::SchemaError("no dual listed for " + d.objects[x].name);
      if (!table.contains(d.objects[x].name)) throw io::SchemaError("nu missing for " + d.objects[x].name);
      nu.push_back(io::matrix_from_json(table[d.objects[x].name], f, d.objects[x].dim, d.objects[du->dual].dim));
    }
    out["coquasi_hopf"] = io::to_json(recon::coend_coquasi_antipode(d, rc.coend, rc.h, nu));
  }
  int code = 0;
  if (!a.over.empty()) {
    json bd = io::read_file(a.over);
    auto b = io::coquasi_from_json(bd, io::resolve_field(bd, f));
    auto can = recon::can_map(d, rc.coend, rc.h, b);
    out["can"] = io::to_json(can.can);
    out["can_report"] = io::to_json(can.report);
    if (!can.report.pass()) code = 1;
  }
  ctx.emit_json(out);
  return code;
}

int cmd_finite_dual(const Context& ctx, const std::string& path, const std::string& spath, const std::string& sout) {
  json doc = io::read_file(path);
  auto a = io::quasi_from_json(doc, ctx.field_of(doc));
  Report vr = qb::validate_quasi(a);
  if (!vr.pass()) throw AxiomFailure{vr};
  auto fd = qb::finite_dual(a, quasi_preantipode(a, spath, ctx));
  if (!sout.empty()) {
    std::ofstream f(sout, std::ios::binary);
    if (!f) throw io::SchemaError("cannot write " + sout);
    f << io::dump(io::preantipode_to_json(fd.s));
  }
  ctx.emit_json(io::to_json(fd.h));
  return 0;
}

int cmd_dualize(const Context& ctx, const std::string& path, const std::string& spath) {
  json doc = io::read_file(path);
  Field f = ctx.field_of(doc);
  auto c = read_comodule(path, f);
  Report cr = comodcat::check_comodule(c);
  if (!cr.pass()) throw AxiomFailure{cr};
  Matrix s = coquasi_preantipode(*c.h, spath);
  auto dd = comodcat::dual_comodule(c, s);
  ctx.emit_json(json{{"dual", io::comodule_to_json(dd.dual, doc.at("over"))},
                     {"ev", io::flat_json(dd.ev)},
                     {"db", io::flat_json(dd.db)}});
  return 0;
}

int cmd_appendix(const Context& ctx, const std::string& path, const std::string& spath) {
  json doc = io::read_file(path);
  auto a = io::quasi_from_json(doc, ctx.field_of(doc));
  Report r = qb::validate_quasi(a);
  if (!r.pass()) return ctx.finish(r);
  Matrix s = quasi_preantipode(a, spath, ctx);
  r.merge(qb::check_quasi_preantipode(a, s));
  if (!r.pass()) return ctx.finish(r);
  auto pq = qb::compute_pq(a, s);
  r.merge(qb::check_pq_identities(a, s, pq));
  r.merge(qb::check_s_recovery(a, s, pq));
  r.merge(qb::check_antimultiplicativity(a, s));
  return ctx.finish(r);
}

ZooSpec spec_from_json(const json& doc, Field f) {
  const auto& table = doc.at("group");
  if (!table.is_array() || table.empty()) throw io::SchemaError("group must be a square multiplication table");
  FiniteGroup g;
  g.order = table.size();
  for (const auto& row : table) {
    if (!row.is_array() || row.size() != g.order) throw io::SchemaError("group must be a square multiplication table");
    for (const auto& e : row) {
      if (!e.is_number_unsigned() || e.get<std::size_t>() >= g.order)
        throw io::SchemaError("group table entries must be element indices");
      g.table.push_back(e.get<std::size_t>());
    }
  }
  g.validate();
  std::size_t n = g.order;
  std::vector<Scalar> w = doc.contains("cocycle") ? io::vector_from_json(doc["cocycle"], f, n * n * n)
                                                  : trivial_cocycle(g, f);
  return ZooSpec{g, std::move(w), f};
}

struct ExampleArgs {
  std::string spec, zoo, s_out;
  bool list = false, diagram = false;
};

void write_aux(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io::SchemaError("cannot write " + path);
  f << io::dump(j);
}

int cmd_example_coquasi(const Context& ctx, const ExampleArgs& a) {
  if (a.list) {
    json names = json::array();
    for (const auto& z : coquasi_zoo()) names.push_back(z.name);
    ctx.emit_json(names);
    return 0;
  }
  std::optional<ZooSpec> spec;
  std::optional<Matrix> rebase;
  std::shared_ptr<const cqb::CoquasiBialgebra> h;
  Matrix s;
  if (!a.zoo.empty()) {
    auto z = find_zoo(a.zoo);
    if (!z) throw io::SchemaError("no zoo entry named " + a.zoo);
    h = z->data.h;
    s = z->data.s;
    spec = z->spec;
    rebase = z->rebase;
  } else {
    if (a.spec.empty()) throw io::SchemaError("give a group spec file or --zoo");
    json doc = io::read_file(a.spec);
    spec = spec_from_json(doc, ctx.field_of(doc));
    if (auto v = cocycle_violation(*spec)) throw AxiomFailure{single_failure("3-cocycle", {v->begin(), v->end()})};
    auto g = gen_group_coquasi(*spec);
    h = g.h;
    s = g.s;
  }
  write_aux(a.s_out, io::preantipode_to_json(s));
  if (a.diagram) {
    if (!spec) throw io::SchemaError("entry " + a.zoo + " has no grading diagram");
    ctx.emit_json(io::to_json(grading_diagram(*spec, true, rebase)));
  } else {
    ctx.emit_json(io::to_json(*h));
  }
  return 0;
}

int cmd_example_quasi(const Context& ctx, const ExampleArgs& a) {
  if (a.list) {
    json names = json::array();
    for (const auto& z : quasi_zoo()) names.push_back(z.name);
    ctx.emit_json(names);
    return 0;
  }
  GroupQuasi g;
  if (!a.zoo.empty()) {
    auto z = find_quasi_zoo(a.zoo);
    if (!z) throw io::SchemaError("no quasi zoo entry named " + a.zoo);
    g = z->data;
  } else {
    if (a.spec.empty()) throw io::SchemaError("give a group spec file or --zoo");
    json doc = io::read_file(a.spec);
    auto spec = spec_from_json(doc, ctx.field_of(doc));
    if (auto v = cocycle_violation(spec)) throw AxiomFailure{single_failure("3-cocycle", {v->begin(), v->end()})};
    g = gen_group_quasi(spec);
  }
  write_aux(a.s_out, io::preantipode_to_json(g.s));
  ctx.emit_json(io::to_json(g.a));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact coquasi-bialgebra toolkit: axiom checks, preantipodes, reconstruction"};
  app.fallthrough();
  app.require_subcommand(1);
  Options opt;
  app.add_option("--field", opt.field, "rational or fp:<p>");
  app.add_option("-o,--output", opt.output, "write the result here instead of stdout");
  app.add_option("--report", opt.report, "report format")->check(CLI::IsMember({"json", "text"}));

  std::string path, spath, kind, sout;
  auto* validate = app.add_subcommand("validate", "check the axioms of a structure");
  validate->add_option("file", path)->required();
  validate->add_option("--kind", kind)->check(
      CLI::IsMember({"coquasi", "quasi", "coalgebra", "algebra", "comodule", "diagram"}));

  auto* pre = app.add_subcommand("preantipode", "solve for or check a preantipode");
  pre->require_subcommand(1);
  auto* solve = pre->add_subcommand("solve", "solve the linear system for S");
  solve->add_option("file", path)->required();
  solve->add_option("--kind", kind)->check(CLI::IsMember({"coquasi", "quasi"}));
  auto* check = pre->add_subcommand("check", "check the preantipode axioms for a given S");
  check->add_option("file", path)->required();
  check->add_option("preantipode", spath)->required();
  check->add_option("--kind", kind)->check(CLI::IsMember({"coquasi", "quasi"}));

  ReconstructArgs ra;
  auto* rec = app.add_subcommand("reconstruct", "coend coquasi-bialgebra and preantipode of a diagram");
  rec->add_option("diagram", ra.diagram)->required();
  rec->add_option("--over", ra.over, "coquasi-bialgebra B for the comparison map can");
  rec->add_option("--nu", ra.nu, "per-object isomorphisms U(X*) -> U(X)^* for (s, alpha, beta)");
  rec->add_flag("--close", ra.close, "append composites of listed morphisms first");
  rec->add_option("--close-cap", ra.cap, "morphism cap for --close");

  auto* fdual = app.add_subcommand("finite-dual", "coquasi-bialgebra dual to a quasi-bialgebra");
  fdual->add_option("file", path)->required();
  fdual->add_option("--preantipode", spath, "use this S instead of solving");
  fdual->add_option("--preantipode-out", sout, "also write the dual preantipode here");

  auto* dualize = app.add_subcommand("dualize-comodule", "right dual of a comodule with ev and db");
  dualize->add_option("file", path)->required();
  dualize->add_option("--preantipode", spath, "use this S instead of solving");

  auto* appendix = app.add_subcommand("appendix-check", "p/q elements, recovery of S and anti-multiplicativity");
  appendix->add_option("file", path)->required();
  appendix->add_option("--preantipode", spath, "use this S instead of solving");

  ExampleArgs ea;
  auto* example = app.add_subcommand("example", "twisted group examples");
  example->require_subcommand(1);
  auto* exc = example->add_subcommand("group-coquasi", "kG with a 3-cocycle as reassociator");
  auto* exq = example->add_subcommand("group-quasi", "functions on G with a 3-cocycle as Phi");
  for (auto* sub : {exc, exq}) {
    sub->add_option("spec", ea.spec, "JSON with \"group\" (multiplication table) and optional \"cocycle\"");
    sub->add_option("--zoo", ea.zoo, "built-in example by name");
    sub->add_flag("--list", ea.list, "list built-in examples");
    sub->add_option("--preantipode-out", ea.s_out, "also write the closed-form preantipode here");
  }
  exc->add_flag("--diagram", ea.diagram, "emit the grading diagram instead");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Context ctx(opt, out);
    if (*validate) return cmd_validate(ctx, path, kind);
    if (*solve) return cmd_solve(ctx, path, kind);
    if (*check) return cmd_check(ctx, path, spath, kind);
    if (*rec) return cmd_reconstruct(ctx, ra);
    if (*fdual) return cmd_finite_dual(ctx, path, spath, sout);
    if (*dualize) return cmd_dualize(ctx, path, spath);
    if (*appendix) return cmd_appendix(ctx, path, spath);
    if (*exc) return cmd_example_coquasi(ctx, ea);
    if (*exq) return cmd_example_quasi(ctx, ea);
  } catch (const AxiomFailure& f) {
    try {
      Context(opt, out).emit_report(f.report);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    return 1;
  } catch (const recon::WellDefinednessError& e) {
    err << "error: " << e.what() << "\n";
    Context(opt, out).emit_report(single_failure("well_defined"));
    return 1;
  } catch (const std::runtime_error& e) {
    // verification failures raised inside the library (dual zigzags, reconstructed axioms)
    if (dynamic_cast<const io::SchemaError*>(&e) == nullptr && dynamic_cast<const std::range_error*>(&e) == nullptr) {
      err << "error: " << e.what() << "\n";
      Context(opt, out).emit_report(single_failure("verification"));
      return 1;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace coquasi::cli
