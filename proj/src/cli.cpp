#include "jetreduce/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "jetreduce/obstruction.hpp"

namespace jetreduce::cli {

namespace {

using dsl::FieldDecl;

FormEntry entry(const std::string& name, const BigradedForm& f, const JetSpace& s) {
  return {name, to_text(f, s), to_latex(f, s)};
}

FormEntry entry(const std::string& name, const ScalarExpr& e, const JetSpace& s) {
  return {name, to_text(e, s), to_latex(e, s)};
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Row make(std::string kind, std::string subject, bool pass) {
  Row r;
  r.kind = std::move(kind);
  r.subject = std::move(subject);
  r.status = pass ? "pass" : "fail";
  return r;
}

Row error_row(std::string kind, std::string subject, const std::exception& e) {
  Row r;
  r.kind = std::move(kind);
  r.subject = std::move(subject);
  r.status = "error";
  r.note = e.what();
  return r;
}

// Runs `fn`, turning domain and precondition errors into an error row.
std::vector<Row> guarded(const std::string& kind, const std::string& subject,
                         const std::function<std::vector<Row>()>& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    return {error_row(kind, subject, e)};
  } catch (const PreconditionError& e) {
    return {error_row(kind, subject, e)};
  } catch (const JetOrderOverflow& e) {
    return {error_row(kind, subject, e)};
  }
}

void set_residual(Row& r, const BigradedForm& res, const JetSpace& s) {
  if (!res.is_zero()) r.residual_form = to_text(res, s);
}

std::string element_label(const Action& act, int k) {
  return act.local() ? JetSpace::slot_name(0) : act.algebra->labels()[k];
}

int element_count(const Action& act) { return act.local() ? 1 : act.algebra->dim(); }

int basis_index(const Action& act, const std::string& label) {
  if (act.local()) throw DomainError("local algebras have no basis labels");
  auto k = act.algebra->index_of(label);
  if (!k) throw DomainError("unknown basis label '" + label + "' in algebra " + act.algebra->name());
  return *k;
}

// Closed-form pullbacks with transcendental coefficients fall back to the
// numeric zero test.
bool pulled_back_closed(const BigradedForm& pb, const JetSpace& s, BigradedForm* res) {
  *res = d_h(pb, s);
  return form_vanishes(*res);
}

}  // namespace

std::string Report::verdict() const {
  if (parse_failed) return "error";
  for (const auto& r : results)
    if (r.failed()) return "fail";
  return "pass";
}

int Report::exit_code() const {
  std::string v = verdict();
  return v == "pass" ? 0 : v == "fail" ? 1 : 2;
}

std::vector<Row> cmd_el(const Theory& T) {
  const JetSpace& s = *T.space;
  auto d = premultisymplectic(T);
  std::vector<Row> out;
  if (T.density) {
    BigradedForm res = d_v(d.lagrangian, s) - d.el + d_h(d.gamma, s);
    Row r = make("el", T.name, res.is_zero());
    set_residual(r, res, s);
    r.forms = {entry("L", d.lagrangian, s), entry("EL", d.el, s), entry("gamma", d.gamma, s),
               entry("omega", d.omega, s)};
    r.note = "delta L = EL - d gamma";
    out.push_back(std::move(r));
  }
  BigradedForm dw = d_total(d.omega, s);
  Row c = make("omega_closed", T.name, dw.is_zero());
  set_residual(c, dw, s);
  if (!T.density) c.forms = {entry("omega", d.omega, s)};
  out.push_back(std::move(c));
  return out;
}

std::vector<Row> cmd_symmetry(const Action& act) {
  const Theory& T = *act.theory;
  const JetSpace& s = *act.space;
  auto data = premultisymplectic(T);
  std::vector<Row> out;
  for (const auto& h : action_homomorphism_check(act)) {
    Row r = make("homomorphism", act.name + " " + h.label, h.pass);
    if (!h.pass) r.residual_form = to_text(h.residual, s);
    out.push_back(std::move(r));
  }
  for (int k = 0; k < element_count(act); ++k) {
    std::string subject = act.name + " " + element_label(act, k);
    JetVectorField chi = act.generic(k);
    JetVectorField V = chi.vertical_part();
    auto rows = guarded("noether", subject, [&] {
      std::vector<Row> rs;
      NoetherResult nr = is_noether_symmetry(V, T, &s);
      Row r = make("noether", subject, nr.symmetry);
      if (!nr.symmetry) set_residual(r, nr.euler_image, s);
      r.forms.push_back({"chi", to_text(chi, s), to_text(chi, s)});
      r.forms.push_back(entry("L_chi L", nr.lie_l, s));
      if (nr.alpha) r.forms.push_back(entry("alpha", *nr.alpha, s));
      if (chi.has_horizontal()) r.note = "evolutionary representative of a field with horizontal part";
      if (!nr.note.empty()) r.note += (r.note.empty() ? "" : "; ") + nr.note;
      rs.push_back(std::move(r));
      if (nr.symmetry && nr.alpha) {
        NoetherCurrent j = noether_current(V, *nr.alpha, data, s);
        Row c = make("current", subject, j.conserved);
        c.forms = {entry("j", j.j, s)};
        if (!j.conserved) set_residual(c, j.conservation_residual, s);
        rs.push_back(std::move(c));
      }
      return rs;
    });
    out.insert(out.end(), rows.begin(), rows.end());
    auto man = guarded("manifest", subject, [&] {
      ManifestReport m = is_manifest(chi, data, s);
      Row r;
      r.kind = "manifest";
      r.subject = subject;
      r.status = m.manifest() ? "manifest" : "not_manifest";
      set_residual(r, m.lepage_residual, s);
      if (!m.decomposes) r.note = "no strictly vertical plus strictly horizontal split";
      return std::vector<Row>{r};
    });
    out.insert(out.end(), man.begin(), man.end());
  }
  return out;
}

std::vector<Row> cmd_verify_momap(const MomentumMap& mu) {
  const Action& act = *mu.action;
  const JetSpace& s = *act.space;
  auto data = premultisymplectic(*act.theory);
  std::vector<Row> out;
  Row comps;
  comps.kind = "components";
  comps.subject = mu.name;
  comps.status = "info";
  for (int i = 1; i <= mu.max_arity(); ++i) {
    GCochain c = mu.mu(i);
    std::string name = "mu_" + std::to_string(i);
    if (c.is_template()) {
      std::vector<std::string> slots;
      for (int k = 0; k < i; ++k) slots.push_back(JetSpace::slot_name(k));
      std::string label;
      for (const auto& x : slots) label += (label.empty() ? "" : "^") + x;
      comps.forms.push_back(entry(name + "(" + label + ")", c.body(), s));
    } else {
      for (const auto& [t, v] : c.entries())
        if (!v.is_zero()) comps.forms.push_back(entry(name + "(" + wedge_label(t, act) + ")", v, s));
    }
  }
  out.push_back(std::move(comps));

  MomapReport rep = verify_momap(mu, data.omega);
  for (const auto& rel : rep.relations) {
    Row r = make("momap_relation", mu.name + " i=" + std::to_string(rel.i) + " " + rel.label, rel.pass);
    set_residual(r, rel.residual, s);
    out.push_back(std::move(r));
  }
  if (act.local()) {
    Row r;
    r.kind = "double_complex";
    r.subject = mu.name;
    r.status = "skipped";
    r.note = "double complex cross-check runs on finite-dimensional algebras only";
    out.push_back(std::move(r));
  } else {
    auto rows = guarded("double_complex", mu.name, [&] {
      DoubleComplexReport t = check_double_complex(act, data.omega, &mu);
      Row r = make("double_complex", mu.name, t.agrees() && (!t.invariant || t.closed));
      r.value_text = std::string("invariant=") + (t.invariant ? "yes" : "no") + " closed=" + (t.closed ? "yes" : "no") +
                     " primitive=" + (t.primitive ? "yes" : "no");
      r.note = "d_bar mu_bar = omega_bar agrees with the relation check";
      return std::vector<Row>{r};
    });
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

std::vector<Row> cmd_zero_locus(const MomentumMap& mu, const std::vector<const FieldDecl*>& fields,
                                const Tolerances& tol) {
  const Action& act = *mu.action;
  const JetSpace& s = *act.space;
  std::vector<Row> out;
  for (const FieldDecl* f : fields) {
    std::string subject = mu.name + " @ " + f->sample.label;
    auto rows = guarded("zero_locus", subject, [&] {
      if (f->theory.get() != act.theory.get())
        throw DomainError("field " + f->sample.label + " lives on " + f->theory->name + ", not on " +
                          act.theory->name);
      auto data = premultisymplectic(*act.theory);
      ZeroLocusReport z = zero_locus_check(f->sample, mu, data.gamma, tol.numeric);
      std::vector<Row> rs;
      Row sum;
      sum.kind = "zero_locus";
      sum.subject = subject;
      sum.status = z.pass() ? "member" : "non_member";
      sum.value_text = std::string("(i) ") + (z.pass_i() ? "holds" : "violated") + ", (ii) " +
                       (z.pass_ii() ? "holds" : "violated");
      double worst = 0;
      auto cond = [&](const char* kind, const std::vector<ConditionResult>& cs) {
        for (const auto& c : cs) {
          Row r;
          r.kind = kind;
          r.subject = subject + " [" + c.label + "]";
          r.status = c.pass ? "holds" : "violated";
          if (z.numeric || !c.pass) r.residual = c.residual;
          if (!c.pass) worst = std::max(worst, c.residual);
          if (c.symbolic) {
            if (!c.symbolic->is_zero()) r.residual_form = to_text(*c.symbolic, s);
          }
          rs.push_back(std::move(r));
        }
      };
      cond("condition_i", z.cond_i);
      cond("condition_ii", z.cond_ii);
      sum.residual = worst;
      if (z.numeric) sum.note = "sampled field, relative tolerance " + num(tol.numeric);
      rs.insert(rs.begin(), std::move(sum));
      if (dsl::plectic_n(*act.theory) == 1 && !act.local() && !f->sample.is_grid()) {
        bool oracle = exactness_oracle_n1(mu, f->sample);
        Row o = make("exactness_oracle", subject, oracle == z.pass());
        o.value_text = oracle ? "member" : "non_member";
        rs.push_back(std::move(o));
      }
      return rs;
    });
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

std::vector<Row> cmd_invariance(const MomentumMap& mu, const FieldDecl& field, const std::string& label,
                                const Tolerances& tol) {
  std::string subject = mu.name + " @ " + field.sample.label + " [" + label + "]";
  return guarded("invariance", subject, [&] {
    const Action& act = *mu.action;
    int k = basis_index(act, label);
    auto data = premultisymplectic(*act.theory);
    InvarianceOptions opt;
    opt.tol = tol.numeric;
    InvarianceReport rep = invariance_check(field.sample, act.algebra->basis(k), mu, data.gamma, opt);
    bool ratio_ok = !rep.ratio || (*rep.ratio >= tol.ratio_lo && *rep.ratio <= tol.ratio_hi);
    Row r = make("invariance", subject, rep.pass() && ratio_ok);
    r.residual = rep.residual_h;
    if (rep.ratio) r.value = *rep.ratio;
    r.value_text = std::string("symbolic ") + (rep.symbolic_pass ? "exact" : "nonzero") +
                   (rep.ratio ? ", Richardson ratio " + num(*rep.ratio) : ", no ratio (rounding floor)");
    for (const auto& [name, e] : rep.symbolic) r.forms.push_back(entry(name, e, *act.space));
    return std::vector<Row>{r};
  });
}

std::vector<Row> cmd_charge(const MomentumMap& mu, const std::string& label, const FieldDecl& field, double slice,
                            const Tolerances& tol) {
  std::string subject = mu.name + " @ " + field.sample.label + " [" + label + "]";
  return guarded("charge", subject, [&] {
    const Action& act = *mu.action;
    if (field.theory.get() != act.theory.get())
      throw DomainError("field " + field.sample.label + " lives on " + field.theory->name);
    const JetSpace& s = *act.space;
    int k = basis_index(act, label);
    BigradedForm j = mu.mu(1).evaluate({act.algebra->basis(k)}, s);
    SliceSpec spec;
    spec.value = slice;
    double Q = charge(j, field.sample, spec, s);
    Row r;
    r.kind = "charge";
    r.subject = subject;
    r.value = Q;
    r.forms = {entry("j", j, s)};
    if (!field.sample.is_grid()) {
      BigradedForm res;
      bool closed = pulled_back_closed(pullback_form(j, field.sample, s), s, &res);
      r.status = closed ? "pass" : "fail";
      if (!closed) r.residual_form = to_text(res, s);
      r.note = "conservation: d of the pulled-back current";
      return std::vector<Row>{r};
    }
    // Compare with slices spread over the interior of the grid.
    const Grid& g = *field.sample.grid;
    int margin = std::min(4, (g.counts[0] - 1) / 4);
    double lo = g.lo(0) + margin * g.spacing[0], hi = g.hi(0) - margin * g.spacing[0];
    double drift = 0;
    for (int m = 0; m < 5; ++m) {
      SliceSpec other = spec;
      other.value = lo + (hi - lo) * m / 4.0;
      drift = std::max(drift, std::abs(charge(j, field.sample, other, s) - Q));
    }
    drift /= std::max(1.0, std::abs(Q));
    r.status = drift <= tol.drift ? "pass" : "fail";
    r.residual = drift;
    r.note = "relative drift over interior slices, tolerance " + num(tol.drift);
    return std::vector<Row>{r};
  });
}

std::vector<Row> cmd_selftest(const SelftestOptions& opt) {
  SelftestReport rep = run_selftest(opt);
  std::vector<Row> out;
  for (const auto& id : rep.identities) {
    Row r = make("identity", id.suite + ": " + id.name, id.pass());
    r.value = id.cases;
    if (!id.residual.empty()) r.residual_form = id.residual;
    r.note = std::to_string(id.failures) + " of " + std::to_string(id.cases) + " cases failed";
    out.push_back(std::move(r));
  }
  if (!opt.suites.empty()) {
    Row t;
    t.kind = "runtime";
    t.subject = "selftest";
    t.status = "info";
    t.value = rep.seconds;
    t.note = "seconds; seed " + std::to_string(opt.seed);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Row> run_document(const std::string& command, const dsl::Document& doc, const RunConfig& cfg) {
  auto wanted = [&](const std::string& name) { return !cfg.subject || *cfg.subject == name; };
  std::vector<Row> out;
  auto add = [&](const std::string& kind, const std::string& subject, const std::function<std::vector<Row>()>& fn) {
    auto rows = guarded(kind, subject, fn);
    out.insert(out.end(), rows.begin(), rows.end());
  };
  if (command == "el") {
    for (const auto& T : doc.theories)
      if (wanted(T->name)) add("el", T->name, [&] { return cmd_el(*T); });
  } else if (command == "symmetry") {
    for (const auto& a : doc.actions)
      if (wanted(a->name)) add("symmetry", a->name, [&] { return cmd_symmetry(*a); });
  } else if (command == "verify-momap") {
    for (const auto& m : doc.momaps)
      if (wanted(m->name)) add("momap", m->name, [&] { return cmd_verify_momap(*m); });
  } else if (command == "zero-locus") {
    for (const auto& m : doc.momaps) {
      if (!wanted(m->name)) continue;
      std::vector<const FieldDecl*> fs;
      for (const auto& f : doc.fields)
        if (f.theory.get() == m->action->theory.get()) fs.push_back(&f);
      add("zero_locus", m->name, [&] { return cmd_zero_locus(*m, fs, cfg.tol); });
    }
  } else if (command == "check") {
    for (const auto& c : doc.checks) {
      if (!c.args.empty() && !wanted(c.args[0])) continue;
      const auto& a = c.args;
      std::string subject = a.empty() ? std::string() : a[0];
      if (c.kind == "el") {
        add("el", subject, [&] { return cmd_el(*doc.theory(a[0])); });
      } else if (c.kind == "symmetry") {
        add("symmetry", subject, [&] { return cmd_symmetry(*doc.action(a[0])); });
      } else if (c.kind == "momap") {
        add("momap", subject, [&] { return cmd_verify_momap(*doc.momap(a[0])); });
      } else if (c.kind == "zero_locus") {
        std::vector<const FieldDecl*> fs;
        for (std::size_t i = 1; i < a.size(); ++i) fs.push_back(doc.field(a[i]));
        add("zero_locus", subject, [&] { return cmd_zero_locus(*doc.momap(a[0]), fs, cfg.tol); });
      } else if (c.kind == "invariance") {
        add("invariance", subject, [&] { return cmd_invariance(*doc.momap(a[0]), *doc.field(a[1]), a[2], cfg.tol); });
      } else if (c.kind == "charge") {
        add("charge", subject,
            [&] { return cmd_charge(*doc.momap(a[0]), a[1], *doc.field(a[2]), std::stod(a[3]), cfg.tol); });
      }
    }
  } else {
    throw DomainError("unknown command '" + command + "'");
  }
  return out;
}

Report run(const RunConfig& cfg) {
  Report rep;
  rep.command = cfg.command;
  rep.inputs = cfg.inputs;
  if (cfg.command == "selftest") {
    SelftestOptions opt = cfg.selftest;
    opt.seed = cfg.seed;
    rep.results = cmd_selftest(opt);
    return rep;
  }
  dsl::ParseOptions popt;
  popt.jet_order = cfg.jet_order;
  for (const auto& path : cfg.inputs) {
    std::ifstream in(path);
    if (!in) {
      rep.parse_failed = true;
      rep.diagnostics.push_back(path + ": cannot open file");
      continue;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    dsl::ParseResult pr = dsl::parse(text, popt);
    if (!pr.ok()) {
      rep.parse_failed = true;
      for (const auto& d : pr.diagnostics) rep.diagnostics.push_back(d.render(text, path));
      continue;
    }
    auto rows = run_document(cfg.command, pr.doc, cfg);
    rep.results.insert(rep.results.end(), rows.begin(), rows.end());
  }
  return rep;
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << "jetreduce " << r.command;
  for (const auto& i : r.inputs) os << " " << i;
  os << "\n";
  for (const auto& d : r.diagnostics) os << d;
  for (const auto& row : r.results) {
    os << "[" << row.status << "] " << row.kind << "  " << row.subject << "\n";
    if (row.residual) os << "    residual: " << num(*row.residual) << "\n";
    if (row.residual_form) os << (row.residual ? "    residual form: " : "    residual: ") << *row.residual_form << "\n";
    if (row.value) os << "    value: " << num(*row.value) << "\n";
    if (row.value_text) os << "    " << *row.value_text << "\n";
    for (const auto& f : row.forms) os << "    " << f.name << " = " << f.text << "\n";
    if (!row.note.empty()) os << "    note: " << row.note << "\n";
  }
  os << "verdict: " << r.verdict() << "\n";
  return os.str();
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["inputs"] = r.inputs;
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& row : r.results) {
    nlohmann::ordered_json e;
    e["kind"] = row.kind;
    e["subject"] = row.subject;
    e["status"] = row.status;
    if (row.residual)
      e["residual"] = *row.residual;
    else if (row.residual_form)
      e["residual"] = *row.residual_form;
    if (row.residual && row.residual_form) e["residual_form"] = *row.residual_form;
    if (row.value)
      e["value"] = *row.value;
    else if (row.value_text)
      e["value"] = *row.value_text;
    if (row.value && row.value_text) e["detail"] = *row.value_text;
    if (!row.forms.empty()) {
      auto& fs = e["forms"] = nlohmann::ordered_json::array();
      for (const auto& f : row.forms) fs.push_back({{"name", f.name}, {"text", f.text}, {"latex", f.latex}});
    }
    if (!row.note.empty()) e["note"] = row.note;
    j["results"].push_back(std::move(e));
  }
  j["verdict"] = r.verdict();
  if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
  return j.dump(2) + "\n";
}

namespace {

std::string tex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '_': out += "\\_"; break;
      case '^': out += "\\^{}"; break;
      case '&': out += "\\&"; break;
      case '%': out += "\\%"; break;
      case '#': out += "\\#"; break;
      case '{': out += "\\{"; break;
      case '}': out += "\\}"; break;
      case '$': out += "\\$"; break;
      case '\\': out += "\\textbackslash{}"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_latex(const Report& r) {
  std::ostringstream os;
  os << "% jetreduce " << r.command;
  for (const auto& i : r.inputs) os << " " << i;
  os << "\n\\begin{tabular}{llll}\n\\textbf{kind} & \\textbf{subject} & \\textbf{status} & \\textbf{residual} \\\\\n"
        "\\hline\n";
  for (const auto& row : r.results) {
    std::string res = row.residual ? num(*row.residual) : row.residual_form ? "nonzero" : "";
    os << "\\texttt{" << tex_escape(row.kind) << "} & \\texttt{" << tex_escape(row.subject) << "} & "
       << tex_escape(row.status) << " & " << res << " \\\\\n";
  }
  os << "\\end{tabular}\n";
  for (const auto& row : r.results) {
    if (row.forms.empty()) continue;
    os << "\n% " << row.kind << " " << row.subject << "\n\\begin{align*}\n";
    for (const auto& f : row.forms) os << "  \\mathrm{" << tex_escape(f.name) << "} &= " << f.latex << " \\\\\n";
    os << "\\end{align*}\n";
  }
  os << "\n\\textbf{verdict}: " << r.verdict() << "\n";
  return os.str();
}

std::string render(const Report& r, Format f) {
  switch (f) {
    case Format::Json: return render_json(r);
    case Format::Latex: return render_latex(r);
    default: return render_text(r);
  }
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"jetreduce: variational bicomplex, momentum maps and zero loci"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::string format = "text";
  std::optional<double> tol;
  std::string suites = "bicomplex,cochain";
  bool fmt_check = false;

  auto common = [&](CLI::App* sub, bool files_required) {
    auto* f = sub->add_option("files", cfg.inputs, "input documents");
    if (files_required) f->required();
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json", "latex"}));
    sub->add_option("--tol", tol, "numeric tolerance for sampled fields and invariance");
    sub->add_option("--jet-order", cfg.jet_order, "jet truncation override")->check(CLI::Range(1, 12));
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--subject", cfg.subject, "restrict to one declaration");
  };
  common(app.add_subcommand("el", "Euler-Lagrange form, boundary form and omega"), true);
  common(app.add_subcommand("symmetry", "Noether and manifest classification"), true);
  common(app.add_subcommand("verify-momap", "momentum map relations and double complex cross-check"), true);
  common(app.add_subcommand("zero-locus", "zero-locus classification of declared fields"), true);
  common(app.add_subcommand("check", "run the check declarations of a document"), true);
  auto* st = app.add_subcommand("selftest", "randomized invariant suites");
  common(st, false);
  st->add_option("--suites", suites, "comma-separated suites, or none");
  st->add_option("--forms", cfg.selftest.forms, "random forms in the bicomplex suite");
  st->add_option("--fault", cfg.selftest.fault, "identity whose residual gets an injected fault");
  auto* fm = app.add_subcommand("fmt", "print documents in canonical form");
  fm->add_option("files", cfg.inputs, "input documents")->required();
  fm->add_flag("--check", fmt_check, "exit 1 when a file is not in canonical form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? Format::Json : format == "latex" ? Format::Latex : Format::Text;
  if (tol) cfg.tol.numeric = *tol;

  try {
    if (cfg.command == "fmt") {
      int code = 0;
      for (const auto& path : cfg.inputs) {
        std::ifstream in(path);
        if (!in) {
          err << path << ": cannot open file\n";
          return 2;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        dsl::ParseResult pr = dsl::parse(ss.str());
        if (!pr.ok()) {
          for (const auto& d : pr.diagnostics) err << d.render(ss.str(), path);
          return 2;
        }
        std::string canon = dsl::print(pr.doc);
        if (fmt_check) {
          // Comments are not part of the document; compare structure and layout only.
          if (dsl::print(dsl::parse(canon).doc) != canon || !(dsl::parse(canon).doc == pr.doc)) code = 1;
        } else {
          out << canon;
        }
      }
      return code;
    }
    cfg.selftest.suites.clear();
    std::stringstream ss(suites);
    for (std::string s; std::getline(ss, s, ',');)
      if (!s.empty() && s != "none") cfg.selftest.suites.push_back(s);
    if (cfg.command == "selftest")
      for (const auto& s : cfg.selftest.suites) {
        auto all = selftest_suites();
        if (std::find(all.begin(), all.end(), s) == all.end()) {
          err << "unknown suite '" << s << "'\n";
          return 2;
        }
      }
    Report rep = run(cfg);
    out << render(rep, cfg.format);
    if (rep.parse_failed && cfg.format != Format::Text)
      for (const auto& d : rep.diagnostics) err << d;
    return rep.exit_code();
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace jetreduce::cli
