// dseq: command-line front end for the library.
//
// Exit status: 0 no violations, 1 violations recorded, 2 usage error (including an unknown
// subcommand), 3 malformed input (term, tree file, predilator spec, number), 4 unsupported
// operation or internal failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "dseq/verify.hpp"

using namespace dseq;
using Json = nlohmann::ordered_json;

namespace {

enum Status { ok_status = 0, violation_status = 1, usage_status = 2, input_status = 3, failure_status = 4 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string cmp_word(Ordering o) { return o < 0 ? "less" : o > 0 ? "greater" : "equal"; }

std::string nat_string(const std::optional<Nat>& n) { return n ? n->str() : "-"; }
Json nat_json(const std::optional<Nat>& n) { return n ? Json(n->str()) : Json(nullptr); }

Json strings(const std::vector<std::string>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x);
  return a;
}

// Collects records; in text mode each record has its own line, in records mode each is one JSON
// line, followed by a closing run record.
class Output {
 public:
  Output(std::string format, std::ostream& os) : records_(format == "records"), os_(os) {}

  void set_command(std::vector<std::string> argv) { command_ = std::move(argv); }
  void input(const std::string& key, Json v) { inputs_[key] = std::move(v); }

  void item(Json rec, const std::string& text) {
    if (records_) {
      os_ << rec.dump() << "\n";
    } else {
      os_ << text << "\n";
    }
  }

  void check(const CheckResult& c) {
    ++checks_;
    if (c.ok()) {
      ++passed_;
    } else {
      ++failed_;
    }
    violations_ += c.violations.size();
    Json rec{{"type", "check"},  {"group", c.group}, {"name", c.name},
             {"bound", c.bound}, {"items", c.items}, {"ok", c.ok()},
             {"violations", strings(c.violations)}};
    std::string text = std::string(c.ok() ? "PASS " : "FAIL ") + c.group + ": " + c.name + " (bound " +
                       std::to_string(c.bound) + ", " + std::to_string(c.items) + " items)";
    for (const auto& v : c.violations) text += "\n    " + v;
    item(rec, text);
  }

  void violation(const std::string& what) {
    ++violations_;
    item(Json{{"type", "violation"}, {"message", what}}, "violation: " + what);
  }

  void text_summary() { summary_text_ = true; }
  bool clean() const { return violations_ == 0 && failed_ == 0; }

  void finish(double millis) {
    if (records_) {
      Json run{{"type", "run"},      {"command", command_}, {"inputs", inputs_},    {"checks", checks_},
               {"passed", passed_},  {"failed", failed_},   {"violations", violations_},
               {"elapsed_ms", static_cast<std::int64_t>(millis)}};
      os_ << run.dump() << "\n";
    } else if (summary_text_) {
      os_ << checks_ << " checks, " << passed_ << " passed, " << failed_ << " failed, " << violations_
          << " violations\n";
    }
  }

 private:
  bool records_;
  std::ostream& os_;
  std::vector<std::string> command_;
  Json inputs_ = Json::object();
  std::size_t checks_ = 0, passed_ = 0, failed_ = 0, violations_ = 0;
  bool summary_text_ = false;
};

std::size_t default_size() {
  if (const char* s = std::getenv("DSEQ_SIZE")) {
    try {
      std::size_t pos = 0;
      auto v = std::stoul(s, &pos);
      if (pos == std::string(s).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("DSEQ_SIZE must be a positive integer, got '") + s + "'");
  }
  return 5;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------------------------
// notation

// A notation system behind string-level enumerate, compare and reprint.
struct AnySystem {
  std::function<std::vector<std::string>(std::size_t)> enumerate;
  std::function<Ordering(const std::string&, const std::string&)> cmp;
  std::function<std::string(const std::string&)> canonical;
};

AnySystem any_system(const std::string& name) {
  auto nf_checked = [](const std::string& s, bool collapsed) {
    auto n = nf_parse(s);
    if (collapsed && !nf_collapsed(n)) throw NotationError("not a collapsed normal form: " + s);
    return n;
  };
  if (name == "ot")
    return {[](std::size_t b) {
              std::vector<std::string> out;
              for (const auto& t : OTSystem{}.enumerate(b)) out.push_back(ot_show(t));
              return out;
            },
            [](const std::string& a, const std::string& b) { return ot_cmp(ot_parse(a), ot_parse(b)); },
            [](const std::string& a) { return ot_show(ot_parse(a)); }};
  if (name == "nf" || name == "c") {
    bool collapsed = name == "c";
    return {[collapsed](std::size_t b) {
              std::vector<std::string> out;
              for (const auto& t : NFSystem{collapsed}.enumerate(b)) out.push_back(nf_show(t));
              return out;
            },
            [=](const std::string& a, const std::string& b) {
              return nf_cmp(nf_checked(a, collapsed), nf_checked(b, collapsed));
            },
            [=](const std::string& a) { return nf_show(nf_checked(a, collapsed)); }};
  }
  if (name == "phi")
    return {[](std::size_t b) {
              std::vector<std::string> out;
              for (const auto& t : PhiSystem{}.enumerate(b)) out.push_back(phi_show(t));
              return out;
            },
            [](const std::string& a, const std::string& b) { return phi_cmp(phi_parse(a), phi_parse(b)); },
            [](const std::string& a) { return phi_show(phi_parse(a)); }};
  if (name == "p")
    return {[](std::size_t b) {
              std::vector<std::string> out;
              for (const auto& t : PSystem{}.enumerate(b)) out.push_back(p_show(t));
              return out;
            },
            [](const std::string& a, const std::string& b) { return p_cmp(p_parse(a), p_parse(b)); },
            [](const std::string& a) { return p_show(p_parse(a)); }};
  if (name.rfind("psi1:", 0) == 0) {
    auto d = make_predilator(name.substr(5));
    auto member = [d](const std::string& s) {
      auto t = parse_term(*d, s);
      if (!psi_valid(*d, t)) throw NotationError("not a member of psi1(" + d->name() + "): " + s);
      return t;
    };
    return {[d](std::size_t b) {
              auto ts = psi1_enumerate(*d, b);
              std::vector<std::string> out;
              for (const auto& t : ts) out.push_back(show_term(*d, t));
              return out;
            },
            [d, member](const std::string& a, const std::string& b) { return psi_cmp(*d, member(a), member(b)); },
            [d, member](const std::string& a) { return show_term(*d, member(a)); }};
  }
  throw InputError("unknown system '" + name + "'");
}

// ---------------------------------------------------------------------------------------------
// embed run

struct MapRun {
  std::string source, target;
  std::function<std::string(const std::string&)> apply;
};

MapRun map_runner(const std::string& name) {
  const auto g = goodstein();
  const auto w = weak_goodstein();
  const auto v = veblen_base();
  auto pseq = [](const std::string& s) {
    auto e = parse_sexpr(s);
    if (!e.headed("seq")) throw ParseError("expected (seq t ...)");
    PSeq xs;
    for (std::size_t i = 1; i < e.items.size(); ++i) xs.push_back(p_parse(e.items[i]));
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (p_cmp(xs[i - 1], xs[i]) < 0) throw NotationError("sequence must be weakly decreasing");
    return xs;
  };
  if (name == "omega_normalize") return {"OT", "N", [](const std::string& s) { return nf_show(omega_normalize(ot_parse(s))); }};
  if (name == "collapse_f") return {"N", "C", [](const std::string& s) { return nf_show(collapse_f(nf_parse(s))); }};
  if (name == "collapse_g") return {"OT below Omega", "C", [](const std::string& s) { return nf_show(bhord_to_C(ot_parse(s))); }};
  if (name == "psi1G_to_bhord")
    return {"psi1(G)", "OT", [g](const std::string& s) { return ot_show(psi1G_to_bhord(parse_term(*g, s))); }};
  if (name == "bhord_to_psi1G")
    return {"OT below Omega", "psi1(G)", [g](const std::string& s) { return show_term(*g, bhord_to_psi1G(ot_parse(s))); }};
  if (name == "phi_to_bh")
    return {"phi(omega,0)", "theta(D)", [v](const std::string& s) { return to_string(print_bh(*v, phi_to_bh(phi_parse(s)))); }};
  if (name == "f_seq") return {"omega^psi(Omega^omega)", "psi(Omega^omega)", [=](const std::string& s) { return p_show(f_seq(pseq(s))); }};
  if (name == "f_seq_tail")
    return {"omega^psi(Omega^omega)", "psi(Omega^omega)", [=](const std::string& s) { return p_show(f_seq_tail(pseq(s))); }};
  if (name == "phi_to_pOmega")
    return {"phi(omega,0)", "psi(Omega^omega)", [](const std::string& s) { return p_show(phi_to_pOmega(phi_parse(s))); }};
  if (name == "pOmega_to_psi1W")
    return {"psi(Omega^omega)", "psi1(W)", [w](const std::string& s) { return show_term(*w, pOmega_to_psi1W(p_parse(s))); }};
  if (name == "psi1W_to_phi")
    return {"psi1(W)", "phi(omega,0)", [w](const std::string& s) { return phi_show(psi1W_to_phi(parse_term(*w, s))); }};
  for (const auto& n : map_names())
    if (n == name) throw Unsupported(name + " takes structured values; use 'embed verify'");
  throw InputError("unknown map '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dseq: Goodstein sequences, predilators, fixed points and ordinal notations"};
  app.require_subcommand(1);
  std::string format = "text", output_path;
  app.add_option("--format", format, "text or records")->check(CLI::IsMember({"text", "records"}));
  app.add_option("--output", output_path, "write to a file instead of standard output");

  std::size_t size = 0;
  auto add_size = [&](CLI::App* c) { c->add_option("--size", size, "size bound (default $DSEQ_SIZE or 5)"); };

  // goodstein
  auto* gs = app.add_subcommand("goodstein", "Goodstein sequences and their inverse prefixes");
  gs->require_subcommand(1);
  std::string seed_text;
  std::size_t steps = 10, stages = 10;
  bool weak = false;
  std::string pred_spec = "goodstein";
  auto* gs_run = gs->add_subcommand("run", "run a Goodstein sequence");
  gs_run->add_option("--seed", seed_text, "starting value")->required();
  gs_run->add_option("--steps", steps, "number of steps");
  gs_run->add_flag("--weak", weak, "weak (plain base) variant");
  auto* gs_inv = gs->add_subcommand("inverse", "finite prefix of the increasing sequence of a predilator");
  gs_inv->add_option("--predilator", pred_spec, "predilator spec")->required();
  gs_inv->add_option("--stages", stages, "number of stages");

  // notation
  auto* nt = app.add_subcommand("notation", "ordinal notation systems");
  nt->require_subcommand(1);
  std::string system = "ot", term_a, term_b;
  auto* nt_cmp = nt->add_subcommand("cmp", "compare two terms");
  nt_cmp->add_option("--system", system, "ot, nf, c, phi, p or psi1:<predilator>");
  nt_cmp->add_option("a", term_a)->required();
  nt_cmp->add_option("b", term_b)->required();
  auto* nt_norm = nt->add_subcommand("normalize", "Omega-normal form of an OT term");
  nt_norm->add_option("a", term_a)->required();
  auto* nt_enum = nt->add_subcommand("enumerate", "all terms up to a size, one per line");
  nt_enum->add_option("--system", system, "ot, nf, c, phi, p or psi1:<predilator>");
  add_size(nt_enum);

  // fixpoint
  auto* fx = app.add_subcommand("fixpoint", "the 1-fixed point psi_1(D)");
  fx->require_subcommand(1);
  std::string from_spec, to_spec;
  auto* fx_enum = fx->add_subcommand("enumerate", "psi_1(D) up to a size, ascending");
  fx_enum->add_option("--predilator", pred_spec, "predilator spec")->required();
  add_size(fx_enum);
  auto* fx_check = fx->add_subcommand("check", "linearity, height and termination conditions");
  fx_check->add_option("--predilator", pred_spec, "predilator spec")->required();
  add_size(fx_check);
  auto* fx_hom = fx->add_subcommand("hom", "the unique homomorphism psi_1(A) -> psi_1(B)");
  fx_hom->add_option("--from", from_spec, "source predilator")->required();
  fx_hom->add_option("--to", to_spec, "target predilator")->required();
  add_size(fx_hom);

  // embed
  auto* em = app.add_subcommand("embed", "embeddings between notation systems");
  em->require_subcommand(1);
  std::string map_name, pair_name, map_term;
  auto* em_run = em->add_subcommand("run", "apply a map to a term");
  em_run->add_option("--map", map_name)->required();
  em_run->add_option("term", map_term)->required();
  auto* em_verify = em->add_subcommand("verify", "strict monotonicity of a map on all terms up to a size");
  em_verify->add_option("--map", map_name)->required();
  add_size(em_verify);
  auto* em_equi = em->add_subcommand("equimorphism", "both directions and both round trips of a pair");
  em_equi->add_option("--pair", pair_name)->required();
  add_size(em_equi);

  // patho
  auto* pt = app.add_subcommand("patho", "ill-founded and non-canonical termination points");
  pt->require_subcommand(1);
  std::string window = "-10,10", tree_file, r_text = "0", against_text;
  std::size_t descent = 10, height = 9, bf_steps = 40;
  auto* pt_z = pt->add_subcommand("z-check", "the integers as a termination point of the identity");
  pt_z->add_option("--window", window, "a,b");
  pt_z->add_option("--descent", descent, "required descent length");
  auto* pt_tree = pt->add_subcommand("tree", "the fixed point of a tree predilator");
  pt_tree->add_option("--file", tree_file, "tree file: one 'parent L|I' line per node")->required();
  add_size(pt_tree);
  auto* pt_succ = pt->add_subcommand("successor", "successor property of bump(P)");
  pt_succ->add_option("--predilator", pred_spec, "predilator spec")->required();
  add_size(pt_succ);
  auto* pt_dense = pt->add_subcommand("dense", "the window Q minus [r, r+1]");
  pt_dense->add_option("--r", r_text, "p/q");
  pt_dense->add_option("--height", height, "rational sample height");
  pt_dense->add_option("--against", against_text, "second r for a back-and-forth run");
  pt_dense->add_option("--steps", bf_steps, "back-and-forth steps");

  // verify
  auto* vf = app.add_subcommand("verify", "run verification groups");
  bool verify_all = false;
  std::vector<std::string> groups;
  vf->add_flag("--all", verify_all, "every group");
  vf->add_option("--group", groups, "linearity, embeddings, identities, round-trip, height, pathologies, hom");
  add_size(vf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok_status : usage_status;
  }

  std::ofstream file;
  if (!output_path.empty()) {
    file.open(output_path);
    if (!file) {
      std::cerr << "cannot write " << output_path << "\n";
      return input_status;
    }
  }
  Output out(format, output_path.empty() ? std::cout : file);
  out.set_command(std::vector<std::string>(argv + 1, argv + argc));
  auto t0 = std::chrono::steady_clock::now();

  try {
    std::size_t bound = size ? size : default_size();

    if (*gs_run) {
      Nat seed;
      try {
        seed = Nat(seed_text);
      } catch (const std::exception&) {
        throw InputError("seed must be a natural number, got '" + seed_text + "'");
      }
      if (seed < 0) throw InputError("seed must be a natural number");
      out.input("seed", seed.str());
      out.input("steps", steps);
      out.input("weak", weak);
      auto run = weak ? weak_run(seed, steps) : classic_run(seed, steps);
      for (const auto& m : run)
        out.item(Json{{"type", "member"},
                      {"stage", m.stage},
                      {"base", m.base},
                      {"value", nat_json(m.value)},
                      {"bumped", nat_json(m.bumped)},
                      {"term", m.notation}},
                 "stage " + std::to_string(m.stage) + " base " + std::to_string(m.base) + " value " +
                     nat_string(m.value) + " term " + m.notation);
    } else if (*gs_inv) {
      out.input("predilator", pred_spec);
      out.input("stages", stages);
      auto p = inverse_prefix(make_predilator(pred_spec), stages);
      for (std::size_t x = 0; x < p.size(); ++x)
        out.item(Json{{"type", "point"}, {"stage", x}, {"value", p.d->show(p.a[x])}},
                 std::to_string(x) + " " + p.d->show(p.a[x]));
      if (p.terminated_at)
        out.item(Json{{"type", "terminated"}, {"stage", *p.terminated_at}},
                 "terminated at " + std::to_string(*p.terminated_at));
    } else if (*nt_cmp) {
      out.input("system", system);
      auto s = any_system(system);
      auto c = s.cmp(term_a, term_b);
      out.item(Json{{"type", "comparison"}, {"a", s.canonical(term_a)}, {"b", s.canonical(term_b)}, {"result", cmp_word(c)}},
               cmp_word(c));
    } else if (*nt_norm) {
      auto n = omega_normalize(ot_parse(term_a));
      out.item(Json{{"type", "normal_form"}, {"term", ot_show(ot_parse(term_a))}, {"normal_form", nf_show(n)}},
               nf_show(n));
    } else if (*nt_enum) {
      out.input("system", system);
      out.input("size", bound);
      for (const auto& t : any_system(system).enumerate(bound)) out.item(Json{{"type", "term"}, {"term", t}}, t);
    } else if (*fx_enum) {
      out.input("predilator", pred_spec);
      out.input("size", bound);
      auto d = make_predilator(pred_spec);
      auto ts = psi1_enumerate(*d, bound);
      sort_terms(*d, ts);
      for (const auto& t : ts)
        out.item(Json{{"type", "term"}, {"term", show_term(*d, t)}, {"size", term_size(*d, t)}}, show_term(*d, t));
    } else if (*fx_check) {
      out.input("predilator", pred_spec);
      out.input("size", bound);
      out.text_summary();
      auto d = make_predilator(pred_spec);
      auto ts = psi1_enumerate(*d, bound);
      out.check(detail::from_linearity("fixpoint", "linearity of psi1", bound,
                                       linearity_suite(
                                           ts, [&](const CTerm& a, const CTerm& b) { return psi_cmp(*d, a, b); },
                                           [&](const CTerm& t) { return show_term(*d, t); })));
      sort_terms(*d, ts);
      auto h = synthesize_height(*d, ts);
      CheckResult hc{"fixpoint", "height synthesis", bound, ts.size(), {}};
      if (!h.ok()) hc.violations.push_back(h.message.empty() ? "height synthesis failed" : h.message);
      out.check(hc);
      if (d->has_least_above()) {
        auto p = inverse_prefix(d, bound);
        auto r = check_conditions(p, bound);
        CheckResult cc{"fixpoint", "termination point conditions", bound, r.checked, r.violations};
        if (!r.ok() && cc.violations.empty()) cc.violations.push_back("conditions fail");
        out.check(cc);
        auto back = fp_to_termination(d, termination_to_fp(p));
        CheckResult rt{"fixpoint", "round trip", bound, p.size(), {}};
        bool same = back.size() == p.size();
        for (std::size_t x = 0; same && x < p.size(); ++x) same = back.a[x] == p.a[x];
        if (!same) rt.violations.push_back("termination prefix changes under the round trip");
        out.check(rt);
      }
    } else if (*fx_hom) {
      out.input("from", from_spec);
      out.input("to", to_spec);
      out.input("size", bound);
      auto a = make_predilator(from_spec), b = make_predilator(to_spec);
      auto src = psi1_enumerate(*a, bound);
      sort_terms(*a, src);
      auto r = psi_hom(*a, *b, src, [](const Value& v) { return v; });
      for (std::size_t i = 0; i < src.size(); ++i) {
        std::string img = r.image[i] ? show_term(*b, *r.image[i]) : "undefined";
        out.item(Json{{"type", "image"}, {"term", show_term(*a, src[i])}, {"image", r.image[i] ? Json(img) : Json(nullptr)}},
                 show_term(*a, src[i]) + " -> " + img);
      }
      for (const auto& e : r.errors) out.violation(e);
      for (const auto& e : r.monotone.violations) out.violation(e);
    } else if (*em_run) {
      out.input("map", map_name);
      auto m = map_runner(map_name);
      auto img = m.apply(map_term);
      out.item(Json{{"type", "image"}, {"map", map_name}, {"source", m.source}, {"target", m.target}, {"term", map_term},
                    {"image", img}},
               img);
    } else if (*em_verify) {
      out.input("map", map_name);
      out.input("size", bound);
      out.text_summary();
      bool known = false;
      for (const auto& n : map_names()) known = known || n == map_name;
      for (const auto& n : aca_map_names()) known = known || n == map_name;
      if (!known) throw InputError("unknown map '" + map_name + "'");
      out.check(monotonicity_check(map_name, bound));
    } else if (*em_equi) {
      out.input("pair", pair_name);
      out.input("size", bound);
      out.text_summary();
      bool known = false;
      for (const auto& n : pair_names()) known = known || n == pair_name;
      if (!known) throw InputError("unknown pair '" + pair_name + "'");
      out.check(detail::from_embedding("equimorphism", pair_name, equimorphism_suite(pair_name, bound)));
    } else if (*pt_z) {
      auto comma = window.find(',');
      if (comma == std::string::npos) throw InputError("window must be a,b");
      std::int64_t lo, hi;
      try {
        lo = std::stoll(window.substr(0, comma));
        hi = std::stoll(window.substr(comma + 1));
      } catch (const std::exception&) {
        throw InputError("window must be two integers a,b");
      }
      out.input("window", Json::array({lo, hi}));
      out.input("descent", descent);
      auto r = z_point_check(lo, hi, descent);
      Json d = Json::array();
      std::string ds;
      for (auto z : r.descent) {
        d.push_back(z);
        ds += (ds.empty() ? "" : " ") + std::to_string(z);
      }
      out.item(Json{{"type", "z_point"},
                    {"window", Json::array({lo, hi})},
                    {"condition1", r.condition1},
                    {"condition2", r.condition2},
                    {"minimality_checks", r.minimality_checks},
                    {"cofinality_checks", r.cofinality_checks},
                    {"height_fails", r.height_fails()},
                    {"descent", d}},
               std::string("condition (1): ") + (r.condition1 ? "holds" : "fails") + "\ncondition (2): " +
                   (r.condition2 ? "holds" : "fails") + "\nheight synthesis: " +
                   (r.height_fails() ? "exhausts fuel" : "terminates") + "\ndescent: " + ds);
      for (const auto& v : r.violations) out.violation(v);
      if (!r.ok() && r.violations.empty()) out.violation("z point check failed");
    } else if (*pt_tree) {
      out.input("file", tree_file);
      out.input("size", bound);
      TreeFixedPoint fp{BinaryTree::parse(read_file(tree_file))};
      auto r = tree_fixed_point_check(fp, bound);
      out.item(Json{{"type", "tree_fixed_point"},
                    {"tree_nodes", r.tree_nodes},
                    {"bound", r.bound},
                    {"plus_terms", r.plus_terms},
                    {"members", r.members},
                    {"order_consistent", r.order_consistent},
                    {"bijective", r.bijective},
                    {"range", r.range_sub && r.range_sup},
                    {"well_founded", r.well_founded}},
               "nodes " + std::to_string(r.tree_nodes) + ", terms " + std::to_string(r.plus_terms) + ", members " +
                   std::to_string(r.members) + ", order " + (r.order_consistent ? "consistent" : "inconsistent") +
                   ", pi+ " + (r.bijective ? "bijective" : "not bijective") + ", range " +
                   (r.range_sub && r.range_sup ? "ok" : "fails") + ", height " +
                   (r.well_founded ? "found" : "not found"));
      for (const auto& v : r.violations) out.violation(v);
      if (!r.ok() && r.violations.empty()) out.violation("tree fixed point check failed");
    } else if (*pt_succ) {
      out.input("predilator", pred_spec);
      out.input("size", bound);
      auto r = successor_check(make_predilator(pred_spec), bound);
      out.item(Json{{"type", "successor"},
                    {"terms", r.terms},
                    {"with_successor", r.with_successor},
                    {"between_checks", r.between_checks}},
               std::to_string(r.with_successor) + " of " + std::to_string(r.terms) + " terms have a successor (" +
                   std::to_string(r.between_checks) + " betweenness checks)");
      for (const auto& v : r.violations) out.violation(v);
      if (r.with_successor != r.terms) out.violation("some terms have no successor");
    } else if (*pt_dense) {
      Rational r = parse_rational(r_text);
      out.input("r", show_rational(r));
      out.input("height", height);
      auto rep = dense_window_check(r, static_cast<std::int64_t>(height));
      out.item(Json{{"type", "dense_window"},
                    {"r", show_rational(r)},
                    {"samples", rep.samples},
                    {"carrier_samples", rep.carrier_samples},
                    {"density_checks", rep.density_checks},
                    {"cofinality_checks", rep.cofinality_checks}},
               "r " + show_rational(r) + ": " + std::to_string(rep.carrier_samples) + " of " +
                   std::to_string(rep.samples) + " samples in the carrier, " + std::to_string(rep.density_checks) +
                   " density and " + std::to_string(rep.cofinality_checks) + " cofinality checks");
      for (const auto& v : rep.violations) out.violation(v);
      if (!against_text.empty()) {
        Rational s = parse_rational(against_text);
        out.input("against", show_rational(s));
        auto x = window_carrier(r), y = window_carrier(s);
        auto p = back_and_forth(x, y, bf_steps);
        auto dp = distinguishing_point(r, s);
        Json pairs = Json::array();
        std::string ps;
        for (const auto& [a, b] : p.pairs) {
          pairs.push_back(Json::array({show_rational(a), show_rational(b)}));
          ps += "\n  " + show_rational(a) + " -> " + show_rational(b);
        }
        out.item(Json{{"type", "back_and_forth"},
                      {"steps", p.steps},
                      {"stuck", p.stuck},
                      {"pairs", pairs},
                      {"distinguishing_point", dp ? Json(show_rational(*dp)) : Json(nullptr)}},
                 "back-and-forth " + show_rational(r) + " / " + show_rational(s) + ": " + std::to_string(p.steps) +
                     " steps" + (p.stuck ? ", stuck" : "") + ps);
        if (!p.ok()) out.violation(p.message);
        if (!is_partial_isomorphism(p, x, y)) out.violation("back-and-forth pairs are not order preserving");
      }
    } else if (*vf) {
      if (verify_all) groups = group_names();
      if (groups.empty()) throw InputError("verify needs --all or --group");
      out.input("groups", groups);
      out.input("size", bound);
      out.text_summary();
      for (const auto& gname : groups) {
        bool known = false;
        for (const auto& n : group_names()) known = known || n == gname;
        if (!known) throw InputError("unknown group '" + gname + "'");
        for (const auto& c : run_group(gname, bound)) out.check(c);
      }
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_status;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return input_status;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return failure_status;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return input_status;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return failure_status;
  }

  out.finish(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  return out.clean() ? ok_status : violation_status;
}
