// symdyn: batch front end over the library.
//
// Exit codes: 0 ok, 1 a checked property is false, 2 usage/parse/validation error.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "symdyn/analysis.hpp"
#include "symdyn/definitions.hpp"
#include "symdyn/extension.hpp"
#include "symdyn/report.hpp"

using namespace symdyn;

namespace {

std::size_t env_or(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long n = std::strtoul(v, &end, 10);
  if (*end != '\0') throw Error(std::string(name) + " must be a non-negative integer");
  return n;
}

Sidedness parse_scope(const std::string& s) {
  if (s == "one") return Sidedness::one;
  if (s == "two") return Sidedness::two;
  throw Error("scope must be 'one' or 'two'");
}

std::string word_text(const Alphabet& a, const Word& w) { return w.empty() ? "-" : a.format(w); }

void report_extension(Report& rep, const ExtensionResult& r, const Alphabet& dom, const Alphabet& cod) {
  auto& head = rep.record();
  add(head, "verdict", std::string(to_string(r.verdict)));
  if (r.verdict == Verdict::obstruction) {
    const Obstruction& ob = *r.obstruction;
    add(head, "period_in", ob.period_in ? std::to_string(*ob.period_in) : std::string("none"));
    add(head, "period_out", ob.period_out ? std::to_string(*ob.period_out) : std::string("none"));
    add(head, "windows", ob.windows.size());
    add(head, "scale", ob.scale);
    add_flag(head, "infinite", ob.infinite);
    add(head, "target", format_point(ob.target, dom));
    rep.say("obstruction at " + format_point(ob.target, dom) + ": " + std::to_string(ob.windows.size()) +
            " distinct image windows at scale " + std::to_string(ob.scale));
    for (const auto& g : ob.growth) {
      auto& rec = rep.record();
      add(rec, "growth_scale", g.scale);
      add(rec, "depth", g.depth);
      add(rec, "count", g.windows);
    }
    for (const auto& w : ob.windows) {
      auto& rec = rep.record();
      add(rec, "window", word_text(cod, w.window));
      add(rec, "context", format_point(w.realization, dom));
      rep.say("  " + word_text(cod, w.window) + "  from  " + format_point(w.realization, dom));
    }
    if (ob.infinite) rep.say("window count reaches the scale at every tested scale: image set grows without bound");
  } else if (r.verdict == Verdict::extended) {
    add(head, "orbits", r.images.size());
    add(head, "targets", r.targets_checked);
    add(head, "verification_scale", r.verification_scale);
    add_flag(head, "exact", r.exact);
    rep.say("extended on " + std::to_string(r.targets_checked) + " targets (verified to scale " +
            std::to_string(r.verification_scale) + (r.exact ? ", exact" : "") + ")");
    for (const auto& [orbit, image] : r.images) {
      auto& rec = rep.record();
      add(rec, "orbit", dom.format(orbit.canonical()));
      add(rec, "image", format_point(image, cod));
    }
  } else {
    add(head, "targets", r.targets_checked);
    add(head, "reason", r.reason);
    rep.say("inconclusive: " + r.reason);
  }
}

ExtensionBudgets budgets_from(std::optional<std::size_t> scale, std::optional<std::size_t> period) {
  ExtensionBudgets b;
  b.scale_max = scale.value_or(env_or("SYMDYN_SCALE_MAX", b.scale_max));
  b.period_max = period.value_or(env_or("SYMDYN_PERIOD_MAX", b.period_max));
  return b;
}

void report_hypotheses(Report& rep, const HypothesisReport& h, const Alphabet& a) {
  auto& rec = rep.record();
  add(rec, "hypotheses", std::string(h.holds() ? "pass" : "fail"));
  const auto w = h.witness();
  add(rec, "witness", w ? a.format(w->canonical()) : std::string("none"));
  add(rec, "reason", h.reason());
  auto& more = rep.record();
  add(more, "scope", std::string(to_string(h.scope)));
  add(more, "period_bound", h.period_bound);
  add_flag(more, "transitive", h.transitive);
  add_flag(more, "mixing", h.mixing);
  add_flag(more, "synchronizing", h.every_periodic_synchronizing);
  rep.say(std::string("hypotheses ") + (h.holds() ? "hold" : "fail") + " (periods <= " +
          std::to_string(h.period_bound) + ", scope " + std::string(to_string(h.scope)) + ")" +
          (w ? ", witness orbit " + a.format(w->canonical()) + " (" + h.reason() + ")" : ""));
}

int run_example(Report& rep, const std::string& which, const ExtensionBudgets& base) {
  const auto o = builtin_oracle(which);
  if (!o) throw Error("unknown example '" + which + "' (expected 5.1 ... 5.5)");
  const ShiftPresentation& x = o->domain();
  const Alphabet& dom = x.alphabet();
  const Alphabet& cod = o->codomain().alphabet();
  rep.say("example " + which + ": " + o->name());
  report_hypotheses(rep, check_theorem_hypotheses(x, x.sidedness()), dom);
  ExtensionBudgets b = base;
  std::optional<PointPresentation> probe_target;
  if (which == "5.4" || which == "example:5.4") probe_target = parse_point("1 [0]^inf", dom);
  if (which == "5.5" || which == "example:5.5") probe_target = parse_point("[0]^-inf 1 [0]^inf @0", dom);
  if (probe_target) b.extra_targets.push_back(*probe_target);
  const auto r = x.sidedness() == Sidedness::two ? extend(*o, x, o->codomain(), b) : extend_one_sided(*o, x, b);
  report_extension(rep, r, dom, cod);
  if (probe_target) {
    const auto w = continuity_probe(*o, *probe_target, 0, 12);
    auto& rec = rep.record();
    add(rec, "probe_target", format_point(*probe_target, dom));
    add_flag(rec, "discontinuous", w.has_value());
    if (w) {
      add(rec, "n_max", w->pairs.back().n);
      add(rec, "image_a", cod.token(w->pairs.back().first.image));
      add(rec, "image_b", cod.token(w->pairs.back().second.image));
      rep.say("continuity probe: images at coordinate 0 disagree for every n <= 12");
    }
  }
  return r.verdict == Verdict::obstruction ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symdyn: subshifts, sliding block codes and extension of maps from the aperiodic part"};
  app.require_subcommand(1);
  std::function<int(Report&)> action;

  std::string file;
  std::string shift_name;
  std::string scope = "two";
  std::size_t period_bound = 8;
  auto* check = app.add_subcommand("check", "check synchronization and isolation hypotheses");
  check->add_option("file", file, "definitions file")->required();
  check->add_option("--shift", shift_name, "shift name");
  check->add_option("--scope", scope, "one|two");
  check->add_option("--period-max", period_bound, "largest orbit period scanned");
  check->callback([&] {
    action = [&](Report& rep) {
      const auto defs = load_definitions(file);
      const auto& x = defs.shift(shift_name);
      const auto h = check_theorem_hypotheses(x, parse_scope(scope), period_bound);
      report_hypotheses(rep, h, x.alphabet());
      return h.holds() ? 0 : 1;
    };
  });

  double tolerance = 1e-9;
  auto* ent = app.add_subcommand("entropy", "topological entropy (log2)");
  ent->add_option("file", file)->required();
  ent->add_option("--shift", shift_name);
  ent->add_option("--tolerance", tolerance);
  ent->callback([&] {
    action = [&](Report& rep) {
      const auto defs = load_definitions(file);
      const auto e = entropy(defs.shift(shift_name), tolerance);
      auto& rec = rep.record();
      add(rec, "entropy", fixed(e.value, 6));
      add(rec, "bracket", general(tolerance));
      auto& more = rep.record();
      add(more, "lower", fixed(e.lower, 12));
      add(more, "upper", fixed(e.upper, 12));
      rep.say("entropy " + fixed(e.value, 10) + " bits/symbol, bracket [" + fixed(e.lower, 12) + ", " +
              fixed(e.upper, 12) + "]");
      return 0;
    };
  });

  std::size_t max_period = 6;
  auto* orb = app.add_subcommand("orbits", "periodic orbits in canonical form");
  orb->add_option("file", file)->required();
  orb->add_option("--shift", shift_name);
  orb->add_option("--max", max_period, "largest least period");
  orb->callback([&] {
    action = [&](Report& rep) {
      const auto defs = load_definitions(file);
      const auto& x = defs.shift(shift_name);
      const auto orbits = enumerate_periodic_orbits(x, max_period);
      auto& head = rep.record();
      add(head, "orbits", orbits.size());
      add(head, "max", max_period);
      for (const auto& o : orbits) {
        auto& rec = rep.record();
        add(rec, "period", o.period());
        add(rec, "word", x.alphabet().format(o.canonical()));
        rep.say(std::to_string(o.period()) + "  " + x.alphabet().format(o.canonical()));
      }
      return 0;
    };
  });

  std::string code_name;
  std::string point_text;
  auto* app_apply = app.add_subcommand("apply", "apply a sliding block code to a point");
  app_apply->add_option("file", file)->required();
  app_apply->add_option("--code", code_name)->required();
  app_apply->add_option("--point", point_text)->required();
  app_apply->add_option("--shift", shift_name, "check the point lies in this shift");
  app_apply->callback([&] {
    action = [&](Report& rep) {
      const auto defs = load_definitions(file);
      const auto& c = defs.code(code_name);
      const auto p = parse_point(point_text, c.domain());
      if (!shift_name.empty() && !contains_point(defs.shift(shift_name), p))
        throw Error("point is not in shift '" + shift_name + "'");
      const auto img = apply_code(c, p);
      auto& rec = rep.record();
      add(rec, "image", format_point(img, c.codomain()));
      rep.say(format_point(p, c.domain()) + "  ->  " + format_point(img, c.codomain()));
      return 0;
    };
  });

  std::string oracle_name;
  std::string codomain_name;
  std::optional<std::size_t> scale_max;
  std::optional<std::size_t> period_max;
  std::vector<std::string> targets;
  auto* ext = app.add_subcommand("extend", "extend a map given on the aperiodic part");
  ext->add_option("--oracle", oracle_name, "example:5.1 ... example:5.5, or a code in the definitions file")
      ->required();
  ext->add_option("--defs", file, "definitions file");
  ext->add_option("--shift", shift_name, "domain shift");
  ext->add_option("--codomain", codomain_name, "codomain shift");
  ext->add_option("--scale-max", scale_max);
  ext->add_option("--period-max", period_max);
  ext->add_option("--target", targets, "extra eventually periodic target (point literal)");
  ext->callback([&] {
    action = [&](Report& rep) {
      std::optional<Definitions> defs;
      if (!file.empty()) defs = load_definitions(file);
      std::optional<EquivariantOracle> o = builtin_oracle(oracle_name);
      if (!o) {
        if (!defs) throw Error("oracle '" + oracle_name + "' is not built in and no --defs file was given");
        const auto& c = defs->code(oracle_name);
        const ShiftPresentation x = shift_name.empty() ? full_shift(c.domain()) : defs->shift(shift_name);
        const ShiftPresentation y = !codomain_name.empty() ? defs->shift(codomain_name)
                                    : c.codomain() == x.alphabet() ? x
                                                                   : full_shift(c.codomain(), x.sidedness());
        o = oracle_from_code(c, x, y);
      }
      ExtensionBudgets b = budgets_from(scale_max, period_max);
      const Alphabet& dom = o->domain().alphabet();
      for (const auto& t : targets) b.extra_targets.push_back(parse_point(t, dom));
      const auto r = o->sidedness() == Sidedness::two ? extend(*o, o->domain(), o->codomain(), b)
                                                      : extend_one_sided(*o, o->domain(), b);
      report_extension(rep, r, dom, o->codomain().alphabet());
      return r.verdict == Verdict::extended ? 0 : 1;
    };
  });

  std::string example_name;
  auto* ex = app.add_subcommand("example", "reproduce one of the counterexamples 5.1 ... 5.5");
  ex->add_option("which", example_name, "5.1|5.2|5.3|5.4|5.5")->required();
  ex->add_option("--scale-max", scale_max);
  ex->add_option("--period-max", period_max);
  ex->callback([&] {
    action = [&](Report& rep) { return run_example(rep, example_name, budgets_from(scale_max, period_max)); };
  });

  std::string inverse_name;
  auto* rt = app.add_subcommand("roundtrip", "restrict an automorphism to the aperiodic part and extend it back");
  rt->add_option("file", file)->required();
  rt->add_option("--code", code_name)->required();
  rt->add_option("--inverse", inverse_name)->required();
  rt->add_option("--shift", shift_name);
  rt->add_option("--scale-max", scale_max);
  rt->add_option("--period-max", period_max);
  rt->callback([&] {
    action = [&](Report& rep) {
      const auto defs = load_definitions(file);
      const auto& x = defs.shift(shift_name);
      const auto r = aut_roundtrip(defs.code(code_name), defs.code(inverse_name), x, budgets_from(scale_max, period_max));
      auto& rec = rep.record();
      add(rec, "roundtrip", std::string(r.ok() ? "ok" : "fail"));
      add_flag(rec, "inverse", r.inverse_verified);
      add_flag(rec, "maps_into", r.maps_into);
      add(rec, "verdict", std::string(to_string(r.verdict)));
      add(rec, "orbits", r.orbits_compared);
      add(rec, "disagreements", r.disagreements);
      rep.say(std::string("round trip ") + (r.ok() ? "reproduces" : "does not reproduce") + " the code on " +
              std::to_string(r.orbits_compared) + " periodic orbits");
      return r.ok() ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  Report rep;
  int code = 0;
  try {
    code = action(rep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  rep.write(std::cout);
  return code;
}
