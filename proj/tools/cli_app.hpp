#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "abelaut/abelaut.hpp"

namespace abelaut::cli {

enum ExitCode : int {
  kOk = 0,
  kFalse = 1,
  kUserError = 2,
  kInternalError = 3,
};

namespace detail {

inline std::string read_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  std::ifstream in(arg);
  if (!in) throw ParseError("cannot open '" + arg + "' (expected a JSON file or inline JSON object)");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Endo load_endo(const std::string& arg) { return io::endo_from_json(io::parse(read_json_arg(arg))); }

inline const PrimePowerGroup& single_prime(const AbelianGroup& g, const std::string& spec) {
  if (g.components().size() != 1)
    throw Error("'" + spec + "' has " + std::to_string(g.components().size()) +
                " prime components; this command needs a single-prime group (or --all-primes for sample)");
  return g.components().front();
}

inline void print_report(const oracle::VerifyReport& rep, std::ostream& out) {
  for (const auto& c : rep.components) {
    out << "p=" << c.p << " exponents=[";
    for (std::size_t i = 0; i < c.exponents.size(); ++i) out << (i ? "," : "") << c.exponents[i];
    out << "] formula=" << c.formula;
    if (c.oracle) out << " oracle=" << *c.oracle << " criterion_agrees=" << (c.criterion_agrees ? "true" : "false");
    if (c.error) out << " error: " << *c.error;
    out << (c.pass() ? " PASS" : " FAIL") << '\n';
  }
  if (rep.whole_group) {
    const auto& w = *rep.whole_group;
    out << "whole group: product=" << w.formula;
    if (w.oracle) out << " oracle=" << *w.oracle;
    if (w.error) out << " error: " << *w.error;
    out << (w.pass() ? " PASS" : " FAIL") << '\n';
  }
  out << (rep.pass ? "pass" : "fail") << '\n';
}

}  // namespace detail

/// Runs one CLI invocation and returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Automorphisms and endomorphisms of finite abelian groups", "abelaut"};
  app.require_subcommand(1);

  std::string spec, endo_arg, a_arg, b_arg, elem_arg;
  bool as_json = false, auts_only = false, all_primes = false;
  std::uint64_t seed = 0;
  std::size_t count = 1;

  auto* decompose = app.add_subcommand("decompose", "Primary decomposition of a group");
  decompose->add_option("spec", spec, "Group spec, e.g. \"4,8,3\" or \"Z/4 x Z/8\"")->required();
  decompose->add_flag("--json", as_json, "Emit JSON");

  auto* order = app.add_subcommand("order", "Print |Aut(G)|");
  order->add_option("spec", spec)->required();

  auto* is_auto = app.add_subcommand("is-auto", "Decide whether an endomorphism is invertible");
  is_auto->add_option("--endo", endo_arg, "Endo JSON file or inline JSON")->required();

  auto* inv = app.add_subcommand("invert", "Inverse of an automorphism");
  inv->add_option("--endo", endo_arg)->required();

  auto* compose = app.add_subcommand("compose", "a after b");
  compose->add_option("--a", a_arg)->required();
  compose->add_option("--b", b_arg)->required();

  auto* app_apply = app.add_subcommand("apply", "Apply an endomorphism to an element");
  app_apply->add_option("--endo", endo_arg)->required();
  app_apply->add_option("--elem", elem_arg, "Residues, e.g. \"1,1\" or \"(1,1)\"")->required();

  auto* sample = app.add_subcommand("sample", "Uniformly random automorphisms");
  sample->add_option("spec", spec)->required();
  sample->add_option("--seed", seed)->required();
  sample->add_option("--count", count)->check(CLI::PositiveNumber);
  sample->add_flag("--all-primes", all_primes, "Emit whole-group automorphisms for multi-prime specs");

  auto* verify = app.add_subcommand("verify", "Check the counting formula against brute force");
  verify->add_option("spec", spec)->required();
  verify->add_flag("--json", as_json);

  auto* enumerate = app.add_subcommand("enumerate", "List every canonical endomorphism");
  enumerate->add_option("spec", spec)->required();
  enumerate->add_flag("--auts-only", auts_only, "Only invertible ones");
  enumerate->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUserError;
  }

  try {
    if (*decompose) {
      const AbelianGroup g = parse_group_spec(spec);
      if (as_json)
        out << io::to_json(g).dump() << '\n';
      else
        out << g.to_string() << '\n';
      return kOk;
    }
    if (*order) {
      out << aut_order(parse_group_spec(spec)) << '\n';
      return kOk;
    }
    if (*is_auto) {
      const bool yes = is_automorphism(detail::load_endo(endo_arg));
      out << (yes ? "true" : "false") << '\n';
      return yes ? kOk : kFalse;
    }
    if (*inv) {
      out << io::to_json(invert(detail::load_endo(endo_arg))).dump() << '\n';
      return kOk;
    }
    if (*compose) {
      out << io::to_json(endo_compose(detail::load_endo(a_arg), detail::load_endo(b_arg))).dump() << '\n';
      return kOk;
    }
    if (*app_apply) {
      const Endo m = detail::load_endo(endo_arg);
      const HpElement h(m.group(), parse_residue_list(elem_arg));
      out << io::to_json(apply(m, h)).dump() << '\n';
      return kOk;
    }
    if (*sample) {
      const AbelianGroup g = parse_group_spec(spec);
      Rng rng(seed);
      if (all_primes) {
        for (std::size_t k = 0; k < count; ++k) {
          std::vector<Endo> parts;
          for (const auto& c : g.components()) parts.push_back(random_automorphism(c, rng));
          out << io::to_json(GroupAut(g, std::move(parts))).dump() << '\n';
        }
        return kOk;
      }
      const PrimePowerGroup& hp = detail::single_prime(g, spec);
      for (std::size_t k = 0; k < count; ++k) out << io::to_json(random_automorphism(hp, rng)).dump() << '\n';
      return kOk;
    }
    if (*verify) {
      const auto rep = oracle::verify_group(parse_group_spec(spec));
      if (as_json)
        out << io::to_json(rep).dump() << '\n';
      else
        detail::print_report(rep, out);
      return rep.pass ? kOk : kFalse;
    }
    if (*enumerate) {
      const AbelianGroup g = parse_group_spec(spec);
      const PrimePowerGroup& hp = detail::single_prime(g, spec);
      oracle::for_each_endo(hp, [&](const Endo& m) {
        if (auts_only && !is_automorphism(m)) return;
        if (as_json)
          out << io::to_json(m).dump() << '\n';
        else
          out << m.to_string() << '\n';
      });
      return kOk;
    }
  } catch (const InvariantBreach& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kUserError;
}

}  // namespace abelaut::cli
