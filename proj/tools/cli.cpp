#include "cli.hpp"

#include "pcl/closure.hpp"
#include "pcl/errors.hpp"
#include "pcl/geometry.hpp"
#include "pcl/groebner.hpp"
#include "pcl/parser.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

namespace pcl::cli {

using json = nlohmann::ordered_json;

namespace {

// Thrown for bad option values that parse but make no sense.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string field = "GF(2)";
  std::string vars = "t";
  std::uint64_t seed = 0;
  bool json_out = false;
  bool trace = false;
  bool timing = false;
  std::size_t max_spairs = 1'000'000;
  double time_limit = 0; // seconds, 0 = none
};

struct Session {
  FieldPtr field;
  AmbientPtr k;

  KTuple tuple(const std::string &s) const { return parse_tuple(s, k); }
  RatFunc elem(const std::string &s) const { return parse_element(s, k); }
  Subfield sub(const std::string &s) const { return Subfield(k, tuple(s)); }
  // "" means the whole ambient field
  Subfield sub_or_ambient(const std::string &s) const {
    return s.empty() ? ambient_subfield(k) : sub(s);
  }
};

json strings(const KTuple &xs) {
  json a = json::array();
  for (const auto &x : xs)
    a.push_back(x.to_string());
  return a;
}

std::string join(const KTuple &xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i)
    s += (i ? ", " : "") + xs[i].to_string();
  return s;
}

std::string field_name(const Session &S, const Subfield &D) {
  return S.field->name() + "(" + join(D.gens()) + ")";
}

json stage_json(const SplitPair &st, std::size_t index) {
  json terms_a = json::array(), terms_b = json::array();
  for (const auto &t : st.a_terms)
    terms_a.push_back(to_sexpr(t));
  for (const auto &t : st.b_terms)
    terms_b.push_back(to_sexpr(t));
  return json{{"index", index}, {"a", strings(st.a)}, {"b", strings(st.b)}, {"a_terms", terms_a}, {"b_terms", terms_b}};
}

json stages_json(const std::vector<SplitPair> &stages) {
  json a = json::array();
  for (std::size_t i = 0; i < stages.size(); ++i)
    a.push_back(stage_json(stages[i], i));
  return a;
}

std::vector<std::size_t> positions_of(const KTuple &prefix, const KTuple &b) {
  std::vector<std::size_t> pos;
  std::size_t j = 0;
  for (std::size_t i = 0; i < b.size() && j < prefix.size(); ++i)
    if (b[i] == prefix[j]) {
      pos.push_back(i);
      ++j;
    }
  return pos;
}

TruncSeries parse_series(const std::string &src, const FieldPtr &field, std::size_t N) {
  const auto ring = make_ring(field, {"t"});
  const MPoly f = parse_polynomial(src, ring);
  std::vector<FiniteField::Elem> c(N, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto e = f.exps(i)[0];
    if (e < N)
      c[e] = f.coeff(i);
  }
  return TruncSeries(field, N, std::move(c));
}

// A command fills `result` and returns its one-line summary.
using Handler = std::function<std::string(const Session &, const Common &, json &result)>;

struct Command {
  std::string name;
  Handler handler;
};

void add_common(CLI::App *sub, Common &c) {
  sub->add_option("--field", c.field, "coefficient field, GF(p) or GF(p^m)");
  sub->add_option("--vars", c.vars, "comma-separated variable names");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_flag("--json", c.json_out, "print the JSON report");
  sub->add_flag("--trace", c.trace, "include stage traces");
  sub->add_flag("--timing", c.timing, "print elapsed time on stderr");
  sub->add_option("--max-spairs", c.max_spairs, "S-pair cap per Groebner basis");
  sub->add_option("--time-limit", c.time_limit, "time cap in seconds");
}

// Builds the parser; `chosen` receives the selected command.
std::unique_ptr<CLI::App> build_app(Common &c, Command &chosen) {
  auto app = std::make_unique<CLI::App>("Exact p-independence, lambda functions and closures over F_q(t1..tn)", "pcl");
  app->require_subcommand(1);
  app->set_help_all_flag("--help-all");

  auto reg = [&](const std::string &name, const std::string &desc, auto setup) {
    auto *sub = app->add_subcommand(name, desc);
    add_common(sub, c);
    auto handler = setup(sub);
    sub->callback([&chosen, name, handler] { chosen = {name, handler}; });
  };

  reg("lambda", "lambda functions of a over a p-independent tuple b", [](CLI::App *sub) {
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>(), idx = std::make_shared<std::string>();
    sub->add_option("--a", *a, "element")->required();
    sub->add_option("--b", *b, "p-independent tuple")->required();
    sub->add_option("--index", *idx, "single multi-index, comma-separated");
    return Handler([=](const Session &S, const Common &, json &r) {
      const RatFunc x = S.elem(*a);
      const KTuple bt = S.tuple(*b);
      const auto p = S.k->characteristic();
      const auto fam = lambda_eval(x, bt);
      std::optional<MultiIndex> only;
      if (!idx->empty()) {
        MultiIndex I;
        for (const auto &s : split_list(*idx)) {
          const long v = std::stol(s);
          if (v < 0 || static_cast<std::uint64_t>(v) >= p)
            throw ConfigError("index entries must lie in [0, p)");
          I.entries.push_back(static_cast<std::uint32_t>(v));
        }
        if (I.size() != bt.size())
          throw ConfigError("index length must equal |b|");
        only = I;
      }
      json comps = json::array();
      RatFunc sum(S.k);
      for (const auto &[I, v] : fam) {
        RatFunc mono(S.k, 1);
        for (std::size_t i = 0; i < I.size(); ++i)
          mono *= bt[i].pow(I[i]);
        sum += mono * v.frobenius();
        if (only && !(I == *only))
          continue;
        comps.push_back(json{{"index", I.entries}, {"value", v.to_string()}});
      }
      r["a"] = x.to_string();
      r["b"] = strings(bt);
      r["components"] = comps;
      r["reconstructs"] = sum == x;
      std::size_t nonzero = 0;
      for (const auto &kv : fam)
        nonzero += !kv.second.is_zero();
      return std::to_string(fam.size()) + " components, " + std::to_string(nonzero) + " nonzero";
    });
  });

  reg("pind", "p-independence and the left-greedy independent prefix", [](CLI::App *sub) {
    auto b = std::make_shared<std::string>(), over = std::make_shared<std::string>();
    sub->add_option("--b", *b, "tuple")->required();
    sub->add_option("--over", *over, "generators of the base field (default F_q)");
    return Handler([=](const Session &S, const Common &, json &r) {
      const KTuple bt = S.tuple(*b);
      const Subfield C = S.sub(*over);
      const KTuple prefix = p_ind_prefix(bt, C);
      const bool indep = prefix.size() == bt.size();
      r["independent"] = indep;
      r["prefix"] = strings(prefix);
      r["prefix_positions"] = positions_of(prefix, bt);
      return std::string(indep ? "p-independent" : "p-dependent") + "; prefix (" + join(prefix) + ")";
    });
  });

  reg("closure", "lambda closure of a subfield, or local closure over a base", [](CLI::App *sub) {
    auto gens = std::make_shared<std::string>(), base = std::make_shared<std::string>(),
         basis = std::make_shared<std::string>();
    auto local = std::make_shared<bool>(false), prune = std::make_shared<bool>(false);
    sub->add_option("--gens", *gens, "generators")->required();
    sub->add_option("--base", *base, "generators of the base field C (implies --local)");
    sub->add_option("--basis", *basis, "p-basis c of C (default: computed)");
    sub->add_flag("--local", *local, "report the local closure of the tuple over C");
    sub->add_flag("--prune", *prune, "drop zeros and redundant elements from lambda blocks");
    return Handler([=](const Session &S, const Common &c, json &r) {
      const KTuple g = S.tuple(*gens);
      auto [trace, field] = [&]() -> std::pair<ClosureTrace, Subfield> {
        if (*local || !base->empty()) {
          const Subfield C = S.sub(*base);
          const KTuple cb = basis->empty() ? p_basis(C) : S.tuple(*basis);
          auto tr = local_lambda_closure(g, ClosureBase(C, cb), *prune);
          Subfield f = tr.closure;
          return {std::move(tr), std::move(f)};
        }
        auto res = lambda_closure_of_subfield(g, S.k, *prune);
        return {std::move(res.trace), std::move(res.field)};
      }();
      r["gens"] = strings(field.gens());
      r["steps"] = trace.nontrivial_steps;
      r["fixpoint_stage"] = trace.fixpoint_stage;
      r["p_basis"] = strings(trace.final_stage().a);
      if (c.trace)
        r["trace"] = json{{"stages", stages_json(trace.stages)},
                          {"termination", json{{"kind", "Fixpoint"}, {"stage", trace.fixpoint_stage}}}};
      return "closure " + field_name(S, field) + " after " + std::to_string(trace.nontrivial_steps) +
             " nontrivial steps";
    });
  });

  reg("fbc", "finite truncation of the local closure at which b becomes separable", [](CLI::App *sub) {
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>(),
         base = std::make_shared<std::string>(), basis = std::make_shared<std::string>();
    auto all = std::make_shared<bool>(false), prune = std::make_shared<bool>(false);
    sub->add_option("--a", *a, "tuple a")->required();
    sub->add_option("--b", *b, "tuple b")->required();
    sub->add_option("--base", *base, "generators of the base field C");
    sub->add_option("--basis", *basis, "p-basis c of C (default: computed)");
    sub->add_flag("--all-orderings", *all, "also report the maximum stage over all orderings of a (|a| <= 4)");
    sub->add_flag("--prune", *prune, "drop zeros and redundant elements from lambda blocks");
    return Handler([=](const Session &S, const Common &c, json &r) {
      const Subfield C = S.sub(*base);
      const KTuple cb = basis->empty() ? p_basis(C) : S.tuple(*basis);
      auto res = lambda_fbc(S.tuple(*a), S.tuple(*b), ClosureBase(C, cb), *all, *prune);
      r["n"] = res.n;
      r["tuple"] = strings(res.tuple);
      r["length"] = res.tuple.size();
      r["sigma"] = res.sigma;
      if (res.max_over_orderings)
        r["max_over_orderings"] = *res.max_over_orderings;
      if (c.trace)
        r["trace"] = json{{"stages", stages_json(res.stages)},
                          {"termination", json{{"kind", "TargetSeparable"}, {"stage", res.n}}}};
      return "separable at stage " + std::to_string(res.n) + " with " + std::to_string(res.tuple.size()) +
             " coordinates";
    });
  });

  auto sep = [](bool separated) {
    return [separated](CLI::App *sub) {
      auto D = std::make_shared<std::string>(), E = std::make_shared<std::string>();
      sub->add_option("--D", *D, "generators of the smaller field")->required();
      sub->add_option("--E", *E, "generators of the larger field (default: whole ambient)");
      return Handler([=](const Session &S, const Common &, json &r) {
        const Subfield d = S.sub(*D), e = S.sub_or_ambient(*E);
        const bool s = is_separable(d, e);
        r["separable"] = s;
        std::string out = std::string(s ? "separable" : "not separable");
        if (separated) {
          const bool t = s && is_separated(d, e);
          r["separated"] = t;
          out = std::string(t ? "separated" : "not separated") + " (" + out + ")";
        }
        return out;
      });
    };
  };
  reg("separable", "is E separable over D", sep(false));
  reg("separated", "is E separated over D", sep(true));

  reg("impdeg", "imperfection degree and a p-basis", [](CLI::App *sub) {
    auto gens = std::make_shared<std::string>(), over = std::make_shared<std::string>();
    sub->add_option("--gens", *gens, "generators; empty means the whole ambient field");
    sub->add_option("--over", *over, "relative to this subfield");
    return Handler([=](const Session &S, const Common &, json &r) {
      const Subfield E = S.sub_or_ambient(*gens);
      KTuple basis = over->empty() ? p_basis(E) : p_basis_rel(E, S.sub(*over));
      r["impdeg"] = basis.size();
      r["p_basis"] = strings(basis);
      return "impdeg " + std::to_string(basis.size());
    });
  });

  reg("member", "subfield membership with witness", [](CLI::App *sub) {
    auto x = std::make_shared<std::string>(), gens = std::make_shared<std::string>();
    sub->add_option("--x", *x, "element")->required();
    sub->add_option("--gens", *gens, "generators of the subfield")->required();
    return Handler([=](const Session &S, const Common &, json &r) {
      const RatFunc e = S.elem(*x);
      const Subfield D = S.sub(*gens);
      if (auto w = member(e, D)) {
        r["member"] = true;
        r["witness"] = w->to_string();
        return "member: " + w->to_string();
      }
      r["member"] = false;
      const auto mp = minimal_polynomial(e, D);
      if (!mp) {
        r["certificate"] = json{{"kind", "transcendental"}};
        return std::string("not a member (transcendental)");
      }
      r["certificate"] =
          json{{"kind", "minimal_polynomial"}, {"degree", mp->degree}, {"polynomial", mp->to_string()}};
      return "not a member (minimal polynomial of degree " + std::to_string(mp->degree) + ")";
    });
  });

  reg("locus", "ideal of polynomial relations of a tuple", [](CLI::App *sub) {
    auto a = std::make_shared<std::string>(), over = std::make_shared<std::string>();
    sub->add_option("--a", *a, "tuple")->required();
    sub->add_option("--over", *over, "generators of C (tags c1..)");
    return Handler([=](const Session &S, const Common &, json &r) {
      const auto I = locus(S.tuple(*a), S.sub(*over));
      json basis = json::array();
      for (const auto &f : I.basis)
        basis.push_back(f.to_string());
      r["ring"] = I.ring->names();
      r["ideal"] = basis;
      r["dimension"] = I.dimension;
      return I.to_string();
    });
  });

  reg("tool", "minimal polynomials of each coordinate over the previous ones", [](CLI::App *sub) {
    auto a = std::make_shared<std::string>(), over = std::make_shared<std::string>();
    sub->add_option("--a", *a, "tuple")->required();
    sub->add_option("--over", *over, "generators of D (variables D1..)");
    return Handler([=](const Session &S, const Common &, json &r) {
      const auto tp = tool_presentation(S.tuple(*a), S.sub(*over));
      json entries = json::array();
      std::string out;
      for (const auto &e : tp.entries) {
        entries.push_back(json{{"g", e.g.to_string()}, {"h", e.h.to_string()}, {"degree", e.degree},
                               {"separable", e.separable}});
        out += (out.empty() ? "" : ", ") + ("(" + e.g.to_string() + ", " + e.h.to_string() + ")");
      }
      r["ring"] = tp.ring->names();
      r["entries"] = entries;
      return "[" + out + "]";
    });
  });

  reg("split", "separating transcendence split of b over D", [](CLI::App *sub) {
    auto b = std::make_shared<std::string>(), over = std::make_shared<std::string>();
    sub->add_option("--b", *b, "tuple")->required();
    sub->add_option("--over", *over, "generators of D");
    return Handler([=](const Session &S, const Common &, json &r) {
      const KTuple bt = S.tuple(*b);
      const auto s = sep_trans_split(bt, S.sub(*over));
      KTuple b1, b2;
      for (auto i : s.b1)
        b1.push_back(bt[i]);
      for (auto i : s.b2)
        b2.push_back(bt[i]);
      r["b1"] = strings(b1);
      r["b2"] = strings(b2);
      r["b1_positions"] = s.b1;
      r["b2_positions"] = s.b2;
      return "b1 = (" + join(b1) + "), b2 = (" + join(b2) + ")";
    });
  });

  reg("hensel", "Newton lift of a polynomial system over truncated series", [](CLI::App *sub) {
    auto system = std::make_shared<std::string>(), x = std::make_shared<std::string>(),
         y0 = std::make_shared<std::string>(), xvars = std::make_shared<std::string>("x"),
         yvars = std::make_shared<std::string>("y");
    auto prec = std::make_shared<std::size_t>(32);
    sub->add_option("--system", *system, "polynomials separated by ';'")->required();
    sub->add_option("--x", *x, "series for the x variables, comma-separated polynomials in t");
    sub->add_option("--y0", *y0, "starting series for the y variables")->required();
    sub->add_option("--xvars", *xvars, "names of the x variables");
    sub->add_option("--yvars", *yvars, "names of the y variables");
    sub->add_option("--prec", *prec, "precision N");
    return Handler([=](const Session &S, const Common &, json &r) {
      const auto xs = split_list(*xvars), ys = split_list(*yvars);
      std::vector<std::string> names = xs;
      names.insert(names.end(), ys.begin(), ys.end());
      const auto ring = make_ring(S.field, names);
      std::vector<MPoly> polys;
      for (const auto &f : split_list(*system, ';'))
        polys.push_back(parse_polynomial(f, ring));
      if (polys.size() != ys.size())
        throw ConfigError("need one equation per y variable");
      std::vector<TruncSeries> xv, yv;
      for (const auto &s : split_list(*x))
        xv.push_back(parse_series(s, S.field, *prec));
      for (const auto &s : split_list(*y0))
        yv.push_back(parse_series(s, S.field, *prec));
      if (xv.size() != xs.size() || yv.size() != ys.size())
        throw ConfigError("series count does not match the variables");
      const auto res = hensel_newton(NewtonSystem(polys, xs.size()), xv, yv, *prec);
      json y = json::array();
      std::string out;
      for (const auto &s : res.y) {
        y.push_back(s.to_string());
        out += (out.empty() ? "" : ", ") + s.to_string();
      }
      r["y"] = y;
      r["precision"] = *prec;
      r["steps"] = res.steps;
      r["residual_valuations"] = res.residual_valuations;
      r["jacobian_valuation"] = res.jacobian_valuation;
      return out;
    });
  });

  reg("surjectivity", "lift sampled points of locus(a/C) to locus((a,b)/C)", [](CLI::App *sub) {
    auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>(),
         over = std::make_shared<std::string>(), mode = std::make_shared<std::string>("auto"),
         center = std::make_shared<std::string>();
    auto opts = std::make_shared<SurjectivityOptions>();
    sub->add_option("--a", *a, "tuple a")->required();
    sub->add_option("--b", *b, "tuple b")->required();
    sub->add_option("--over", *over, "generators of C");
    sub->add_option("--samples", opts->samples, "number of samples");
    sub->add_option("--prec", opts->precision, "series precision N");
    sub->add_option("--delta", opts->delta, "minimum valuation of perturbations");
    sub->add_option("--mode", *mode, "auto, direct or lambda")->check(CLI::IsMember({"auto", "direct", "lambda"}));
    sub->add_option("--center", *center, "expansion center, one field element per variable");
    return Handler([=](const Session &S, const Common &c, json &r) {
      SurjectivityOptions o = *opts;
      o.seed = c.seed;
      o.mode = *mode == "direct" ? SurjectivityMode::Direct
                                 : (*mode == "lambda" ? SurjectivityMode::Lambda : SurjectivityMode::Auto);
      if (!center->empty()) {
        std::vector<FiniteField::Elem> cv;
        const auto k0 = make_ambient(S.field, {});
        for (const auto &s : split_list(*center))
          cv.push_back(parse_element(s, k0).num().constant_term());
        o.centers.push_back(cv);
      }
      const auto rep = local_surjectivity_check(S.tuple(*a), S.tuple(*b), S.sub(*over), o);
      r["mode"] = rep.mode;
      r["samples"] = rep.samples;
      r["lifted"] = rep.lifted;
      r["failures"] = rep.failures;
      r["precision"] = rep.precision;
      json cj = json::array();
      for (auto e : rep.center)
        cj.push_back(S.field->render(e));
      r["center"] = cj;
      r["jacobian_valuation"] = rep.jacobian_valuation;
      r["equations"] = rep.equations;
      r["on_locus"] = rep.on_locus;
      if (rep.mode == "lambda") {
        r["stage"] = rep.stage;
        r["lambda_tuple"] = strings(rep.lambda_tuple);
        r["sigma"] = rep.sigma;
      }
      return std::to_string(rep.lifted) + "/" + std::to_string(rep.samples) + " lifted (" + rep.mode + " mode)";
    });
  });

  reg("interior-scan", "cosets inside the image of y -> y^p + t*y^(2p)", [](CLI::App *sub) {
    auto p = std::make_shared<std::uint32_t>(2);
    auto prec = std::make_shared<std::size_t>(12), ybound = std::make_shared<std::size_t>(6);
    sub->add_option("--p", *p, "prime");
    sub->add_option("--prec", *prec, "precision N");
    sub->add_option("--ybound", *ybound, "y ranges over polynomials of degree < ybound");
    return Handler([=](const Session &, const Common &c, json &r) {
      FiniteField::get(*p); // validates p
      const auto rep = interior_scan(*p, *prec, *ybound);
      json levels = json::array();
      std::size_t clean = 0;
      bool still_clean = true;
      for (const auto &l : rep.levels) {
        levels.push_back(json{{"m", l.m}, {"feasible", l.feasible}, {"full_cosets", l.full_cosets}});
        if (still_clean && l.full_cosets == 0)
          clean = l.m;
        else
          still_clean = false;
      }
      r["p"] = rep.p;
      r["precision"] = rep.precision;
      r["ybound"] = rep.ybound;
      r["residue_count"] = rep.residues.size();
      r["levels"] = levels;
      if (c.trace) {
        json res = json::array();
        const auto f = FiniteField::get(*p);
        for (const auto &v : rep.residues)
          res.push_back(TruncSeries(f, rep.precision, v).to_string());
        r["residues"] = res;
      }
      std::size_t full = 0;
      for (const auto &l : rep.levels)
        full += l.full_cosets;
      return std::to_string(rep.residues.size()) + " residues; " +
             (full == 0 ? "no full coset at any level" : "no full coset for m <= " + std::to_string(clean));
    });
  });

  return app;
}

Session make_session(const Common &c) {
  Session s;
  try {
    s.field = parse_field_spec(c.field);
    s.k = make_ambient(s.field, split_list(c.vars));
  } catch (const std::exception &e) {
    throw ConfigError(std::string("bad session: ") + e.what());
  }
  return s;
}

json error_json(const std::string &command, const std::string &kind, const std::string &msg, int code) {
  return json{{"schema", kSchema},
              {"command", command},
              {"error", json{{"kind", kind}, {"message", msg}}},
              {"exit_code", code}};
}

struct Outcome {
  int code = kOk;
  json report;
  std::string summary;
  bool json_out = false;
  bool timing = false;
  double elapsed_ms = 0;
  std::string help;
};

Outcome execute(const std::function<void(CLI::App &)> &parse) {
  Common c;
  Command chosen;
  auto app = build_app(c, chosen);
  Outcome o;
  try {
    parse(*app);
  } catch (const CLI::CallForHelp &) {
    o.help = app->help();
    return o;
  } catch (const CLI::CallForAllHelp &) {
    o.help = app->help("", CLI::AppFormatMode::All);
    return o;
  } catch (const CLI::ParseError &e) {
    o.code = kConfig;
    o.json_out = c.json_out;
    o.report = error_json(chosen.name, "ParseError", e.what(), o.code);
    o.summary = std::string("error: ") + e.what();
    return o;
  }
  o.json_out = c.json_out;
  o.timing = c.timing;
  const auto t0 = std::chrono::steady_clock::now();
  auto fail = [&](int code, const std::string &kind, const std::string &msg) {
    o.code = code;
    o.report = error_json(chosen.name, kind, msg, code);
    o.summary = "error: " + msg;
  };
  try {
    const Session S = make_session(c);
    Limits lim;
    lim.max_spairs = c.max_spairs;
    if (c.time_limit > 0)
      lim.deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(c.time_limit));
    LimitScope scope(lim);
    json result = json::object();
    const std::string summary = chosen.handler(S, c, result);
    o.report = json{{"schema", kSchema},
                    {"command", chosen.name},
                    {"field", S.field->name()},
                    {"vars", S.k->var_names()},
                    {"seed", c.seed},
                    {"result", result},
                    {"summary", summary}};
    o.summary = summary;
  } catch (const ConfigError &e) {
    fail(kConfig, "ConfigError", e.what());
  } catch (const UnknownVariable &e) {
    fail(kConfig, "UnknownVariable", e.what());
  } catch (const ParseError &e) {
    fail(kConfig, "ParseError", e.what());
  } catch (const ResourceLimit &e) {
    fail(kResource, "ResourceLimit", e.what());
  } catch (const DomainError &e) {
    fail(kDomain, e.kind(), e.what());
  } catch (const std::invalid_argument &e) {
    fail(kConfig, "ConfigError", e.what());
  } catch (const std::out_of_range &e) {
    fail(kConfig, "ConfigError", e.what());
  } catch (const std::exception &e) {
    fail(kDomain, "InternalError", e.what());
  }
  o.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return o;
}

void emit(const Outcome &o, std::ostream &out, std::ostream &err, bool compact) {
  if (!o.help.empty()) {
    out << o.help;
    return;
  }
  if (o.json_out || compact)
    out << (compact ? o.report.dump() : o.report.dump(2)) << "\n";
  else if (o.code == kOk)
    out << o.summary << "\n";
  if (o.code != kOk && !compact)
    err << o.summary << "\n";
  if (o.timing)
    err << "elapsed_ms: " << o.elapsed_ms << "\n";
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  if (!args.empty() && args[0] == "batch") {
    unsigned parallel = 1;
    CLI::App app("Runs one command per stdin line", "pcl batch");
    app.add_option("--parallel", parallel, "worker threads")->check(CLI::Range(1u, 256u));
    try {
      std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
      app.parse(rest);
    } catch (const CLI::CallForHelp &) {
      out << app.help();
      return kOk;
    } catch (const CLI::ParseError &e) {
      err << "error: " << e.what() << "\n";
      return kConfig;
    }
    return run_batch(std::cin, out, err, parallel);
  }
  const Outcome o = execute([&](CLI::App &app) {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  });
  emit(o, out, err, false);
  return o.code;
}

int run_batch(std::istream &in, std::ostream &out, std::ostream &err, unsigned parallel) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    lines.push_back(line.substr(first));
  }
  std::vector<Outcome> results(lines.size());
  auto work = [&](std::size_t i) {
    results[i] = execute([&](CLI::App &app) { app.parse(lines[i], false); });
  };
  if (parallel <= 1) {
    for (std::size_t i = 0; i < lines.size(); ++i)
      work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < parallel; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < lines.size();)
          work(i);
      });
    for (auto &t : pool)
      t.join();
  }
  int code = kOk;
  for (const auto &o : results) {
    emit(o, out, err, true);
    code = std::max(code, o.code);
  }
  return code;
}

} // namespace pcl::cli
