#include "omegarl/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <thread>

#include "omegarl/analysis.hpp"
#include "omegarl/corpus.hpp"
#include "omegarl/error.hpp"
#include "omegarl/learn.hpp"
#include "omegarl/product.hpp"

namespace omegarl {

const std::vector<double>& default_zeta_grid() {
  static const std::vector<double> grid = {0.05, 0.1,  0.2,  0.3,  0.4,  0.5,   0.6,   0.7,    0.75,  0.76,
                                           0.77, 0.78, 0.79, 0.8,  0.81, 0.85,  0.87,  0.88,   0.89,  0.9,
                                           0.95, 0.96, 0.97, 0.98, 0.99, 0.995, 0.999, 0.9995, 0.9999};
  return grid;
}

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string model_path;
  std::string corpus_name;
  std::string hoa_path;
  std::string buchi_hoa_path;
  std::string strategy_path;
  std::string trace_path;
  std::string zeta_grid;
  bool zeta_grid_given = false;
  std::string format;
  std::optional<double> p;
  std::optional<double> zeta;
  bool complete_rejecting = false;
  LearnConfig learn;
  bool runs_given = false;
  double tol = 1e-9;
  std::optional<double> tie_tol;
  std::optional<std::size_t> pair;
  double r_plus = 1.0;
  double r_minus = 1.0;
  std::string rabin_mode = "average";
  double lambda = 0.99;
};

std::string fmt(double x, int digits = 6) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ModelFormat guess_format(const std::string& path, const std::string& text) {
  for (const char* ext : {".prism", ".nm", ".pm"})
    if (path.size() > std::strlen(ext) && path.compare(path.size() - std::strlen(ext), std::string::npos, ext) == 0)
      return ModelFormat::PrismSubset;
  std::istringstream in(text);
  std::string word;
  while (in >> word) {
    if (word.rfind("//", 0) == 0 || word.rfind('#', 0) == 0) {
      std::getline(in, word);
      continue;
    }
    return word == "mdp" ? ModelFormat::PrismSubset : ModelFormat::Explicit;
  }
  return ModelFormat::Explicit;
}

/// Model plus objectives resolved from the flags.
struct Problem {
  std::string name;
  Mdp model;
  std::optional<Automaton> buchi;
  std::optional<Automaton> rabin;
};

Problem load(const Options& o) {
  if (o.model_path.empty() == o.corpus_name.empty()) throw ModelError("give exactly one of --model and --corpus");
  Problem pr;
  const CorpusEntry* entry = nullptr;
  if (!o.corpus_name.empty()) {
    entry = &corpus_entry(o.corpus_name);
    pr.name = entry->name;
    pr.model = corpus_model(*entry, o.p);
  } else {
    pr.name = o.model_path;
    const std::string text = read_file(o.model_path);
    ConstantOverrides c;
    if (o.p) c["p"] = *o.p;
    pr.model = parse_model(text, guess_format(o.model_path, text), c);
  }
  auto assign = [&](Automaton a) {
    if (a.acceptance.is_buchi())
      pr.buchi = std::move(a);
    else
      pr.rabin = std::move(a);
  };
  if (!o.hoa_path.empty()) assign(parse_hoa(read_file(o.hoa_path)));
  if (!o.buchi_hoa_path.empty()) {
    Automaton a = parse_hoa(read_file(o.buchi_hoa_path));
    if (!a.acceptance.is_buchi()) throw ModelError("--buchi-hoa needs a Buchi automaton");
    pr.buchi = std::move(a);
  }
  if (entry) {
    if (!pr.buchi && o.hoa_path.empty()) pr.buchi = corpus_automaton(*entry);
    if (!pr.rabin && !entry->rabin_hoa.empty() && o.hoa_path.empty()) pr.rabin = corpus_rabin(*entry);
  }
  if (!pr.buchi && !pr.rabin) throw ModelError("no objective: give --hoa");
  return pr;
}

ProductOptions product_options(const Options& o) {
  ProductOptions po;
  po.complete_rejecting = o.complete_rejecting;
  return po;
}

/// The objective used by check / eval: Buchi if present, else Rabin.
Product main_product(const Options& o, const Problem& pr) {
  return build_product(pr.model, pr.buchi ? *pr.buchi : *pr.rabin, product_options(o));
}

template <class F>
void parallel_for(std::size_t n, F&& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct RunResult {
  std::vector<double> q_initial;
  std::vector<double> strategy_initial;
  double exact = 0.0;
};

RunResult learn_run(const Product& p, const AugmentedMdp& aug, const LearnConfig& cfg, std::size_t run,
                    const TraceFn& trace = {}) {
  Env env = make_env(aug, cfg);
  const QTable q = q_learning(env, cfg, run_seed(cfg.seed, run), trace);
  const MixedStrategy sigma = complete_uniform(extract_strategy(q, cfg.tie_tol), p.mdp);
  const EvalReport rep = evaluate_strategy(p, sigma);
  RunResult r;
  const StateId s0 = p.mdp.initial;
  r.q_initial = q.has(s0) ? q.q[s0] : std::vector<double>(p.mdp.choices[s0].size(), 0.0);
  r.strategy_initial = sigma.probs[s0];
  r.exact = rep.a[s0];
  return r;
}

std::vector<std::string> initial_actions(const Product& p) {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < p.mdp.choices[p.mdp.initial].size(); ++c)
    out.push_back(p.mdp.action_name(p.mdp.initial, c));
  return out;
}

/// Simple aligned table.
void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      s += r[i];
      if (i + 1 < r.size()) s += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << s << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void print_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto cell = [](const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string q = "\"";
    for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell(r[i]);
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void emit(std::ostream& out, const std::string& format, const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows) {
  if (format == "csv") {
    print_csv(out, header, rows);
  } else if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < header.size() && i < r.size(); ++i) {
        const std::string& v = r[i];
        char* end = nullptr;
        const long long n = std::strtoll(v.c_str(), &end, 10);
        if (!v.empty() && *end == '\0') {
          obj[header[i]] = n;
          continue;
        }
        const double d = std::strtod(v.c_str(), &end);
        if (!v.empty() && *end == '\0')
          obj[header[i]] = d;
        else
          obj[header[i]] = v;
      }
      arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << "\n";
  } else {
    print_table(out, header, rows);
  }
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Problem pr = load(o);
  const Product p = main_product(o, pr);
  ReachOptions ro;
  ro.tol = o.tol;
  if (o.tie_tol) ro.tie_tol = *o.tie_tol;
  const ReachResult r = max_satisfaction_prob(p, ro);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(out, o.format, {"model", "states", "product_states", "probability", "seconds"},
       {{pr.name, std::to_string(pr.model.num_states()), std::to_string(p.num_states()), fmt(r.values[p.mdp.initial]),
         fmt(secs, 3)}});
  return 0;
}

int cmd_learn(const Options& o, std::ostream& out) {
  LearnConfig cfg = o.learn;
  if (!o.runs_given) cfg.runs = 1;
  if (o.zeta) cfg.zeta = *o.zeta;
  cfg.validate();
  const Problem pr = load(o);
  if (!pr.buchi) throw ModelError("learn needs a Buchi objective");
  const Product p = build_product(pr.model, *pr.buchi, product_options(o));
  const AugmentedMdp aug = augment(p, cfg.zeta);

  std::vector<std::vector<TraceRow>> traces(cfg.runs);
  std::vector<RunResult> res(cfg.runs);
  const bool tracing = !o.trace_path.empty();
  parallel_for(cfg.runs, [&](std::size_t r) {
    TraceFn tr;
    if (tracing) tr = [&traces, r](const TraceRow& row) { traces[r].push_back(row); };
    res[r] = learn_run(p, aug, cfg, r, tr);
  });
  if (tracing) {
    std::ofstream t(o.trace_path);
    if (!t) throw ModelError("cannot write '" + o.trace_path + "'");
    t << "run,episode,return,greedy_value\n";
    for (std::size_t r = 0; r < cfg.runs; ++r)
      for (const TraceRow& row : traces[r])
        t << r << "," << row.episode << "," << fmt(row.episode_return) << "," << fmt(row.greedy_value, 9) << "\n";
  }

  const std::vector<std::string> acts = initial_actions(p);
  std::vector<std::string> header = {"run", "q_initial", "exact"};
  for (const auto& a : acts) header.push_back("q_" + a);
  for (const auto& a : acts) header.push_back("sigma_" + a);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    double qmax = 0.0;
    for (double q : res[r].q_initial) qmax = std::max(qmax, q);
    std::vector<std::string> row = {std::to_string(r), fmt(qmax), fmt(res[r].exact)};
    for (double q : res[r].q_initial) row.push_back(fmt(q));
    for (double s : res[r].strategy_initial) row.push_back(fmt(s));
    rows.push_back(std::move(row));
  }
  emit(out, o.format, header, rows);
  return 0;
}

MixedStrategy read_strategy(const std::string& path, const Mdp& m) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("strategy file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("strategy") || !j["strategy"].is_object())
    throw ModelError("strategy file needs an object member \"strategy\"");
  MixedStrategy s;
  s.probs.resize(m.num_states());
  for (const auto& [state, dist] : j["strategy"].items()) {
    auto it = std::find(m.state_names.begin(), m.state_names.end(), state);
    if (it == m.state_names.end()) throw ModelError("strategy names unknown product state '" + state + "'");
    const auto x = static_cast<StateId>(it - m.state_names.begin());
    s.probs[x].assign(m.choices[x].size(), 0.0);
    if (!dist.is_object()) throw ModelError("strategy entry for '" + state + "' must be an object");
    for (const auto& [act, prob] : dist.items()) {
      bool found = false;
      for (std::size_t c = 0; c < m.choices[x].size(); ++c)
        if (m.action_name(x, c) == act) {
          if (!prob.is_number()) throw ModelError("probability for '" + act + "' must be a number");
          s.probs[x][c] = prob.get<double>();
          found = true;
        }
      if (!found) throw ModelError("action '" + act + "' is not enabled in '" + state + "'");
    }
  }
  // states with a single action need no entry
  for (StateId x = 0; x < m.num_states(); ++x)
    if (s.probs[x].empty() && m.choices[x].size() == 1) s.probs[x] = {1.0};
  return s;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Problem pr = load(o);
  const Product p = main_product(o, pr);
  ReachOptions ro;
  ro.tol = o.tol;
  if (o.tie_tol) ro.tie_tol = *o.tie_tol;
  const MixedStrategy sigma = o.strategy_path.empty() ? satisfaction_strategy(p, ro) : read_strategy(o.strategy_path, p.mdp);
  if (o.zeta && !p.acceptance.is_buchi()) throw ModelError("--zeta needs a Buchi objective");
  const EvalReport rep = evaluate_strategy(p, sigma, o.zeta);
  std::vector<std::vector<std::string>> rows;
  for (StateId s = 0; s < p.num_states(); ++s) {
    if (!rep.domain[s]) continue;
    std::string bscc = rep.bscc_of[s] < 0 ? "-" : (rep.bsccs[rep.bscc_of[s]].accepting ? "accepting" : "rejecting");
    rows.push_back({p.mdp.state_names[s], fmt(rep.a[s]), fmt(rep.p[s]), fmt(rep.f[s]), bscc});
  }
  emit(out, o.format, {"state", "a", "p", "f", "bscc"}, rows);
  return 0;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    char* end = nullptr;
    double z = std::strtod(item.c_str() + b, &end);
    if (end == item.c_str() + b) throw ModelError("bad zeta value '" + item + "'");
    if (!(z > 0.0 && z < 1.0)) throw ModelError("zeta values must lie strictly between 0 and 1");
    grid.push_back(z);
  }
  return grid;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  LearnConfig cfg = o.learn;
  cfg.validate();
  const std::vector<double> grid = o.zeta_grid_given ? parse_grid(o.zeta_grid) : default_zeta_grid();
  const Problem pr = load(o);
  if (!pr.buchi) throw ModelError("sweep needs a Buchi objective");
  const Product p = build_product(pr.model, *pr.buchi, product_options(o));
  const std::vector<std::string> acts = initial_actions(p);

  std::vector<AugmentedMdp> augs;
  for (double z : grid) augs.push_back(augment(p, z));
  std::vector<RunResult> res(grid.size() * cfg.runs);
  parallel_for(res.size(), [&](std::size_t k) {
    LearnConfig c = cfg;
    c.zeta = grid[k / cfg.runs];
    res[k] = learn_run(p, augs[k / cfg.runs], c, k % cfg.runs);
  });

  std::vector<std::string> header = {"zeta"};
  for (const auto& a : acts) header.push_back("q_" + a);
  header.push_back("p_phi");
  std::vector<std::vector<std::string>> rows;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<double> q(acts.size(), 0.0);
    double phi = 0.0;
    for (std::size_t r = 0; r < cfg.runs; ++r) {
      const RunResult& rr = res[g * cfg.runs + r];
      for (std::size_t a = 0; a < acts.size(); ++a) q[a] += rr.q_initial[a];
      phi += rr.exact;
    }
    std::vector<std::string> row = {fmt(grid[g], 4)};
    for (double v : q) row.push_back(fmt(v / static_cast<double>(cfg.runs)));
    row.push_back(fmt(phi / static_cast<double>(cfg.runs)));
    rows.push_back(std::move(row));
  }
  emit(out, o.format.empty() ? "csv" : o.format, header, rows);
  return 0;
}

int cmd_rabin_demo(const Options& o, std::ostream& out) {
  LearnConfig cfg = o.learn;
  if (o.zeta) cfg.zeta = *o.zeta;
  cfg.validate();
  const Problem pr = load(o);
  if (!pr.rabin) throw ModelError("rabin-demo needs a Rabin objective");
  const Product rp = build_product(pr.model, *pr.rabin, product_options(o));
  RabinRewardConfig rc;
  rc.r_plus = o.r_plus;
  rc.r_minus = o.r_minus;
  rc.lambda = o.lambda;
  if (o.rabin_mode == "average")
    rc.mode = RabinMode::Average;
  else if (o.rabin_mode == "discounted")
    rc.mode = RabinMode::Discounted;
  else
    throw ModelError("--rabin-mode must be average or discounted");

  std::vector<std::size_t> pairs;
  if (o.pair) {
    if (*o.pair >= rp.acceptance.pairs.size()) throw ModelError("--pair out of range");
    pairs.push_back(*o.pair);
  } else {
    for (std::size_t i = 0; i < rp.acceptance.pairs.size(); ++i) pairs.push_back(i);
  }

  std::vector<std::vector<std::string>> rows;
  std::vector<double> rabin_res(pairs.size() * cfg.runs);
  parallel_for(rabin_res.size(), [&](std::size_t k) {
    RabinRewardConfig c = rc;
    c.pair = pairs[k / cfg.runs];
    const QTable q = rabin_q_learning(rp, cfg, c, run_seed(cfg.seed, k % cfg.runs));
    const MixedStrategy sigma = complete_uniform(extract_strategy(q, cfg.tie_tol), rp.mdp);
    rabin_res[k] = evaluate_strategy(rp, sigma).a[rp.mdp.initial];
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    double sum = 0.0;
    std::string per_run;
    for (std::size_t r = 0; r < cfg.runs; ++r) {
      sum += rabin_res[i * cfg.runs + r];
      per_run += (r ? " " : "") + fmt(rabin_res[i * cfg.runs + r]);
    }
    rows.push_back({std::string("rabin-") + o.rabin_mode, std::to_string(pairs[i]),
                    fmt(sum / static_cast<double>(cfg.runs)), per_run});
  }
  const double optimum = max_satisfaction_prob(rp).values[rp.mdp.initial];
  if (pr.buchi) {
    const Product bp = build_product(pr.model, *pr.buchi, product_options(o));
    const AugmentedMdp aug = augment(bp, cfg.zeta);
    std::vector<RunResult> res(cfg.runs);
    parallel_for(cfg.runs, [&](std::size_t r) { res[r] = learn_run(bp, aug, cfg, r); });
    double sum = 0.0;
    std::string per_run;
    for (std::size_t r = 0; r < cfg.runs; ++r) {
      sum += res[r].exact;
      per_run += (r ? " " : "") + fmt(res[r].exact);
    }
    rows.push_back({"augmented", "-", fmt(sum / static_cast<double>(cfg.runs)), per_run});
  }
  rows.push_back({"optimum", "-", fmt(optimum), ""});
  emit(out, o.format, {"method", "pair", "probability", "runs"}, rows);
  return 0;
}

int cmd_corpus(const Options& o, std::ostream& out) {
  std::vector<std::vector<std::string>> rows;
  for (const CorpusEntry& e : corpus()) {
    const Mdp m = corpus_model(e);
    const Automaton a = corpus_automaton(e);
    rows.push_back({e.name, std::to_string(m.num_states()), std::to_string(a.num_states()),
                    e.published ? "published" : "reconstruction"});
  }
  emit(out, o.format, {"name", "states", "automaton", "source"}, rows);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Omega-regular objectives for model-free reinforcement learning", "omegarl");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--model", o.model_path, "MDP file (PRISM subset or explicit format)");
  app.add_option("--corpus", o.corpus_name, "embedded model name");
  app.add_option("--hoa", o.hoa_path, "objective automaton (HOA)");
  app.add_option("--buchi-hoa", o.buchi_hoa_path, "Buchi objective for rabin-demo's augmented run");
  app.add_option("--p", o.p, "model parameter p");
  app.add_option("--zeta", o.zeta, "augmentation parameter");
  app.add_option("--zeta-grid", o.zeta_grid, "comma-separated zeta values for sweep");
  app.add_option("--episodes", o.learn.episodes, "episodes per run");
  app.add_option("--ep-length", o.learn.episode_length, "steps per episode");
  app.add_option("--alpha", o.learn.alpha, "learning rate");
  app.add_option("--epsilon", o.learn.epsilon, "exploration rate");
  app.add_option("--gamma", o.learn.gamma, "discount of the learner");
  app.add_option("--seed", o.learn.seed, "base random seed");
  app.add_option("--runs", o.learn.runs, "independent learning runs");
  app.add_option("--tol", o.tol, "value iteration tolerance");
  app.add_option("--tie-tol", o.tie_tol, "tolerance for equal Q values / backups");
  app.add_option("--format", o.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_flag("--complete-rejecting", o.complete_rejecting, "send missing automaton moves to a rejecting sink");
  app.add_option("--pair", o.pair, "Rabin pair index");
  app.add_option("--rplus", o.r_plus, "Rabin reward on G transitions");
  app.add_option("--rminus", o.r_minus, "Rabin penalty on B transitions");
  app.add_option("--rabin-mode", o.rabin_mode, "average or discounted");
  app.add_option("--lambda", o.lambda, "discount of the discounted Rabin mode");
  app.add_option("--strategy", o.strategy_path, "strategy JSON for eval");
  app.add_option("--trace", o.trace_path, "write a learning trace CSV");

  auto* check = app.add_subcommand("check", "maximal satisfaction probability");
  auto* learn = app.add_subcommand("learn", "learn on the augmented product and check the strategy");
  auto* eval = app.add_subcommand("eval", "exact evaluation of a strategy");
  auto* sweep = app.add_subcommand("sweep", "learn over a grid of zeta values");
  auto* demo = app.add_subcommand("rabin-demo", "Rabin reward baseline against augmentation");
  auto* list = app.add_subcommand("corpus", "list embedded models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  o.runs_given = app.count("--runs") > 0;
  o.zeta_grid_given = app.count("--zeta-grid") > 0;
  if (o.tie_tol) o.learn.tie_tol = *o.tie_tol;

  try {
    std::ostringstream buf;
    int code = 0;
    const std::string format = o.format;
    if (format.empty() && !sweep->parsed()) o.format = "table";
    if (check->parsed()) code = cmd_check(o, buf);
    if (learn->parsed()) code = cmd_learn(o, buf);
    if (eval->parsed()) code = cmd_eval(o, buf);
    if (sweep->parsed()) code = cmd_sweep(o, buf);
    if (demo->parsed()) code = cmd_rabin_demo(o, buf);
    if (list->parsed()) code = cmd_corpus(o, buf);
    out << buf.str();
    return code;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"omegarl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace omegarl
