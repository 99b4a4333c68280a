#include "pbm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "pbm/braid.hpp"
#include "pbm/errors.hpp"
#include "pbm/hermitian.hpp"
#include "pbm/spectral.hpp"
#include "pbm/topology.hpp"

namespace pbm {

namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::string> kKeys = {"n", "d", "k", "f", "word", "basis", "seed", "out", "cap"};

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

long long parse_integer(const std::string& text, const std::string& what) {
  std::string t = trim(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(!t.empty() && used == t.size(), "malformed " + what + ": '" + text + "'");
  return v;
}

int parse_small(const std::string& text, const std::string& what) {
  long long v = parse_integer(text, what);
  require(v >= -1000000 && v <= 1000000, what + " out of range: " + text);
  return static_cast<int>(v);
}

Range parse_range(const std::string& text, const std::string& what) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int v = parse_small(text, what);
    return {v, v};
  }
  return {parse_small(text.substr(0, dots), what), parse_small(text.substr(dots + 2), what)};
}

std::vector<int> parse_weights(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) out.push_back(parse_small(item, "weight in --k"));
  require(!out.empty(), "--k needs at least one weight");
  return out;
}

std::string q_string(const mpq_class& q) { return q.get_str(); }

Json matrix_json(const RFMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

Json matrix_json(const CycloMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

Json dm_json(const DMReport& r, const std::vector<int>& k) {
  Json mu = Json::array(), mu_over_d = Json::array();
  for (std::size_t i = 0; i < r.mu.size(); ++i) {
    mu.push_back(q_string(r.mu[i]));
    mu_over_d.push_back((static_cast<long>(k[i]) * r.f) % r.d);
  }
  mpq_class inf_over_d = r.mu_inf * r.d;
  ensure(inf_over_d.get_den() == 1, "d * mu_inf is not an integer");
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    Json x;
    x["i"] = p.i;
    x["j"] = p.j == kInfinity ? Json("inf") : Json(p.j);
    x["sum"] = q_string(p.sum);
    x["sum_lt1"] = p.sum_lt1;
    x["test"] = p.half_integer_test ? "half_integer" : "integer";
    x["value"] = p.value ? Json(q_string(*p.value)) : Json(nullptr);
    x["ok"] = p.value_ok;
    pairs.push_back(x);
  }
  Json out;
  out["d"] = r.d;
  out["f"] = r.f;
  out["mu"] = mu;
  out["mu_over_d"] = mu_over_d;
  out["mu_inf"] = q_string(r.mu_inf);
  out["mu_inf_over_d"] = inf_over_d.get_num().get_si();
  out["flags"] = {{"sum_lt1", r.all_sum_lt1}, {"mu_inf_pos", r.mu_inf_pos}, {"values_ok", r.all_values_ok}};
  out["pairs"] = pairs;
  return out;
}

std::vector<int> coprime_residues(int d) {
  std::vector<int> out;
  for (int f = 1; f < d; ++f) {
    if (std::gcd(f, d) == 1) out.push_back(f);
  }
  return out;
}

// Cover data for the single-spec commands.
struct Resolved {
  int strands = 0;
  std::optional<int> d;
  std::vector<int> k;
};

Resolved resolve(const JobConfig& c, bool need_cover) {
  Resolved r;
  if (c.n) require(c.n->single(), "--n must be a single value for '" + c.command + "'");
  if (c.d) require(c.d->single(), "--d must be a single value for '" + c.command + "'");
  if (c.k) {
    r.k = *c.k;
    int n = static_cast<int>(r.k.size()) - 1;
    if (c.n) {
      require(c.n->lo == n, "--n " + std::to_string(c.n->lo) + " does not match the " + std::to_string(r.k.size()) +
                                " weights in --k (n = " + std::to_string(n) + ")");
    }
    r.strands = n + 1;
  } else if (c.n) {
    r.strands = c.n->lo + 1;
  }
  if (c.d) r.d = c.d->lo;
  if (need_cover) {
    require(c.d.has_value(), "'" + c.command + "' needs --d");
    require(c.k.has_value(), "'" + c.command + "' needs --k");
    validate(CoverSpec{*r.d, r.k});
  } else {
    require(r.strands != 0, "'" + c.command + "' needs --n or --k");
    require(r.strands >= 2 && r.strands <= 16, "n must lie in 1..15, got " + std::to_string(r.strands - 1));
  }
  return r;
}

Json spec_json(const Resolved& r) {
  Json s;
  s["n"] = r.strands - 1;
  if (r.d) s["d"] = *r.d;
  if (!r.k.empty()) s["k"] = r.k;
  return s;
}

Json start(const JobConfig& c, const Resolved& r) {
  Json out;
  out["command"] = c.command;
  out["spec"] = spec_json(r);
  return out;
}

void decomposition_json(const CoverSpec& spec, Json& out) {
  auto ranks = kernel_ranks(spec);
  out["kernel_ranks"] = {{"free_rank", ranks.free_rank}, {"invariant_dim", ranks.invariant_dim}, {"ni_dim", ranks.ni_dim}};
  auto dec = homology_decomposition(spec);
  Json parts = Json::array();
  for (const auto& p : dec.per_divisor) {
    parts.push_back({{"e", p.e},
                     {"delta", p.delta},
                     {"gassner_dim", p.gassner_dim},
                     {"reduced_bar_dim", p.reduced_bar_dim},
                     {"q_dim", p.q_dim}});
  }
  out["per_divisor"] = parts;
  out["open_ni_dim"] = dec.open_ni_dim;
  out["closed_dim"] = dec.closed_dim;
  out["genus"] = dec.genus;
  long rh = genus_riemann_hurwitz(spec);
  out["genus_rh"] = rh;
  out["genus_match"] = rh == dec.genus;
}

Json cmd_matrix(const JobConfig& c) {
  auto r = resolve(c, false);
  require(c.word.has_value(), "'matrix' needs --word");
  BraidWord w = parse_word(*c.word, r.strands);
  TwistedMap m = evaluate_word(w, c.basis);
  Json out = start(c, r);
  out["word"] = w.to_string();
  out["basis"] = to_string(c.basis);
  out["pure"] = m.perm.is_identity();
  out["permutation"] = m.perm.one_line();
  out["matrix"] = matrix_json(m.matrix);
  return out;
}

Json cmd_verify(const JobConfig& c) {
  auto r = resolve(c, false);
  require(c.word.has_value(), "'verify' needs --word");
  BraidWord w = parse_word(*c.word, r.strands);
  Json out = start(c, r);
  out["word"] = w.to_string();
  out["invariance"] = verify_invariance(w);
  return out;
}

Json cmd_form(const JobConfig& c) {
  auto r = resolve(c, false);
  Json out = start(c, r);
  out["matrix"] = matrix_json(form_matrix(r.strands));
  out["determinant"] = form_determinant(r.strands).to_string();
  if (r.d) {
    require(c.k.has_value(), "specializing the form needs --k along with --d");
    out["specialized"] = {{"matrix", matrix_json(specialize_form(r.strands, *r.d, r.k))},
                          {"degenerate", is_degenerate(*r.d, r.k)}};
  }
  return out;
}

Json cmd_specialize(const JobConfig& c) {
  auto r = resolve(c, true);
  Json out = start(c, r);
  if (c.word) {
    BraidWord w = parse_word(*c.word, r.strands);
    out["word"] = w.to_string();
    out["matrix"] = matrix_json(specialized_word(w, *r.d, r.k));
    return out;
  }
  Json gens = Json::array();
  for (const auto& g : specialize_rep(r.strands, *r.d, r.k).generators) {
    gens.push_back({{"r", g.r}, {"s", g.s}, {"matrix", matrix_json(g.matrix)}});
  }
  out["generators"] = gens;
  return out;
}

Json cmd_spectral(const JobConfig& c) {
  auto r = resolve(c, true);
  auto rep = spectral_report(r.strands, *r.d, r.k);
  Json out = start(c, r);
  out["degenerate"] = rep.degenerate;
  out["span_dim"] = rep.burnside.span_dim;
  out["irreducible"] = rep.burnside.irreducible;
  out["modular_certificate"] = rep.burnside.modular_certificate;
  out["fixed_dim"] = rep.fixed_dim;
  out["central_scalar"] = rep.central_scalar.to_string();
  out["central_scalar_verified"] = rep.central_scalar_verified;
  out["unipotent_found"] = rep.unipotent_found;
  out["unipotent_p"] = rep.unipotent_p ? Json(*rep.unipotent_p) : Json(nullptr);
  Json flag = nullptr;
  if (rep.unipotent_p && *rep.unipotent_p + 1 <= r.strands) {
    int p = *rep.unipotent_p;
    std::vector<int> prefix(r.k.begin(), r.k.begin() + p + 1);
    auto fc = flag_unipotency_check(p, *r.d, prefix, c.seed);
    flag = {{"p", p},
            {"unipotent", fc.unipotent},
            {"conjugates", fc.conjugates},
            {"sampled_lattice_rank", fc.sampled_lattice_rank}};
  }
  out["flag_check"] = flag;
  if (rep.blocks) {
    out["blocks"] = {{"I", {rep.blocks->I.first, rep.blocks->I.last}}, {"J", {rep.blocks->J.first, rep.blocks->J.last}}};
  } else {
    out["blocks"] = nullptr;
  }
  out["seed"] = c.seed;
  return out;
}

Json cmd_decompose(const JobConfig& c) {
  auto r = resolve(c, true);
  Json out = start(c, r);
  decomposition_json(CoverSpec{*r.d, r.k}, out);
  return out;
}

Json cmd_dm(const JobConfig& c) {
  auto r = resolve(c, true);
  CoverSpec spec{*r.d, r.k};
  Json out = start(c, r);
  Json list = Json::array();
  std::vector<int> fs = c.f ? std::vector<int>{*c.f} : coprime_residues(*r.d);
  for (int f : fs) {
    Json x = dm_json(dm_report(spec, f), r.k);
    x["regime_bound"] = dm_regime_bound(spec, f);
    list.push_back(x);
  }
  out["dm"] = list;
  return out;
}

Json cmd_classify(const JobConfig& c) {
  auto r = resolve(c, true);
  CoverSpec spec{*r.d, r.k};
  Json out = start(c, r);
  decomposition_json(spec, out);
  auto cls = classify(spec);
  Json dm = Json::array();
  for (const auto& rep : cls.dm) {
    std::vector<int> level;
    for (int x : r.k) level.push_back(x % rep.d);
    dm.push_back(dm_json(rep, level));
  }
  out["dm"] = dm;
  out["verdict"] = to_string(cls.verdict);
  out["evidence"] = {{"reason", cls.reason}, {"witness", cls.witness_id ? Json(*cls.witness_id) : Json(nullptr)}};
  return out;
}

Json cmd_signature(const JobConfig& c) {
  auto r = resolve(c, true);
  Json out = start(c, r);
  Json list = Json::array();
  std::vector<int> fs = c.f ? std::vector<int>{*c.f} : coprime_residues(*r.d);
  for (int f : fs) {
    auto sig = signature(r.strands, *r.d, r.k, f);
    list.push_back({{"f", f},
                    {"p", sig.p},
                    {"q", sig.q},
                    {"min_abs_eigenvalue", sig.min_abs_eigenvalue},
                    {"eigenvalues", sig.eigenvalues}});
  }
  out["signatures"] = list;
  return out;
}

std::string cmd_sweep(const JobConfig& c) {
  require(c.d.has_value(), "'sweep' needs --d (N or a..b)");
  require(c.n.has_value(), "'sweep' needs --n (N or a..b)");
  require(!c.k.has_value(), "'sweep' enumerates weights itself; drop --k");
  Range d = *c.d, n = *c.n;
  if (d.lo > d.hi || n.lo > n.hi) return "";
  require(d.lo >= 2, "sweep needs d >= 2, got " + std::to_string(d.lo));
  require(n.lo >= 1, "sweep needs n >= 1, got " + std::to_string(n.lo));
  require(d.hi <= c.cap, "d=" + std::to_string(d.hi) + " exceeds the sweep cap " + std::to_string(c.cap));
  require(n.hi <= c.cap, "n=" + std::to_string(n.hi) + " exceeds the sweep cap " + std::to_string(c.cap));
  require(n.hi <= 15, "sweep needs n <= 15, got " + std::to_string(n.hi));
  std::string out;
  for (int dd = d.lo; dd <= d.hi; ++dd) {
    auto units = coprime_residues(dd);
    for (int nn = n.lo; nn <= n.hi; ++nn) {
      std::vector<std::size_t> idx(static_cast<std::size_t>(nn + 1), 0);
      while (true) {
        std::vector<int> k;
        for (auto i : idx) k.push_back(units[i]);
        CoverSpec spec{dd, k};
        auto dec = homology_decomposition(spec);
        long rh = genus_riemann_hurwitz(spec);
        auto rep = specialize_rep(nn + 1, dd, k);
        auto burnside = burnside_irreducibility(rep);
        auto fixed = fixed_vectors(rep).size();
        bool degenerate = is_degenerate(dd, k);
        // A one-dimensional representation is irreducible whatever the weights.
        bool match = (degenerate == (fixed > 0)) && (nn < 2 || degenerate == !burnside.irreducible);
        Json row;
        row["d"] = dd;
        row["n"] = nn;
        row["k"] = k;
        row["genus"] = dec.genus;
        row["genus_rh"] = rh;
        row["genus_match"] = dec.genus == rh;
        row["degenerate"] = degenerate;
        row["fixed_dim"] = fixed;
        row["span_dim"] = burnside.span_dim;
        row["irreducible"] = burnside.irreducible;
        row["degeneracy_match"] = match;
        out += row.dump() + "\n";
        std::size_t pos = idx.size();
        while (pos > 0 && idx[pos - 1] + 1 == units.size()) idx[--pos] = 0;
        if (pos == 0) break;
        ++idx[pos - 1];
      }
    }
  }
  return out;
}

}  // namespace

Settings parse_config_text(const std::string& text) {
  Settings out;
  std::istringstream in(text);
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    require(eq != std::string::npos, "config line " + std::to_string(line_no) + " is not key=value: '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    require(std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end(),
            "unknown config key '" + key + "' on line " + std::to_string(line_no));
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

JobConfig make_config(const std::string& command, const Settings& settings) {
  require(std::find(kCommands.begin(), kCommands.end(), command) != kCommands.end(),
          "unknown command '" + command + "'");
  JobConfig c;
  c.command = command;
  for (const auto& [key, value] : settings) {
    if (key == "n") {
      c.n = parse_range(value, "--n");
    } else if (key == "d") {
      c.d = parse_range(value, "--d");
    } else if (key == "k") {
      c.k = parse_weights(value);
    } else if (key == "f") {
      c.f = parse_small(value, "--f");
    } else if (key == "word") {
      c.word = value;
    } else if (key == "basis") {
      c.basis = parse_basis(value);
    } else if (key == "seed") {
      long long s = parse_integer(value, "--seed");
      require(s >= 0, "--seed must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "out") {
      c.out = value;
    } else if (key == "cap") {
      c.cap = parse_small(value, "--cap");
    } else {
      throw ValidationError("unknown setting '" + key + "'");
    }
  }
  return c;
}

std::string reproducer(const JobConfig& c) {
  auto range = [](const Range& r) { return r.single() ? std::to_string(r.lo) : std::to_string(r.lo) + ".." + std::to_string(r.hi); };
  std::string out = "pbm " + c.command;
  if (c.n) out += " --n " + range(*c.n);
  if (c.d) out += " --d " + range(*c.d);
  if (c.k) {
    out += " --k ";
    for (std::size_t i = 0; i < c.k->size(); ++i) out += (i ? "," : "") + std::to_string((*c.k)[i]);
  }
  if (c.f) out += " --f " + std::to_string(*c.f);
  if (c.word) out += " --word '" + *c.word + "'";
  out += " --basis " + to_string(c.basis);
  out += " --seed " + std::to_string(c.seed);
  out += " --cap " + std::to_string(c.cap);
  return out;
}

RunResult run(const JobConfig& c) {
  static const std::map<std::string, std::function<Json(const JobConfig&)>> table = {
      {"matrix", cmd_matrix},     {"verify", cmd_verify}, {"form", cmd_form},
      {"specialize", cmd_specialize}, {"spectral", cmd_spectral}, {"decompose", cmd_decompose},
      {"dm", cmd_dm},             {"classify", cmd_classify}, {"signature", cmd_signature}};
  RunResult res;
  try {
    if (c.command == "sweep") {
      res.output = cmd_sweep(c);
    } else {
      auto it = table.find(c.command);
      require(it != table.end(), "unknown command '" + c.command + "'");
      res.output = it->second(c).dump(2) + "\n";
    }
  } catch (const ValidationError& e) {
    res.exit_code = 2;
    res.error = std::string("validation error: ") + e.what();
  } catch (const InvariantViolation& e) {
    res.exit_code = 3;
    res.error = std::string("invariant violation: ") + e.what() + "\nreproducer: " + reproducer(c);
  } catch (const std::exception& e) {
    res.exit_code = 3;
    res.error = std::string("internal error: ") + e.what() + "\nreproducer: " + reproducer(c);
  }
  if (res.exit_code != 0) res.output.clear();
  return res;
}

RunResult run(const std::string& command, const Settings& settings) {
  JobConfig c;
  try {
    c = make_config(command, settings);
  } catch (const ValidationError& e) {
    return {2, "", std::string("validation error: ") + e.what()};
  }
  return run(c);
}

}  // namespace pbm
