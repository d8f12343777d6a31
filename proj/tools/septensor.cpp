// Experiment harness: desk-scale numerical studies driven by flat key-value
// config files, emitting CSV data and optional JSON tensor snapshots.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "septensor/septensor.hpp"

using namespace septensor;
using Clock = std::chrono::steady_clock;

namespace {

using Config = std::map<std::string, std::string>;

Config load_config(const std::string& path) {
  Config cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string key, eq, value;
    std::istringstream ss(line);
    if (!(ss >> key)) continue;
    if (!(ss >> eq)) throw config_error("config line missing value: " + line);
    if (eq == "=") {
      if (!(ss >> value)) throw config_error("config line missing value: " + line);
    } else {
      value = eq;
    }
    cfg[key] = value;
  }
  return cfg;
}

long get_int(const Config& c, const std::string& key, long dflt) {
  auto it = c.find(key);
  if (it == c.end()) return dflt;
  try {
    size_t pos = 0;
    long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "' is not an integer: " + it->second);
  }
}

double get_double(const Config& c, const std::string& key, double dflt) {
  auto it = c.find(key);
  if (it == c.end()) return dflt;
  try {
    size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "' is not a number: " + it->second);
  }
}

std::string get_str(const Config& c, const std::string& key, const std::string& dflt) {
  auto it = c.find(key);
  return it == c.end() ? dflt : it->second;
}

Ctd random_unit_ctd(const std::vector<Index>& dims, const Vector& svals,
                    std::uint64_t seed) {
  std::vector<Matrix> comps(dims.size());
  for (size_t j = 0; j < dims.size(); ++j) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(j));
    comps[j].resize(dims[j], svals.size());
    for (Index c = 0; c < comps[j].cols(); ++c)
      for (Index i = 0; i < dims[j]; ++i) comps[j](i, c) = rng.normal();
  }
  return Ctd(svals, std::move(comps));
}

Vector decaying_svals(Index r) {
  Vector sv(r);
  for (Index l = 0; l < r; ++l) sv(l) = std::exp(-0.5 * double(l + 1));
  return sv;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open output file: " + path);
  out.precision(17);
  return out;
}

void maybe_snapshot(const Config& cfg, const Ctd& u) {
  const std::string path = get_str(cfg, "snapshot", "");
  if (!path.empty()) save_ctd(u, path);
}

// ---------------------------------------------------------------------------

int run_spectra(const Config& cfg, std::uint64_t seed, const std::string& out_path) {
  const Index d = get_int(cfg, "d", 20);
  const Index m = get_int(cfg, "m", 128);
  const Index r = get_int(cfg, "r", 100);
  const Index ell = get_int(cfg, "ell", r);
  RandomDistribution dist = parse_distribution(get_str(cfg, "distribution", "normal"));

  Ctd u = random_unit_ctd(std::vector<Index>(d, m), decaying_svals(r), seed);
  Vector svg = singular_values(gram_matrix(u));
  RandomTensorConfig rcfg{dist, seed + 1, ell};
  Matrix y = projection_matrix(u, random_rank_ones(u.dims(), rcfg));
  Vector svy = singular_values(y);

  std::ofstream out = open_out(out_path);
  out << "# spectra: d=" << d << " m=" << m << " r=" << r << " ell=" << ell
      << " seed=" << seed << " distribution=" << get_str(cfg, "distribution", "normal")
      << "\n";
  out << "# s-values sigma_l = exp(-l/2); columns pad with nan past their length\n";
  out << "index,sval,sv_gram,sv_sketch\n";
  const Index rows = std::max(r, std::min(ell, r));
  for (Index i = 0; i < rows; ++i) {
    out << (i + 1) << "," << u.svals()(i) << ",";
    if (i < svg.size())
      out << svg(i);
    else
      out << "nan";
    out << ",";
    if (i < svy.size())
      out << svy(i);
    else
      out << "nan";
    out << "\n";
  }
  maybe_snapshot(cfg, u);
  return 0;
}

int run_redundant(const Config& cfg, std::uint64_t seed, const std::string& out_path) {
  const Index d = get_int(cfg, "d", 20);
  const Index m = get_int(cfg, "m", 128);
  const Index r = get_int(cfg, "r", 100);
  const Index dup = get_int(cfg, "dup", 30);
  const Index ell_min = get_int(cfg, "ell_min", 40);
  const Index ell_max = get_int(cfg, "ell_max", 100);
  const Index ell_step = get_int(cfg, "ell_step", 5);
  const Index oversample = get_int(cfg, "oversample", 10);
  RandomDistribution dist = parse_distribution(get_str(cfg, "distribution", "normal"));
  if (dup >= r) throw config_error("redundant: dup must be below r");
  if (ell_step < 1 || ell_min < 2 || ell_max > r)
    throw config_error("redundant: bad ell sweep");

  Ctd base = random_unit_ctd(std::vector<Index>(d, m), decaying_svals(r), seed);
  std::vector<Matrix> comps(d);
  for (Index j = 0; j < d; ++j) comps[j] = base.component(j);
  Rng pick(seed + 31337);
  for (Index l = r - dup; l < r; ++l) {
    const Index src = static_cast<Index>(pick.next() % static_cast<std::uint64_t>(r - dup));
    for (Index j = 0; j < d; ++j) comps[j].col(l) = base.component(j).col(src);
  }
  Ctd u(base.svals(), std::move(comps));
  const double su = s_norm(u);
  const double fu = frob_norm(u);

  std::ofstream out = open_out(out_path);
  out << "# redundant: d=" << d << " m=" << m << " r=" << r << " dup=" << dup
      << " seed=" << seed << "; k = ell - " << oversample << "\n";
  out << "# frobenius error column saturates near sqrt(machine eps); the s-norm "
         "column keeps decreasing\n";
  out << "ell,k,rand_rank,rand_err_snorm,rand_err_frob,gram_rank,gram_err_snorm\n";
  for (Index ell = ell_min; ell <= ell_max; ell += ell_step) {
    const Index k = std::max<Index>(1, std::min(ell - oversample, r));
    RandomTensorConfig rcfg{dist, seed + 7, ell};
    TensorIdResult rnd = tensor_id_randomized(u, ell, RankSpec::fixed(k), rcfg, false);
    const double err_s = s_norm_diff(u, rnd.reduced) / su;
    const double err_f = frob_norm(add(u, scale(rnd.reduced, -1.0))) / fu;
    TensorIdResult grm = tensor_id_gram(u, RankSpec::fixed(std::min(k, r)), false);
    const double gerr_s = s_norm_diff(u, grm.reduced) / su;
    out << ell << "," << k << "," << rnd.reduced.rank() << "," << err_s << ","
        << err_f << "," << grm.reduced.rank() << "," << gerr_s << "\n";
  }
  maybe_snapshot(cfg, u);
  return 0;
}

int run_ortho_limit(const Config& cfg, std::uint64_t seed, const std::string& out_path) {
  const Index l_count = get_int(cfg, "L", 2);
  const Index d = get_int(cfg, "d", 3);
  const Index m = get_int(cfg, "m", 6);
  if (m < l_count) throw config_error("ortho-limit: m must be at least L");

  auto build = [&](const Vector& weights) {
    Rng rng(seed);
    Matrix g(m, l_count);
    for (Index j = 0; j < l_count; ++j)
      for (Index i = 0; i < m; ++i) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix uu = qr.householderQ() * Matrix::Identity(m, l_count);
    Index r = 1;
    for (Index j = 0; j < d; ++j) r *= l_count;
    Vector sv(r);
    std::vector<Matrix> comps(d, Matrix(m, r));
    for (Index t = 0; t < r; ++t) {
      Index rem = t;
      double w = 1.0;
      for (Index j = 0; j < d; ++j) {
        comps[j].col(t) = uu.col(rem % l_count);
        w *= weights(rem % l_count);
        rem /= l_count;
      }
      sv(t) = w;
    }
    return Ctd(sv, std::move(comps));
  };

  std::ofstream out = open_out(out_path);
  out << "# ortho-limit: L=" << l_count << " d=" << d << " m=" << m << " seed=" << seed
      << "\n";
  out << "case,eps,rank_randomized,rank_gram,rank_truncate\n";
  Ctd flat = build(Vector::Ones(l_count));
  for (double eps : {0.05, 0.1, 0.2, 0.29}) {
    RandomTensorConfig rcfg{RandomDistribution::normal, seed + 3, flat.rank()};
    TensorIdResult rnd =
        tensor_id_randomized(flat, flat.rank(), RankSpec::accuracy(eps), rcfg, false);
    TensorIdResult grm = tensor_id_gram(flat, RankSpec::accuracy(eps), false);
    TensorIdResult trn = truncate_by_svalue(flat, eps);
    out << "flat," << eps << "," << rnd.reduced.rank() << "," << grm.reduced.rank()
        << "," << trn.reduced.rank() << "\n";
  }
  Vector w(l_count);
  for (Index i = 0; i < l_count; ++i) w(i) = std::pow(2.0, -double(i + 1));
  Ctd decay = build(w);
  for (double eps : {0.35, 0.5}) {
    RandomTensorConfig rcfg{RandomDistribution::normal, seed + 3, decay.rank()};
    TensorIdResult rnd =
        tensor_id_randomized(decay, decay.rank(), RankSpec::accuracy(eps), rcfg, false);
    TensorIdResult grm = tensor_id_gram(decay, RankSpec::accuracy(eps), false);
    TensorIdResult trn = truncate_by_svalue(decay, eps);
    out << "decay," << eps << "," << rnd.reduced.rank() << "," << grm.reduced.rank()
        << "," << trn.reduced.rank() << "\n";
  }
  return 0;
}

int run_schulz_poisson(const Config& cfg, std::uint64_t seed, const std::string& out_path) {
  const Index m = get_int(cfg, "m", 32);
  const Index d = get_int(cfg, "d", 3);
  const int order = static_cast<int>(get_int(cfg, "order", 8));
  const bool periodic = get_int(cfg, "periodic", 1) != 0;

  SchulzConfig scfg;
  scfg.eps_reduce = get_double(cfg, "eps_reduce", 1e-10);
  scfg.max_rank = get_int(cfg, "max_rank", 60);
  scfg.als_sweeps = get_int(cfg, "als_sweeps", 3);
  scfg.max_iters = get_int(cfg, "max_iters", 25);
  scfg.target_error = get_double(cfg, "target_error", 1e-8);
  scfg.seed = seed;
  scfg.distribution = parse_distribution(get_str(cfg, "distribution", "normal"));
  if (get_int(cfg, "nullspace", periodic ? 1 : 0) != 0)
    scfg.nullspace = build_nullspace_projector(std::vector<Index>(d, m));
  const double alpha = get_double(cfg, "alpha", 0.0);
  if (alpha > 0) scfg.alpha = alpha;

  Matrix a = -build_laplacian_1d(m, order, periodic);
  const bool precondition = get_int(cfg, "precondition", 1) != 0;
  if (precondition) {
    const Matrix p = build_inverse_sqrt_preconditioner(a);
    a = p * a * p;
  }
  SepOperator b = build_kronecker_sum(a, d);

  std::ofstream out = open_out(out_path);
  out << "# schulz-poisson: m=" << m << " (desk scale; the full-scale setting is m=512)"
      << " d=" << d << " order=" << order << " periodic=" << periodic
      << " precondition=" << precondition << " max_rank=" << scfg.max_rank
      << " eps_reduce=" << scfg.eps_reduce << " seed=" << seed << "\n";
  out << "iter,error,rank_pre,rank_post_id,rank_post_als\n";

  auto emit = [&](const SchulzTrace& trace) {
    for (const SchulzRecord& rec : trace)
      out << rec.iter << "," << rec.error << "," << rec.rank_pre << ","
          << rec.rank_post_id << "," << rec.rank_post_als << "\n";
  };
  try {
    auto [x, trace] = schulz_invert(b, scfg);
    emit(trace);
    const std::string path = get_str(cfg, "snapshot", "");
    if (!path.empty()) save_ctd(x.data(), path);
  } catch (const rank_overflow_error& e) {
    emit(e.trace);
    out << "# aborted: " << e.what() << "\n";
    throw;
  }
  return 0;
}

int run_scaling(const Config& cfg, std::uint64_t seed, const std::string& out_path) {
  const Index r = get_int(cfg, "r", 100);
  const Index ell = get_int(cfg, "ell", 40);
  const Index m = get_int(cfg, "m", 64);
  const double eps = get_double(cfg, "eps", 1e-6);
  std::vector<Index> ds;
  {
    std::istringstream ss(get_str(cfg, "d_list", "4,8,16"));
    std::string tok;
    while (std::getline(ss, tok, ',')) ds.push_back(std::stol(tok));
    if (ds.empty()) throw config_error("scaling: empty d_list");
  }

  std::ofstream out = open_out(out_path);
  out << "# scaling: r=" << r << " ell=" << ell << " m=" << m << " seed=" << seed
      << "; wall times vary run to run, ranks do not\n";
  out << "label,d,rank_out,seconds\n";
  for (Index d : ds) {
    Ctd u = random_unit_ctd(std::vector<Index>(d, m), decaying_svals(r),
                            seed + static_cast<std::uint64_t>(d));
    RandomTensorConfig rcfg{RandomDistribution::normal, seed + 55, ell};
    const auto t0 = Clock::now();
    TensorIdResult idr = tensor_id_randomized(u, ell, RankSpec::accuracy(eps), rcfg, false);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    out << "tensor-id," << d << "," << idr.reduced.rank() << "," << secs << "\n";
  }
  // one illustrative comparison row: the same reduction refined by many ALS sweeps
  {
    const Index d = ds.front();
    Ctd u = random_unit_ctd(std::vector<Index>(d, m), decaying_svals(r),
                            seed + static_cast<std::uint64_t>(d));
    RandomTensorConfig rcfg{RandomDistribution::normal, seed + 55, ell};
    TensorIdResult idr = tensor_id_randomized(u, ell, RankSpec::accuracy(eps), rcfg, false);
    const auto t0 = Clock::now();
    Ctd refined = als_reduce(u, idr.reduced,
                             AlsConfig{idr.reduced.rank(), 20, 0.0});
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    out << "als-20-sweeps," << d << "," << refined.rank() << "," << secs << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"septensor: separation-rank reduction experiments"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  long seed_flag = -1;
  int threads = 0;

  std::map<std::string, std::function<int(const Config&, std::uint64_t, const std::string&)>>
      runners = {{"spectra", run_spectra},
                 {"redundant", run_redundant},
                 {"ortho-limit", run_ortho_limit},
                 {"schulz-poisson", run_schulz_poisson},
                 {"scaling", run_scaling}};

  std::string chosen;
  for (auto& [name, fn] : runners) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "flat key-value config file");
    sub->add_option("--seed", seed_flag, "override the config seed");
    sub->add_option("--out", out_path, "output CSV path");
    sub->add_option("--threads", threads, "worker thread count (0 = default)");
    sub->callback([&chosen, name = name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (threads > 0) Eigen::setNbThreads(threads);
    Config cfg = load_config(config_path);
    const std::uint64_t seed =
        seed_flag >= 0 ? static_cast<std::uint64_t>(seed_flag)
                       : static_cast<std::uint64_t>(get_int(cfg, "seed", 0));
    if (out_path.empty()) out_path = get_str(cfg, "out", chosen + ".csv");
    return runners.at(chosen)(cfg, seed, out_path);
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
