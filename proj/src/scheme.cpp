#include "sgc/scheme.hpp"

#include <algorithm>
#include <numeric>

#include "sgc/error.hpp"

namespace sgc {

namespace {

std::string tuple_str(const SchemeParams& p) {
  return "(K=" + std::to_string(p.K) + ", N=" + std::to_string(p.N) + ", Nr=" + std::to_string(p.Nr) +
         ", M=" + std::to_string(p.M) + ", S=" + std::to_string(p.S) + ")";
}

}  // namespace

void SchemeParams::validate_ranges() const {
  if (K < 1) throw InvalidParams("K must be at least 1 in " + tuple_str(*this));
  if (N < 1) throw InvalidParams("N must be at least 1 in " + tuple_str(*this));
  if (M < 1 || M > N) throw InvalidParams("need 1 <= M <= N in " + tuple_str(*this));
  if (Nr < 1 || Nr > N) throw InvalidParams("need 1 <= Nr <= N in " + tuple_str(*this));
  if (S < 1 || S > N) throw InvalidParams("need 1 <= S <= N in " + tuple_str(*this));
}

DerivedDims derive_dims(const SchemeParams& p) {
  p.validate_ranges();
  if (p.S < p.N - p.Nr + 2) {
    throw Infeasible("feasibility S >= N-Nr+2 violated: S=" + std::to_string(p.S) +
                     " < " + std::to_string(p.N - p.Nr + 2));
  }
  const auto groups = static_cast<std::int64_t>(binomial(p.N, p.S));
  const std::int64_t r = groups - static_cast<std::int64_t>(binomial(p.M, p.S));
  const std::int64_t n = r * p.Nr - groups * (p.N - p.M);
  if (n <= 0 || r <= 0) {
    throw Infeasible("cost denominator (C(N,S)-C(M,S))*Nr - C(N,S)*(N-M) = " + std::to_string(n) +
                     " is not positive");
  }
  DerivedDims d;
  d.messages_per_server = static_cast<std::size_t>(r);
  d.pieces = static_cast<std::size_t>(n);
  d.key_pieces = static_cast<std::size_t>(p.N - p.M);
  d.key_groups = static_cast<std::size_t>(groups);
  d.f_rows = d.pieces + d.key_columns();
  d.f_cols = d.pieces * static_cast<std::size_t>(p.K) + d.key_columns();
  return d;
}

bool FeasibilityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const FeasibilityCheck* FeasibilityReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

FeasibilityReport check_feasibility(const SchemeParams& p) {
  FeasibilityReport report;
  try {
    p.validate_ranges();
  } catch (const InvalidParams& e) {
    report.checks.push_back({"ranges", false, e.what(), std::nullopt});
    return report;
  }
  report.checks.push_back({"ranges", true, "", std::nullopt});

  const bool group_ok = p.S >= p.N - p.Nr + 2;
  report.checks.push_back({"group_size", group_ok,
                           "S >= N-Nr+2: " + std::to_string(p.S) + " vs " + std::to_string(p.N - p.Nr + 2),
                           std::nullopt});

  const auto groups = static_cast<std::int64_t>(binomial(p.N, p.S));
  const std::int64_t r = groups - static_cast<std::int64_t>(binomial(p.M, p.S));
  const std::int64_t n = r * p.Nr - groups * (p.N - p.M);
  const std::int64_t alpha = p.N - p.M;
  report.checks.push_back({"positive_pieces", n > 0, "pieces = " + std::to_string(n), std::nullopt});

  auto omega = [&](int x) { return static_cast<std::int64_t>(omega_closed(p.N, p.S, x)); };

  FeasibilityCheck enc{"encodability", true, "alpha*Omega_x >= r*x for x in [N-M]", std::nullopt};
  for (int x = 1; x <= p.N - p.M; ++x) {
    if (alpha * omega(x) < r * x) {
      enc.pass = false;
      enc.witness = x;
      break;
    }
  }
  report.checks.push_back(enc);

  FeasibilityCheck dec{"decodability", true, "n + alpha*Omega_x >= r*x for x in [Nr]", std::nullopt};
  for (int x = 1; x <= p.Nr; ++x) {
    if (n + alpha * omega(x) < r * x) {
      dec.pass = false;
      dec.witness = x;
      break;
    }
  }
  report.checks.push_back(dec);
  return report;
}

DataAssignment::DataAssignment(int N, std::vector<ServerSet> dataset_servers)
    : N_(N), dataset_servers_(std::move(dataset_servers)) {
  server_datasets_.assign(static_cast<std::size_t>(std::max(N, 0)), {});
  for (std::size_t k = 0; k < dataset_servers_.size(); ++k) {
    auto& d = dataset_servers_[k];
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    for (int s : d) {
      if (s >= 1 && s <= N) server_datasets_[static_cast<std::size_t>(s - 1)].push_back(static_cast<int>(k + 1));
    }
  }
}

ServerSet DataAssignment::complement(int dataset) const {
  const auto& d = servers_of(dataset);
  ServerSet out;
  for (int s = 1; s <= N_; ++s)
    if (!std::binary_search(d.begin(), d.end(), s)) out.push_back(s);
  return out;
}

bool DataAssignment::holds(int server, int dataset) const {
  const auto& d = servers_of(dataset);
  return std::binary_search(d.begin(), d.end(), server);
}

DataAssignment cyclic_assignment(const SchemeParams& p) {
  std::vector<ServerSet> sets;
  sets.reserve(static_cast<std::size_t>(p.K));
  for (int k = 1; k <= p.K; ++k) {
    ServerSet d;
    for (int j = 0; j < p.M; ++j) d.push_back(((k - 1 + j) % p.N) + 1);
    sets.push_back(std::move(d));
  }
  return DataAssignment(p.N, std::move(sets));
}

DataAssignment random_assignment(const SchemeParams& p, SeededRng& rng) {
  std::vector<ServerSet> sets;
  for (int k = 1; k <= p.K; ++k) {
    const int size = p.M + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(p.N - p.M + 1)));
    std::vector<int> pool(static_cast<std::size_t>(p.N));
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < size; ++i) {
      const auto j = static_cast<std::size_t>(i) + rng.uniform_below(static_cast<std::uint64_t>(p.N - i));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    sets.emplace_back(pool.begin(), pool.begin() + size);
  }
  return DataAssignment(p.N, std::move(sets));
}

std::vector<std::string> validate_assignment(const SchemeParams& p, const DataAssignment& a) {
  std::vector<std::string> out;
  if (a.datasets() == 0) out.push_back("assignment lists no datasets");
  if (static_cast<int>(a.datasets()) != p.K) {
    out.push_back("assignment lists " + std::to_string(a.datasets()) + " datasets but K=" + std::to_string(p.K));
  }
  if (a.servers() != p.N) {
    out.push_back("assignment is for N=" + std::to_string(a.servers()) + " servers but N=" + std::to_string(p.N));
  }
  for (std::size_t k = 0; k < a.datasets(); ++k) {
    const auto& d = a.dataset_servers()[k];
    const std::string tag = "D_" + std::to_string(k + 1);
    for (int s : d) {
      if (s < 1 || s > p.N) out.push_back(tag + " contains server " + std::to_string(s) + " outside [1, N]");
    }
    if (static_cast<int>(d.size()) < p.M) {
      out.push_back(tag + " has " + std::to_string(d.size()) + " servers, fewer than M=" + std::to_string(p.M));
    }
  }
  return out;
}

std::vector<std::size_t> CodingMatrix::rows_of(const ServerSet& servers) const {
  std::vector<std::size_t> rows;
  rows.reserve(servers.size() * rows_per_server);
  for (int s : servers) {
    const auto base = static_cast<std::size_t>(s - 1) * rows_per_server;
    for (std::size_t t = 0; t < rows_per_server; ++t) rows.push_back(base + t);
  }
  return rows;
}

DemandMatrix DemandMatrix::assemble(FieldMatrix F1, FieldMatrix F2, FieldMatrix F3) {
  const FieldModulus q = F1.modulus();
  FieldMatrix zero(F1.rows(), F3.cols(), q);
  FieldMatrix F = assemble_blocks({{F1, zero}, {F2, F3}});
  return {std::move(F1), std::move(F2), std::move(F3), std::move(F)};
}

std::uint64_t field_size_bound(const SchemeParams& p, const DerivedDims& d, const DataAssignment& a) {
  std::size_t worst = 0;
  for (std::size_t k = 1; k <= a.datasets(); ++k) worst = std::max(worst, a.complement(static_cast<int>(k)).size());
  return d.messages_per_server * worst * static_cast<std::uint64_t>(p.K) +
         d.messages_per_server * static_cast<std::uint64_t>(p.Nr) * binomial(p.N, p.Nr) + 1;
}

std::optional<ServerSet> find_singular_responder_set(const SchemeParams& p, const CodingMatrix& coding,
                                                     std::size_t* subsets_checked) {
  std::size_t checked = 0;
  std::optional<ServerSet> bad;
  for (const auto& u : lex_subsets(p.N, p.Nr)) {
    ++checked;
    const FieldMatrix cu = coding.stacked(u);
    if (rank(cu) < cu.cols() || cu.rows() != cu.cols()) {
      bad = u;
      break;
    }
  }
  if (subsets_checked) *subsets_checked = checked;
  return bad;
}

std::optional<int> find_unsolvable_dataset(const SchemeParams& p, const DataAssignment& a, const CodingMatrix& coding) {
  const FieldMatrix cq = coding.key_block();
  for (int k = 1; k <= p.K; ++k) {
    const auto comp = a.complement(k);
    if (comp.empty()) continue;
    const FieldMatrix sub = cq.select_rows(coding.rows_of(comp));
    if (rank(sub) < sub.rows()) return k;
  }
  return std::nullopt;
}

CodingConstruction build_coding_matrix(const SchemeParams& p, const DerivedDims& d, const DataAssignment& a,
                                       const SeededRng& rng) {
  const KeyGroupIndex groups(p.N, p.S);
  const std::size_t r = d.messages_per_server;
  const std::size_t width = d.pieces + d.key_columns();
  for (int attempt = 0; attempt < kMaxConstructionAttempts; ++attempt) {
    SeededRng local = rng.derive(static_cast<std::uint64_t>(attempt));
    FieldMatrix C(r * static_cast<std::size_t>(p.N), width, p.q);
    for (int s = 1; s <= p.N; ++s) {
      for (std::size_t t = 0; t < r; ++t) {
        const std::size_t row = static_cast<std::size_t>(s - 1) * r + t;
        for (std::size_t c = 0; c < d.pieces; ++c) C.set(row, c, local.uniform(p.q));
        for (std::size_t c = 0; c < d.key_columns(); ++c) {
          const std::size_t group = c % d.key_groups + 1;
          if (groups.contains(group, s)) C.set(row, d.pieces + c, local.uniform(p.q));
        }
      }
    }
    CodingMatrix coding{std::move(C), d.pieces, r};
    if (find_singular_responder_set(p, coding)) continue;
    if (find_unsolvable_dataset(p, a, coding)) continue;
    return {std::move(coding), attempt};
  }
  throw ConstructionFailed("no certified coding matrix after " + std::to_string(kMaxConstructionAttempts) +
                           " samples over GF(" + std::to_string(p.q.value()) + "); recommended q > " +
                           std::to_string(field_size_bound(p, d, a) - 1));
}

DemandMatrix build_demand_matrix(const SchemeParams& p, const DerivedDims& d, const DataAssignment& a,
                                 const CodingMatrix& coding) {
  const auto K = static_cast<std::size_t>(p.K);
  FieldMatrix F1(d.pieces, d.pieces * K, p.q);
  for (std::size_t i = 1; i <= d.pieces; ++i)
    for (int k = 1; k <= p.K; ++k) F1.set(i - 1, gradient_column(K, k, i), 1);

  FieldMatrix F2(d.key_columns(), d.pieces * K, p.q);
  const FieldMatrix cg = coding.gradient_block();
  const FieldMatrix cq = coding.key_block();
  for (int k = 1; k <= p.K; ++k) {
    const auto comp = a.complement(k);
    if (comp.empty()) continue;
    const auto rows = coding.rows_of(comp);
    // F1(., G_k) is the identity, so C_G F1(., G_k) is just C_G on these rows.
    auto x = try_solve_linear(cq.select_rows(rows), -cg.select_rows(rows));
    if (!x) {
      throw Unsolvable("gradient constraint for dataset " + std::to_string(k) +
                       " is inconsistent; the coding matrix was not certified");
    }
    for (std::size_t i = 1; i <= d.pieces; ++i) {
      const std::size_t col = gradient_column(K, k, i);
      for (std::size_t row = 0; row < d.key_columns(); ++row) F2.set(row, col, (*x)(row, i - 1));
    }
  }
  return DemandMatrix::assemble(std::move(F1), std::move(F2), FieldMatrix::identity(d.key_columns(), p.q));
}

SchemeArtifact build_scheme(const SchemeParams& p, const std::optional<DataAssignment>& assignment,
                            std::uint64_t seed) {
  const DerivedDims dims = derive_dims(p);
  DataAssignment a = assignment ? *assignment : cyclic_assignment(p);
  if (auto violations = validate_assignment(p, a); !violations.empty()) {
    std::string msg = "invalid data assignment:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw InvalidParams(msg);
  }
  const SeededRng root(seed);
  auto built = build_coding_matrix(p, dims, a, root.derive("coding"));
  DemandMatrix demand = build_demand_matrix(p, dims, a, built.coding);
  return {p, dims, std::move(a), std::move(built.coding), std::move(demand), seed, built.retries_used};
}

}  // namespace sgc
