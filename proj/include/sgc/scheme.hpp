#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgc/field.hpp"
#include "sgc/keyspace.hpp"
#include "sgc/matrix.hpp"

namespace sgc {

/// (K, N, Nr, M, S) over GF(q): K datasets, N servers, any Nr of which must
/// suffice, every dataset on at least M servers, every key shared by exactly
/// S servers.
struct SchemeParams {
  int K = 1;
  int N = 1;
  int Nr = 1;
  int M = 1;
  int S = 1;
  FieldModulus q{FieldModulus::kDefault};

  /// Range checks only (1 <= M, Nr, S <= N, K >= 1); throws InvalidParams.
  void validate_ranges() const;
  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

/// Sizes fixed by the achievable cost R = messages_per_server / pieces.
struct DerivedDims {
  std::size_t messages_per_server = 0;  // rows of each server's encoder, C(N,S) - C(M,S)
  std::size_t pieces = 0;               // gradient pieces, r*Nr - C(N,S)*(N-M)
  std::size_t key_pieces = 0;           // pieces per key, N - M
  std::size_t key_groups = 0;           // C(N,S)
  std::size_t f_rows = 0;               // pieces + key_pieces*key_groups
  std::size_t f_cols = 0;               // pieces*K + key_pieces*key_groups

  std::size_t key_columns() const noexcept { return key_pieces * key_groups; }
  friend bool operator==(const DerivedDims&, const DerivedDims&) = default;
};

/// Throws InvalidParams on range violations and Infeasible when S < N-Nr+2 or
/// the piece count is not positive. The ratio r/n is never reduced.
DerivedDims derive_dims(const SchemeParams& params);

struct FeasibilityCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  std::optional<int> witness;  // offending subset size, when applicable
};

struct FeasibilityReport {
  std::vector<FeasibilityCheck> checks;
  bool all_pass() const;
  const FeasibilityCheck* find(const std::string& name) const;
};

/// Evaluates the group-size condition, piece positivity, and the per-size
/// encodability and decodability counting inequalities. Never throws on
/// infeasible input; failures are carried in the report.
FeasibilityReport check_feasibility(const SchemeParams& params);

/// Dataset placement: dataset k lives on the servers D_k; Z_n is the inverse view.
class DataAssignment {
 public:
  DataAssignment() = default;
  /// `dataset_servers[k-1]` = D_k; each set is sorted and deduplicated.
  /// Labels outside [1, N] are kept so validate_assignment can report them.
  DataAssignment(int N, std::vector<ServerSet> dataset_servers);

  int servers() const noexcept { return N_; }
  std::size_t datasets() const noexcept { return dataset_servers_.size(); }
  const std::vector<ServerSet>& dataset_servers() const noexcept { return dataset_servers_; }
  const ServerSet& servers_of(int dataset) const { return dataset_servers_.at(static_cast<std::size_t>(dataset - 1)); }
  /// Z_n, 1-based dataset labels.
  const std::vector<int>& datasets_of(int server) const { return server_datasets_.at(static_cast<std::size_t>(server - 1)); }
  /// Servers of [N] not holding the dataset, ascending.
  ServerSet complement(int dataset) const;
  bool holds(int server, int dataset) const;

  friend bool operator==(const DataAssignment& a, const DataAssignment& b) {
    return a.N_ == b.N_ && a.dataset_servers_ == b.dataset_servers_;
  }

 private:
  int N_ = 0;
  std::vector<ServerSet> dataset_servers_;
  std::vector<std::vector<int>> server_datasets_;
};

/// D_k = {((k-1+j) mod N) + 1 : j in [0, M-1]}.
DataAssignment cyclic_assignment(const SchemeParams& params);

/// Each D_k is a uniformly chosen subset of size uniform in [M, N].
DataAssignment random_assignment(const SchemeParams& params, SeededRng& rng);

/// Human-readable violations; empty means valid.
std::vector<std::string> validate_assignment(const SchemeParams& params, const DataAssignment& assignment);

/// Stacked per-server encoders C = [C_G, C_Q]. Server n owns rows
/// (n-1)*r .. n*r-1 (0-based); the first `free_columns` columns form C_G.
struct CodingMatrix {
  FieldMatrix C;
  std::size_t free_columns = 0;
  std::size_t rows_per_server = 0;

  FieldMatrix gradient_block() const { return C.block(0, 0, C.rows(), free_columns); }
  FieldMatrix key_block() const { return C.block(0, free_columns, C.rows(), C.cols() - free_columns); }
  /// 0-based row indices of the given servers' blocks, in the order given.
  std::vector<std::size_t> rows_of(const ServerSet& servers) const;
  /// Stacked C_U for a responder set.
  FieldMatrix stacked(const ServerSet& servers) const { return C.select_rows(rows_of(servers)); }
};

/// F = [F1 0; F2 F3] with F3 the identity.
struct DemandMatrix {
  FieldMatrix F1;
  FieldMatrix F2;
  FieldMatrix F3;
  FieldMatrix F;

  static DemandMatrix assemble(FieldMatrix F1, FieldMatrix F2, FieldMatrix F3);
};

/// 0-based column of gradient piece (k, i) in F, i.e. k + (i-1)K - 1.
inline std::size_t gradient_column(std::size_t K, int dataset, std::size_t piece) {
  return static_cast<std::size_t>(dataset - 1) + (piece - 1) * K;
}

/// 0-based index of key piece (group i, piece j) within the key block:
/// (i-1) + (j-1)*C(N,S).
inline std::size_t key_piece_offset(std::size_t key_groups, std::size_t group, std::size_t piece) {
  return (group - 1) + (piece - 1) * key_groups;
}

/// Recommended field size: one more than the Schwartz-Zippel degree bound
/// r*max_k|complement(D_k)|*K + r*Nr*C(N,Nr).
std::uint64_t field_size_bound(const SchemeParams& params, const DerivedDims& dims,
                               const DataAssignment& assignment);

struct CodingConstruction {
  CodingMatrix coding;
  int retries_used = 0;
};

inline constexpr int kMaxConstructionAttempts = 32;

/// Samples C under the key-availability zero pattern and certifies that every
/// Nr-server stack is invertible and that C_Q restricted to each dataset's
/// non-holders has full row rank. Failed samples are redrawn from
/// rng.derive(attempt); after kMaxConstructionAttempts throws ConstructionFailed.
CodingConstruction build_coding_matrix(const SchemeParams& params, const DerivedDims& dims,
                                       const DataAssignment& assignment, const SeededRng& rng);

/// First responder set (lexicographic) whose stacked encoder is singular.
std::optional<ServerSet> find_singular_responder_set(const SchemeParams& params, const CodingMatrix& coding,
                                                     std::size_t* subsets_checked = nullptr);

/// First dataset whose non-holders' key block is row-rank deficient.
std::optional<int> find_unsolvable_dataset(const SchemeParams& params, const DataAssignment& assignment,
                                           const CodingMatrix& coding);

/// F1 by pattern, F3 = I, and F2(., G_k) as the canonical solution of
/// C_Q(rows of non-holders) X = -C_G(rows of non-holders) for every dataset.
DemandMatrix build_demand_matrix(const SchemeParams& params, const DerivedDims& dims,
                                 const DataAssignment& assignment, const CodingMatrix& coding);

struct SchemeArtifact {
  SchemeParams params;
  DerivedDims dims;
  DataAssignment assignment;
  CodingMatrix coding;
  DemandMatrix demand;
  std::uint64_t seed = 0;
  int retries_used = 0;
};

/// derive_dims -> build_coding_matrix -> build_demand_matrix. Deterministic in
/// (params, assignment, seed). The assignment defaults to cyclic_assignment;
/// an invalid one throws InvalidParams listing the violations.
SchemeArtifact build_scheme(const SchemeParams& params, const std::optional<DataAssignment>& assignment,
                            std::uint64_t seed);

}  // namespace sgc
