#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "paczk/dataset.hpp"
#include "paczk/mechanisms.hpp"
#include "paczk/pac_noise.hpp"

namespace paczk {

enum class MechanismKind { kKMeans, kSvm, kDbStats };

std::string_view mechanism_name(MechanismKind kind);
MechanismKind mechanism_from_name(std::string_view name);

// Mechanism input: a training subset for the ML mechanisms, a compiled filter
// for database statistics.
using MechInput = std::variant<Dataset, Formula>;

// Canonical identifier binding mechanism, phase, configuration and input
// shapes. The simulated backend derives the expected trace digest for a
// program id by replaying the circuit on shape-matched dummy inputs.
struct ProgramId {
  MechanismKind mechanism = MechanismKind::kKMeans;
  int phase = 1;
  std::map<std::string, std::string> params;

  void set_u64(const std::string& key, std::uint64_t v);
  void set_f64(const std::string& key, double v);
  void set_str(const std::string& key, std::string v);
  std::uint64_t get_u64(const std::string& key) const;
  double get_f64(const std::string& key) const;
  std::string get_str(const std::string& key) const;
  bool has(const std::string& key) const { return params.count(key) > 0; }

  std::string str() const;
  static ProgramId parse(std::string_view text);
  bool operator==(const ProgramId&) const = default;
};

struct PublicIo {
  std::vector<std::uint8_t> inputs;
  std::vector<std::uint8_t> outputs;
  bool operator==(const PublicIo&) const = default;
};

struct Proof {
  std::string program_id;
  std::vector<std::uint8_t> public_inputs;
  std::vector<std::uint8_t> public_outputs;
  std::uint64_t trace_digest = 0;
  Commitment sigma_commitment;
  std::string backend_tag;
  Digest256 binding{};  // backend seal over all public fields

  std::string to_json() const;
  static Proof from_json(std::string_view text);
};

// Proof-system seam. The default simulation is an honest-prover harness: it
// enforces the protocol's structure and determinism but is neither
// zero-knowledge nor sound against a forging prover.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual Proof prove(const ProgramId& program, const PublicIo& io, const TraceRecorder& trace,
                      const Commitment& sigma_commitment) = 0;
  virtual bool verify(const Proof& proof, const std::string& expected_program_id,
                      const PublicIo* expected_io) const = 0;
};

class SimulatedBackend final : public Backend {
 public:
  static constexpr const char* kTag = "sim-honest-v1";

  SimulatedBackend() = default;
  explicit SimulatedBackend(CostTable costs) : costs_(costs) {}

  Proof prove(const ProgramId& program, const PublicIo& io, const TraceRecorder& trace,
              const Commitment& sigma_commitment) override;
  bool verify(const Proof& proof, const std::string& expected_program_id,
              const PublicIo* expected_io) const override;

  // Expected digest for a program id: rerun the traced computation on
  // zero-filled inputs of the declared shape. Well-defined because traces are
  // value-independent.
  std::uint64_t canonical_shape_digest(const ProgramId& program) const;

 private:
  CostTable costs_{};
};

bool verify_proof(const Proof& proof, const std::string& expected_program_id,
                  const Backend& backend, const PublicIo* expected_io = nullptr);

struct ProverConfig {
  MechanismKind kind = MechanismKind::kKMeans;
  KMeansConfig kmeans{};
  SvmConfig svm{};
  MechanismSpec dbspec{};
  NoiseParams noise{};
  bool public_datapoint = false;  // phase-2 x bytes enter the public transcript
  CostTable costs{};
};

// Single-owner prover state across the two phases. The private dataset/table
// and the stored covariance matrix never reach any public transcript.
class ProverSession {
 public:
  ProverSession(Dataset data, ProverConfig cfg);
  ProverSession(DbTable table, ProverConfig cfg);

  // Verifier-side sample preparation: subsampled datasets for the ML
  // mechanisms, uniform random formulas for database statistics.
  std::vector<MechInput> make_phase1_samples(SeededRng& rng) const;

  struct NoiseGenOutput {
    Commitment commitment;
    Proof proof;
  };
  NoiseGenOutput run_noise_generation(std::span<const MechInput> sample_inputs, Backend& backend);

  struct QueryOutput {
    std::vector<double> output;
    Proof proof;
    std::uint64_t match_count = 0;  // dbstats only
    bool valid = true;
  };
  QueryOutput run_pac_query(const MechInput& x, std::span<const double> s,
                            const Commitment& h_claimed, Backend& backend);

  const std::optional<CovarianceMatrix>& sigma() const { return sigma_; }
  void restore_sigma(CovarianceMatrix sigma) { sigma_ = std::move(sigma); }
  const ProverConfig& config() const { return cfg_; }
  const DbTable* table() const { return table_ ? &*table_ : nullptr; }

  ProgramId phase1_program(std::span<const MechInput> samples) const;
  ProgramId phase2_program(const MechInput& x) const;

 private:
  ProverConfig cfg_;
  std::optional<Dataset> data_;
  std::optional<DbTable> table_;
  std::optional<CovarianceMatrix> sigma_;
};

namespace detail {
struct Phase1Trace {
  CovarianceMatrix sigma;
  Commitment commitment;
};
// The complete phase-1 circuit: per-sample mechanism evaluation, noise
// determination, commitment. Shared by the prover, the verifier's shape
// replay and the benchmark sweeps (which include single-sample points).
Phase1Trace traced_phase1(const ProverConfig& cfg, const DbTable* table,
                          std::span<const MechInput> samples, Circuit& c,
                          bool allow_single_sample = false);

struct Phase2Trace {
  std::vector<double> output;
  std::uint64_t match_count = 0;
  bool valid = true;
};
// The complete phase-2 circuit: recommit the stored sigma, assert it equals
// the claimed hash, evaluate the mechanism and add correlated noise.
Phase2Trace traced_phase2(const ProverConfig& cfg, const DbTable* table,
                          const CovarianceMatrix& sigma, const MechInput& x,
                          std::span<const double> s, const Commitment& h_claimed, Circuit& c);

std::vector<std::uint8_t> canonical_vector_bytes(std::span<const double> v);
std::vector<double> parse_vector_bytes(std::span<const std::uint8_t> bytes);
}  // namespace detail

}  // namespace paczk
