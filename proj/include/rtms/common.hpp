#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtms {

// Error categories map onto CLI exit codes (config=2, solver=3, data=4).
enum class ErrorKind { Config, Solver, Data };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

inline Error config_error(const std::string& msg) { return Error(ErrorKind::Config, msg); }
inline Error solver_error(const std::string& msg) { return Error(ErrorKind::Solver, msg); }
inline Error data_error(const std::string& msg) { return Error(ErrorKind::Data, msg); }

// SplitMix64; used to derive independent per-entry seeds from one master seed.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// FNV-1a over raw bytes; used for file checksums and manifest artifact hashes.
std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 0xcbf29ce484222325ull);
std::uint64_t fnv1a_file(const std::string& path);

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Work is handed out in
// fixed index order so results that are written per-index are schedule
// independent.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

int default_jobs();

// Atomic-ish text file write (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

std::string timestamp_utc();

}  // namespace rtms
