#pragma once

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pk/rational.hpp"

namespace pk {

// One term of the expanded Euler product prod_{n>=1} (1 - q^n):
// the coefficient of q^index is sign, everything else is zero.
// Exponents are the generalized pentagonal numbers j(3j +- 1)/2 with
// sign (-1)^j; the constant term (0, +1) is included.
struct PentagonalTerm {
  long index = 0;
  int sign = 0;

  friend bool operator==(const PentagonalTerm& a, const PentagonalTerm& b) {
    return a.index == b.index && a.sign == b.sign;
  }
};

// All terms with index <= bound, sorted by index ascending.
inline std::vector<PentagonalTerm> pentagonal_series(long bound) {
  if (bound < 0) throw std::invalid_argument("pentagonal_series: negative bound");
  std::vector<PentagonalTerm> out;
  out.push_back({0, 1});
  for (long j = 1;; ++j) {
    const long lo = j * (3 * j - 1) / 2;
    const long hi = j * (3 * j + 1) / 2;
    const int sign = (j % 2 == 0) ? 1 : -1;
    if (lo > bound) break;
    out.push_back({lo, sign});
    if (hi <= bound) out.push_back({hi, sign});
  }
  std::sort(out.begin(), out.end(),
            [](const PentagonalTerm& a, const PentagonalTerm& b) { return a.index < b.index; });
  return out;
}

enum class TableMethod { PentagonalRecurrence, PartDP, Enumeration };

inline std::string method_name(TableMethod m) {
  switch (m) {
    case TableMethod::PentagonalRecurrence: return "pentagonal";
    case TableMethod::PartDP: return "dp";
    case TableMethod::Enumeration: return "enumeration";
  }
  throw std::logic_error("method_name: bad enum");
}

inline TableMethod method_from_name(const std::string& s) {
  if (s == "pentagonal") return TableMethod::PentagonalRecurrence;
  if (s == "dp") return TableMethod::PartDP;
  if (s == "enumeration") return TableMethod::Enumeration;
  throw std::invalid_argument("method_from_name: unknown method '" + s + "'");
}

// Exact table of p_k(0..max_n): partitions whose parts are never
// divisible by k.
struct RegularPartitionTable {
  long k = 0;
  long max_n = -1;
  TableMethod method = TableMethod::PentagonalRecurrence;
  std::vector<Int> values;

  const Int& at(long n) const {
    if (n < 0 || n > max_n) {
      throw std::out_of_range("RegularPartitionTable::at: n=" + std::to_string(n) +
                              " outside [0, " + std::to_string(max_n) + "]");
    }
    return values[static_cast<std::size_t>(n)];
  }
};

namespace detail {

inline void check_table_args(long k, long max_n) {
  if (k < 2) throw std::invalid_argument("partition table: k must be >= 2");
  if (max_n < 0) throw std::invalid_argument("partition table: max_n must be >= 0");
}

}  // namespace detail

// Production method.  From P_k(q) * prod(1-q^n) = prod(1-q^{kn}):
//   sum over pentagonal terms (m, s):  s * p_k(n - m)  =  c(n),
// where c(n) is s' if n = k*m' for a pentagonal term (m', s'), else 0.
// Solving for the m = 0 term gives the recurrence below.  Cost is
// O(max_n^{1.5}) big-integer additions.
inline RegularPartitionTable compute_table_pentagonal(long k, long max_n) {
  detail::check_table_args(k, max_n);
  const auto terms = pentagonal_series(max_n);
  // dilated[m'] = sign of q^{k m'} in prod(1 - q^{kn}), indexed by m'.
  std::vector<int> dilated(static_cast<std::size_t>(max_n / k) + 1, 0);
  for (const auto& t : pentagonal_series(max_n / k)) {
    dilated[static_cast<std::size_t>(t.index)] = t.sign;
  }
  RegularPartitionTable table{k, max_n, TableMethod::PentagonalRecurrence, {}};
  table.values.resize(static_cast<std::size_t>(max_n) + 1);
  table.values[0] = 1;
  for (long n = 1; n <= max_n; ++n) {
    Int acc = 0;
    if (n % k == 0) acc = dilated[static_cast<std::size_t>(n / k)];
    for (const auto& t : terms) {
      if (t.index == 0) continue;
      if (t.index > n) break;
      if (t.sign > 0) {
        acc -= table.values[static_cast<std::size_t>(n - t.index)];
      } else {
        acc += table.values[static_cast<std::size_t>(n - t.index)];
      }
    }
    table.values[static_cast<std::size_t>(n)] = std::move(acc);
  }
  return table;
}

// Independent check: classic coin-counting DP over allowed part sizes.
// O(max_n^2) big-integer additions; fine up to a few thousand.
inline RegularPartitionTable compute_table_dp(long k, long max_n) {
  detail::check_table_args(k, max_n);
  RegularPartitionTable table{k, max_n, TableMethod::PartDP, {}};
  table.values.assign(static_cast<std::size_t>(max_n) + 1, Int(0));
  table.values[0] = 1;
  for (long part = 1; part <= max_n; ++part) {
    if (part % k == 0) continue;
    for (long n = part; n <= max_n; ++n) {
      table.values[static_cast<std::size_t>(n)] +=
          table.values[static_cast<std::size_t>(n - part)];
    }
  }
  return table;
}

namespace detail {

inline Int count_partitions_rec(long n, long max_part, long k) {
  if (n == 0) return 1;
  Int total = 0;
  for (long part = std::min(n, max_part); part >= 1; --part) {
    if (part % k == 0) continue;
    total += count_partitions_rec(n - part, part, k);
  }
  return total;
}

}  // namespace detail

// Third opinion for small n: direct enumeration of partitions with no
// part divisible by k.  Exponential, hence the guard.
inline Int enumerate_pk(long k, long n, long guard = 40) {
  if (k < 2) throw std::invalid_argument("enumerate_pk: k must be >= 2");
  if (n < 0) throw std::invalid_argument("enumerate_pk: n must be >= 0");
  if (n > guard) {
    throw std::invalid_argument("enumerate_pk: n=" + std::to_string(n) +
                                " exceeds guard " + std::to_string(guard));
  }
  return detail::count_partitions_rec(n, n, k);
}

// Unrestricted p(n): no part of a partition of n exceeds n, so any
// k > n imposes no restriction at all.
inline Int unrestricted_p(long n) {
  if (n < 0) throw std::invalid_argument("unrestricted_p: n must be >= 0");
  const long k = std::max<long>(2, n + 1);
  return compute_table_pentagonal(k, n).at(n);
}

inline Int unrestricted_p(long n, const RegularPartitionTable& cache) {
  if (n < 0) throw std::invalid_argument("unrestricted_p: n must be >= 0");
  if (cache.k > n && cache.max_n >= n) return cache.at(n);
  return unrestricted_p(n);
}

// ---------------------------------------------------------------------------
// On-disk cache.  Line-oriented text:
//   pk-table v1 k=<k> max_n=<N> method=<name>
//   <n> <value>          (one line per n, 0..N in order)

inline std::string cache_file_name(long k, TableMethod method) {
  return "pk_k" + std::to_string(k) + "_" + method_name(method) + ".table";
}

inline std::filesystem::path write_table_cache(const RegularPartitionTable& table,
                                               const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto final_path = dir / cache_file_name(table.k, table.method);
  const auto tmp_path = dir / (cache_file_name(table.k, table.method) + ".tmp-" +
                               std::to_string(static_cast<long>(::getpid())));
  {
    std::ofstream out(tmp_path);
    if (!out) throw std::runtime_error("write_table_cache: cannot open " + tmp_path.string());
    out << "pk-table v1 k=" << table.k << " max_n=" << table.max_n
        << " method=" << method_name(table.method) << "\n";
    for (long n = 0; n <= table.max_n; ++n) {
      out << n << " " << table.values[static_cast<std::size_t>(n)].get_str() << "\n";
    }
    if (!out) throw std::runtime_error("write_table_cache: write failed for " + tmp_path.string());
  }
  std::filesystem::rename(tmp_path, final_path);
  return final_path;
}

struct CacheHeader {
  long k = 0;
  long max_n = -1;
  TableMethod method = TableMethod::PentagonalRecurrence;
};

inline CacheHeader parse_cache_header(const std::string& line, const std::string& context) {
  std::istringstream is(line);
  std::string magic, ver, kf, nf, mf;
  if (!(is >> magic >> ver >> kf >> nf >> mf) || magic != "pk-table") {
    throw std::runtime_error("table cache: bad header in " + context);
  }
  if (ver != "v1") {
    throw std::runtime_error("table cache: unsupported version '" + ver + "' in " + context);
  }
  auto field = [&context](const std::string& token, const std::string& key) {
    if (token.rfind(key + "=", 0) != 0) {
      throw std::runtime_error("table cache: expected '" + key + "=' in header of " + context);
    }
    return token.substr(key.size() + 1);
  };
  CacheHeader h;
  h.k = std::stol(field(kf, "k"));
  h.max_n = std::stol(field(nf, "max_n"));
  h.method = method_from_name(field(mf, "method"));
  return h;
}

inline RegularPartitionTable read_table_cache(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_table_cache: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_table_cache: empty file " + path.string());
  const CacheHeader h = parse_cache_header(line, path.string());
  RegularPartitionTable table{h.k, h.max_n, h.method, {}};
  table.values.reserve(static_cast<std::size_t>(h.max_n) + 1);
  for (long n = 0; n <= h.max_n; ++n) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("read_table_cache: truncated at n=" + std::to_string(n) +
                               " in " + path.string());
    }
    std::istringstream is(line);
    long idx = -1;
    std::string digits;
    if (!(is >> idx >> digits) || idx != n) {
      throw std::runtime_error("read_table_cache: bad row at n=" + std::to_string(n) +
                               " in " + path.string());
    }
    Int v;
    if (mpz_set_str(v.get_mpz_t(), digits.c_str(), 10) != 0) {
      throw std::runtime_error("read_table_cache: bad value at n=" + std::to_string(n) +
                               " in " + path.string());
    }
    table.values.push_back(std::move(v));
  }
  return table;
}

// Reuse a cached table when one exists with enough entries; otherwise
// compute and (best effort) persist.  Returns the table plus a flag
// telling whether the cache was hit.
inline std::pair<RegularPartitionTable, bool> load_or_compute(
    const std::filesystem::path& dir, long k, long max_n,
    TableMethod method = TableMethod::PentagonalRecurrence) {
  const auto path = dir / cache_file_name(k, method);
  if (std::filesystem::exists(path)) {
    RegularPartitionTable cached = read_table_cache(path);
    if (cached.k == k && cached.method == method && cached.max_n >= max_n) {
      return {std::move(cached), true};
    }
  }
  RegularPartitionTable fresh = method == TableMethod::PartDP ? compute_table_dp(k, max_n)
                                                              : compute_table_pentagonal(k, max_n);
  write_table_cache(fresh, dir);
  return {std::move(fresh), false};
}

}  // namespace pk
