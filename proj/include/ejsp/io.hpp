// Copyright 2026 The ejsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Canonical .ejsp text form, JSON export and calibration-curve tables.
// The byte layout is documented in docs/ejsp-format.md; keep both in sync.

#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ejsp/core.hpp"
#include "ejsp/decimal.hpp"
#include "ejsp/eval.hpp"
#include "ejsp/speed.hpp"

namespace ejsp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string dist_line(const DistSpec& d) {
  auto opt = [](const std::optional<double>& v) { return v ? format_fixed(*v) : std::string("-"); };
  std::string s(to_string(d.kind));
  switch (d.kind) {
    case DistKind::exponential: return s + ' ' + opt(d.lambda);
    case DistKind::gaussian: return s + ' ' + opt(d.mu) + ' ' + opt(d.sigma);
    case DistKind::uniform: return s + ' ' + opt(d.a) + ' ' + opt(d.b);
  }
  return s;
}

inline std::string transforms_line(const InstanceMetadata& m) {
  std::string s;
  if (!m.projection.empty()) {
    s = "project:";
    for (std::size_t i = 0; i < m.projection.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(m.projection[i]);
    }
  }
  if (m.relaxed) s += s.empty() ? "relax" : " relax";
  return s.empty() ? "none" : s;
}

}  // namespace detail

inline std::string write_instance(const Instance& inst) {
  const auto& m = inst.metadata;
  std::string out;
  out.reserve(64 * inst.task_count() + 512);
  auto line = [&](std::string_view key, const std::string& value) {
    out.append(key).append(" ").append(value).append("\n");
  };
  line("jobs", std::to_string(inst.job_count()));
  line("machines", std::to_string(inst.machines));
  line("tasks", std::to_string(inst.tasks_per_job()));
  line("speeds", std::to_string(inst.speed_count()));
  std::string mult;
  for (double x : inst.speed_multipliers.multipliers) mult += (mult.empty() ? "" : " ") + format_fixed(x);
  line("multipliers", mult);
  line("seed", std::to_string(m.seed));
  line("index", std::to_string(m.index));
  line("dist", detail::dist_line(m.dist));
  line("rrdd", std::string(to_string(m.rrdd)));
  line("base_range", std::to_string(m.base_time_range.first) + ' ' + std::to_string(m.base_time_range.second));
  line("source_speeds", std::to_string(m.source_speeds));
  line("prng", m.prng_id);
  line("rounding", m.rounding);
  line("version", m.generator_version);
  line("transforms", detail::transforms_line(m));
  for (const auto& job : inst.jobs)
    for (const auto& t : job) {
      out += std::to_string(t.job) + ' ' + std::to_string(t.position) + ' ' + std::to_string(t.machine) + ' ' +
             std::to_string(t.base_time) + ' ' + std::to_string(t.release) + ' ' +
             (t.due ? std::to_string(*t.due) : std::string("inf"));
      for (auto v : t.times) out += ' ' + std::to_string(v);
      for (auto v : t.energies) out += ' ' + std::to_string(v);
      out += '\n';
    }
  return out;
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  /// Next line split on single spaces; throws at end of input.
  std::vector<std::string_view> next(std::string_view expecting) {
    if (pos_ >= text_.size()) throw ParseError(line_ + 1, "unexpected end of input, expected " + std::string(expecting));
    const auto nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) throw ParseError(line_ + 1, "missing line terminator");
    std::string_view ln = text_.substr(pos_, nl - pos_);
    pos_ = nl + 1;
    ++line_;
    if (!ln.empty() && ln.back() == '\r') throw ParseError(line_, "CR line terminator not allowed");
    std::vector<std::string_view> tokens;
    std::size_t p = 0;
    while (p <= ln.size()) {
      const auto sp = std::min(ln.find(' ', p), ln.size());
      tokens.push_back(ln.substr(p, sp - p));
      p = sp + 1;
    }
    for (auto tok : tokens)
      if (tok.empty()) throw ParseError(line_, "empty field (fields are separated by single spaces)");
    return tokens;
  }

  std::vector<std::string_view> header(std::string_view key, std::size_t values) {
    auto tok = next(key);
    if (tok[0] != key) throw ParseError(line_, "expected key '" + std::string(key) + "', found '" + std::string(tok[0]) + "'");
    if (values != kAny && tok.size() != values + 1)
      throw ParseError(line_, "key '" + std::string(key) + "' expects " + std::to_string(values) + " value(s)");
    tok.erase(tok.begin());
    return tok;
  }

  template <class Int>
  Int integer(std::string_view s) const {
    Int v{};
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size())
      throw ParseError(line_, "invalid integer '" + std::string(s) + "'");
    return v;
  }

  double real(std::string_view s) const {
    auto v = parse_real(s);
    if (!v) throw ParseError(line_, "invalid real '" + std::string(s) + "'");
    return *v;
  }

  std::optional<double> opt_real(std::string_view s) const {
    if (s == "-") return std::nullopt;
    return real(s);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  std::size_t line() const { return line_; }

  static constexpr std::size_t kAny = static_cast<std::size_t>(-1);

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

}  // namespace detail

/// Syntax-level parse; no model invariants are checked.
inline Instance parse_instance(std::string_view text) {
  detail::LineReader in(text);
  using detail::LineReader;
  Instance inst;
  auto& m = inst.metadata;

  const auto jobs = in.integer<std::int64_t>(in.header("jobs", 1)[0]);
  inst.machines = in.integer<std::int64_t>(in.header("machines", 1)[0]);
  const auto tasks = in.integer<std::int64_t>(in.header("tasks", 1)[0]);
  const auto speeds = in.integer<std::int64_t>(in.header("speeds", 1)[0]);
  if (jobs < 0 || tasks < 0 || speeds < 1) throw ParseError(in.line(), "invalid counts in header");
  for (auto tok : in.header("multipliers", static_cast<std::size_t>(speeds)))
    inst.speed_multipliers.multipliers.push_back(in.real(tok));
  m.seed = in.integer<std::uint64_t>(in.header("seed", 1)[0]);
  m.index = in.integer<std::int64_t>(in.header("index", 1)[0]);

  auto dist = in.header("dist", LineReader::kAny);
  const auto kind = parse_dist_kind(dist[0]);
  if (!kind) throw ParseError(in.line(), "unknown distribution '" + std::string(dist[0]) + "'");
  m.dist.kind = *kind;
  const std::size_t want = *kind == DistKind::exponential ? 2 : 3;
  if (dist.size() != want) throw ParseError(in.line(), "wrong parameter count for distribution");
  switch (*kind) {
    case DistKind::exponential: m.dist.lambda = in.opt_real(dist[1]); break;
    case DistKind::gaussian:
      m.dist.mu = in.opt_real(dist[1]);
      m.dist.sigma = in.opt_real(dist[2]);
      break;
    case DistKind::uniform:
      m.dist.a = in.opt_real(dist[1]);
      m.dist.b = in.opt_real(dist[2]);
      break;
  }

  const auto rrdd = parse_rrdd(in.header("rrdd", 1)[0]);
  if (!rrdd) throw ParseError(in.line(), "unknown rrdd mode");
  m.rrdd = *rrdd;
  auto range = in.header("base_range", 2);
  m.base_time_range = {in.integer<Time>(range[0]), in.integer<Time>(range[1])};
  m.source_speeds = in.integer<std::int64_t>(in.header("source_speeds", 1)[0]);
  m.prng_id = std::string(in.header("prng", 1)[0]);
  m.rounding = std::string(in.header("rounding", 1)[0]);
  m.generator_version = std::string(in.header("version", 1)[0]);

  auto tr = in.header("transforms", LineReader::kAny);
  if (!(tr.size() == 1 && tr[0] == "none")) {
    std::size_t i = 0;
    if (tr[i].rfind("project:", 0) == 0) {
      auto list = tr[i].substr(8);
      std::size_t p = 0;
      while (p <= list.size()) {
        const auto c = std::min(list.find(',', p), list.size());
        m.projection.push_back(in.integer<std::int64_t>(list.substr(p, c - p)));
        p = c + 1;
      }
      ++i;
    }
    if (i < tr.size() && tr[i] == "relax") {
      m.relaxed = true;
      ++i;
    }
    if (i != tr.size()) throw ParseError(in.line(), "unrecognized transforms '" + std::string(tr[i]) + "'");
  }

  const auto s = static_cast<std::size_t>(speeds);
  inst.jobs.assign(static_cast<std::size_t>(jobs), {});
  for (std::int64_t j = 0; j < jobs; ++j)
    for (std::int64_t p = 0; p < tasks; ++p) {
      auto tok = in.next("task line");
      if (tok.size() != 6 + 2 * s)
        throw ParseError(in.line(), "task line has " + std::to_string(tok.size()) + " fields, expected " +
                                        std::to_string(6 + 2 * s));
      TaskSpec t;
      t.job = in.integer<std::int64_t>(tok[0]);
      t.position = in.integer<std::int64_t>(tok[1]);
      if (t.job != j || t.position != p)
        throw ParseError(in.line(), "task lines must be ordered by job then position");
      t.machine = in.integer<std::int64_t>(tok[2]);
      t.base_time = in.integer<Time>(tok[3]);
      t.release = in.integer<Time>(tok[4]);
      if (tok[5] != "inf") t.due = in.integer<Time>(tok[5]);
      for (std::size_t k = 0; k < s; ++k) t.times.push_back(in.integer<Time>(tok[6 + k]));
      for (std::size_t k = 0; k < s; ++k) t.energies.push_back(in.integer<Energy>(tok[6 + s + k]));
      inst.jobs[static_cast<std::size_t>(j)].push_back(std::move(t));
    }
  if (!in.at_end()) throw ParseError(in.line() + 1, "trailing content after last task line");
  return inst;
}

/// Parses and validates; throws ParseError or ValidationError.
inline Instance read_instance(std::string_view text) {
  Instance inst = parse_instance(text);
  if (auto errs = validate_instance(inst); !errs.empty()) throw ValidationError(std::move(errs));
  return inst;
}

inline nlohmann::ordered_json dist_to_json(const DistSpec& d) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(d.kind));
  if (d.lambda) j["lambda"] = *d.lambda;
  if (d.mu) j["mu"] = *d.mu;
  if (d.sigma) j["sigma"] = *d.sigma;
  if (d.a) j["a"] = *d.a;
  if (d.b) j["b"] = *d.b;
  return j;
}

/// Structured export for interoperability. Unbounded due dates are null.
inline nlohmann::ordered_json instance_to_json(const Instance& inst) {
  const auto& m = inst.metadata;
  nlohmann::ordered_json j;
  j["machines"] = inst.machines;
  j["multipliers"] = inst.speed_multipliers.multipliers;
  j["metadata"] = {{"seed", m.seed},
                   {"index", m.index},
                   {"dist", dist_to_json(m.dist)},
                   {"rrdd", std::string(to_string(m.rrdd))},
                   {"base_range", {m.base_time_range.first, m.base_time_range.second}},
                   {"source_speeds", m.source_speeds},
                   {"prng", m.prng_id},
                   {"rounding", m.rounding},
                   {"version", m.generator_version},
                   {"projection", m.projection},
                   {"relaxed", m.relaxed}};
  auto& jobs = j["jobs"] = nlohmann::ordered_json::array();
  for (const auto& job : inst.jobs) {
    auto tasks = nlohmann::ordered_json::array();
    for (const auto& t : job) {
      nlohmann::ordered_json task;
      task["machine"] = t.machine;
      task["base_time"] = t.base_time;
      task["release"] = t.release;
      task["due"] = t.due ? nlohmann::ordered_json(*t.due) : nlohmann::ordered_json(nullptr);
      task["times"] = t.times;
      task["energies"] = t.energies;
      tasks.push_back(std::move(task));
    }
    jobs.push_back(std::move(tasks));
  }
  return j;
}

struct CurveRow {
  double x = 0.0;
  double value = 0.0;
};

struct CurveTables {
  std::vector<CurveRow> energy;  // x = 0..100, energy_percentage(x)
  std::vector<CurveRow> time;    // x = 0.50..3.00 step 0.01, time_fraction(x)
};

inline CurveTables export_curves() {
  CurveTables t;
  for (int i = 0; i <= 100; ++i) t.energy.push_back({double(i), double(energy_percentage(i))});
  for (int i = 50; i <= 300; ++i) {
    const double x = i / 100.0;
    t.time.push_back({x, time_fraction(x)});
  }
  return t;
}

inline std::string energy_curve_csv(const CurveTables& t) {
  std::string out = "x,value\n";
  for (const auto& r : t.energy)
    out += std::to_string(static_cast<int>(r.x)) + ',' + std::to_string(static_cast<int>(r.value)) + '\n';
  return out;
}

inline std::string time_curve_csv(const CurveTables& t) {
  std::string out = "x,value\n";
  for (const auto& r : t.time) out += format_fixed(r.x, 2) + ',' + format_fixed(r.value, 6) + '\n';
  return out;
}

}  // namespace ejsp
