#include "rcq/records.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rcq {

std::size_t batch_of_trial(std::size_t t, std::size_t trials, std::size_t batches) {
  return t * batches / trials;
}

ExperimentPoint make_point(double p, double scale, const std::vector<double>& values,
                           std::size_t batches) {
  ExperimentPoint point;
  point.p = p;
  point.scale = scale;
  point.trials = values.size();
  const std::size_t b = std::min(batches, values.size());
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  point.estimate = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) {
    ss += (v - point.estimate) * (v - point.estimate);
  }
  if (values.size() > 1) {
    const double sample_var = ss / static_cast<double>(values.size() - 1);
    point.stderr_value = std::sqrt(sample_var / static_cast<double>(values.size()));
  }
  point.batch_means.assign(b, 0.0);
  std::vector<std::size_t> counts(b, 0);
  for (std::size_t t = 0; t < values.size(); ++t) {
    const std::size_t idx = batch_of_trial(t, values.size(), b);
    point.batch_means[idx] += values[t];
    ++counts[idx];
  }
  for (std::size_t i = 0; i < b; ++i) {
    if (counts[i]) {
      point.batch_means[i] /= static_cast<double>(counts[i]);
    }
  }
  return point;
}

std::uint64_t config_hash(const nlohmann::json& config) {
  const std::string dump = config.dump();  // nlohmann keeps keys sorted
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp + " for writing");
    }
    out << contents;
    if (!out) {
      throw std::runtime_error("failed writing " + tmp);
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_record_csv(const ExperimentRecord& record, const std::string& path) {
  std::ostringstream out;
  out << "schema,kind,config_hash,seed,p,scale,estimate,stderr,trials,batch_means\n";
  for (const auto& pt : record.points) {
    out << record.schema << ',' << record.kind << ',' << record.config_hash << ','
        << record.seed << ',' << format_double(pt.p) << ','
        << format_double(pt.scale) << ',' << format_double(pt.estimate) << ','
        << format_double(pt.stderr_value) << ',' << pt.trials << ',';
    for (std::size_t i = 0; i < pt.batch_means.size(); ++i) {
      if (i) {
        out << ';';
      }
      out << format_double(pt.batch_means[i]);
    }
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

ExperimentRecord read_record_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open record " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty record file " + path);
  }
  ExperimentRecord record;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != 10) {
      throw std::runtime_error("malformed record row in " + path);
    }
    if (first) {
      record.schema = std::stoi(fields[0]);
      record.kind = fields[1];
      record.config_hash = std::stoull(fields[2]);
      record.seed = std::stoull(fields[3]);
      first = false;
    }
    ExperimentPoint pt;
    pt.p = std::stod(fields[4]);
    pt.scale = std::stod(fields[5]);
    pt.estimate = std::stod(fields[6]);
    pt.stderr_value = std::stod(fields[7]);
    pt.trials = std::stoull(fields[8]);
    if (!fields[9].empty()) {
      for (const auto& b : split(fields[9], ';')) {
        pt.batch_means.push_back(std::stod(b));
      }
    }
    record.points.push_back(std::move(pt));
  }
  if (!record.points.empty()) {
    record.batch_count = record.points[0].batch_means.size();
  }
  return record;
}

void write_manifest(const ExperimentRecord& record, const std::string& path) {
  nlohmann::json manifest{
      {"schema", record.schema},
      {"version", RCQ_VERSION_STRING},
      {"kind", record.kind},
      {"seed", record.seed},
      {"config_hash", record.config_hash},
      {"batch_count", record.batch_count},
      {"config", record.config},
  };
  write_file_atomic(path, manifest.dump(2) + "\n");
}

}  // namespace rcq
