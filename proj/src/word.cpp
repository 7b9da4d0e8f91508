#include "tempoef/word.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace tempoef {

DataPoint make_point(std::initializer_list<const char*> labels, std::int64_t data) {
  DataPoint p;
  for (auto* l : labels) p.labels.emplace_back(l);
  std::sort(p.labels.begin(), p.labels.end());
  p.labels.erase(std::unique(p.labels.begin(), p.labels.end()), p.labels.end());
  p.data = data;
  return p;
}

static void normalize_labels(std::vector<DataPoint>& pts) {
  for (auto& p : pts) {
    std::sort(p.labels.begin(), p.labels.end());
    p.labels.erase(std::unique(p.labels.begin(), p.labels.end()), p.labels.end());
  }
}

DataWord DataWord::finite(std::vector<std::string> props, std::vector<DataPoint> points) {
  DataWord w;
  w.kind_ = Kind::Finite;
  w.props_ = std::move(props);
  w.prefix_ = std::move(points);
  std::sort(w.props_.begin(), w.props_.end());
  w.props_.erase(std::unique(w.props_.begin(), w.props_.end()), w.props_.end());
  normalize_labels(w.prefix_);
  w.validate();
  return w;
}

DataWord DataWord::lasso(std::vector<std::string> props, std::vector<DataPoint> prefix,
                         std::vector<DataPoint> loop, std::int64_t delta) {
  DataWord w;
  w.kind_ = Kind::Lasso;
  w.props_ = std::move(props);
  w.prefix_ = std::move(prefix);
  w.loop_ = std::move(loop);
  w.delta_ = delta;
  std::sort(w.props_.begin(), w.props_.end());
  w.props_.erase(std::unique(w.props_.begin(), w.props_.end()), w.props_.end());
  normalize_labels(w.prefix_);
  normalize_labels(w.loop_);
  w.validate();
  return w;
}

void DataWord::validate() const {
  if (kind_ == Kind::Finite) {
    if (prefix_.empty()) throw std::invalid_argument("word: finite word must be non-empty");
    if (!loop_.empty() || delta_ != 0) throw std::invalid_argument("word: finite word has no loop");
  } else {
    if (loop_.empty()) throw std::invalid_argument("word: lasso loop must be non-empty");
    if (delta_ < 0) throw std::invalid_argument("word: delta must be non-negative");
  }
  auto check = [&](const std::vector<DataPoint>& pts) {
    for (const auto& p : pts) {
      if (p.data < 0) throw std::invalid_argument("word: data values are naturals");
      for (const auto& l : p.labels)
        if (!std::binary_search(props_.begin(), props_.end(), l))
          throw std::invalid_argument("word: label '" + l + "' not in the proposition universe");
    }
  };
  check(prefix_);
  check(loop_);
}

std::size_t DataWord::finite_length() const {
  if (kind_ != Kind::Finite) throw std::logic_error("word: lasso words are unbounded");
  return prefix_.size();
}

std::size_t DataWord::bounded_length(std::size_t horizon) const {
  return kind_ == Kind::Finite ? prefix_.size() : horizon;
}

const LabelSet& DataWord::labels_at(std::size_t j) const {
  if (j < prefix_.size()) return prefix_[j].labels;
  if (kind_ == Kind::Finite) throw std::out_of_range("word: position past the end");
  return loop_[(j - prefix_.size()) % loop_.size()].labels;
}

std::int64_t DataWord::data_at(std::size_t j) const {
  if (j < prefix_.size()) return prefix_[j].data;
  if (kind_ == Kind::Finite) throw std::out_of_range("word: position past the end");
  std::size_t off = j - prefix_.size();
  std::int64_t wraps = static_cast<std::int64_t>(off / loop_.size());
  std::int64_t base = loop_[off % loop_.size()].data;
  std::int64_t inc = 0;
  if (delta_ != 0 && __builtin_mul_overflow(wraps, delta_, &inc))
    throw std::overflow_error("word: data value overflow while unrolling");
  std::int64_t out = 0;
  if (__builtin_add_overflow(base, inc, &out))
    throw std::overflow_error("word: data value overflow while unrolling");
  return out;
}

DataWord DataWord::materialize(std::size_t horizon) const {
  if (horizon < 1) throw std::invalid_argument("word: horizon must be at least 1");
  if (kind_ == Kind::Finite) horizon = std::min(horizon, prefix_.size());
  std::vector<DataPoint> pts;
  pts.reserve(horizon);
  for (std::size_t j = 0; j < horizon; ++j) pts.push_back(point_at(j));
  return finite(props_, std::move(pts));
}

DataWord DataWord::suffix(std::size_t from) const {
  if (kind_ == Kind::Finite) {
    if (from >= prefix_.size()) throw std::out_of_range("word: suffix start past the end");
    return finite(props_, {prefix_.begin() + static_cast<std::ptrdiff_t>(from), prefix_.end()});
  }
  if (from <= prefix_.size())
    return lasso(props_, {prefix_.begin() + static_cast<std::ptrdiff_t>(from), prefix_.end()},
                 loop_, delta_);
  // Starting inside the unrolled tail: re-seat the loop at the new origin.
  std::vector<DataPoint> lp;
  lp.reserve(loop_.size());
  for (std::size_t r = 0; r < loop_.size(); ++r) lp.push_back(point_at(from + r));
  return lasso(props_, {}, std::move(lp), delta_);
}

DataWord DataWord::shifted(std::int64_t c) const {
  DataWord w = *this;
  for (auto& p : w.prefix_) p.data += c;
  for (auto& p : w.loop_) p.data += c;
  w.validate();
  return w;
}

bool agree_propositions(const DataWord& w0, std::size_t i0, const DataWord& w1, std::size_t i1) {
  return w0.labels_at(i0) == w1.labels_at(i1);
}

// --- JSON (see README for the schema) ---

static nlohmann::json points_to_json(const std::vector<DataPoint>& pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : pts) arr.push_back({{"labels", p.labels}, {"data", p.data}});
  return arr;
}

static std::vector<DataPoint> points_from_json(const nlohmann::json& arr) {
  std::vector<DataPoint> pts;
  for (const auto& j : arr) {
    DataPoint p;
    p.labels = j.value("labels", std::vector<std::string>{});
    p.data = j.at("data").get<std::int64_t>();
    pts.push_back(std::move(p));
  }
  return pts;
}

std::string DataWord::to_json_string(int indent) const {
  nlohmann::json j;
  j["props"] = props_;
  j["kind"] = kind_ == Kind::Finite ? "finite" : "lasso";
  j["prefix"] = points_to_json(prefix_);
  if (kind_ == Kind::Lasso) {
    j["loop"] = points_to_json(loop_);
    j["delta"] = delta_;
  }
  return j.dump(indent);
}

DataWord DataWord::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<std::string> props = j.value("props", std::vector<std::string>{});
  std::string kind = j.value("kind", "finite");
  auto prefix = points_from_json(j.value("prefix", nlohmann::json::array()));
  if (kind == "finite") {
    if (j.contains("loop") || j.contains("delta"))
      throw std::invalid_argument("word: finite word must not carry loop/delta");
    return finite(std::move(props), std::move(prefix));
  }
  if (kind != "lasso") throw std::invalid_argument("word: kind must be 'finite' or 'lasso'");
  auto loop = points_from_json(j.at("loop"));
  std::int64_t delta = j.value("delta", std::int64_t{0});
  return lasso(std::move(props), std::move(prefix), std::move(loop), delta);
}

DataWord DataWord::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return from_json_string(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void DataWord::save(const std::string& path, int indent) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write word file: " + path);
  out << to_json_string(indent) << '\n';
}

}  // namespace tempoef
