#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tempoef {

using LabelSet = std::vector<std::string>;  // sorted, unique

/// One position of a data word: a set of propositions and a natural number.
struct DataPoint {
  LabelSet labels;
  std::int64_t data = 0;
  bool operator==(const DataPoint&) const = default;
};

DataPoint make_point(std::initializer_list<const char*> labels, std::int64_t data);

/// A data word over a declared proposition universe. Two shapes share the
/// type: a finite word (a plain point sequence) and an arithmetic lasso,
/// i.e. prefix + loop where every pass through the loop adds `delta` to the
/// data values. The lasso shape finitely represents the infinite words used
/// throughout: delta = 0 gives an ultimately periodic word, delta >= 1 a
/// word whose data diverges on the tail.
class DataWord {
public:
  enum class Kind { Finite, Lasso };

  /// The one-point word ({}, 0); a placeholder until a real word is moved in.
  DataWord() : prefix_{DataPoint{}} {}

  static DataWord finite(std::vector<std::string> props, std::vector<DataPoint> points);
  static DataWord lasso(std::vector<std::string> props, std::vector<DataPoint> prefix,
                        std::vector<DataPoint> loop, std::int64_t delta);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }

  /// Number of points of a finite word; throws for lassos.
  std::size_t finite_length() const;

  /// Position count to use when a solver or printer needs a bounded view:
  /// the word's own length when finite, otherwise the given horizon.
  std::size_t bounded_length(std::size_t horizon) const;

  const LabelSet& labels_at(std::size_t j) const;
  std::int64_t data_at(std::size_t j) const;
  DataPoint point_at(std::size_t j) const { return DataPoint{labels_at(j), data_at(j)}; }

  /// First `horizon` points as a finite word (horizon >= 1). For a finite
  /// word the horizon is clamped to its length.
  DataWord materialize(std::size_t horizon) const;

  /// The suffix starting at position `from` (the word w[from]).
  DataWord suffix(std::size_t from) const;

  /// The same word with `c` added to every data value.
  DataWord shifted(std::int64_t c) const;

  const std::vector<std::string>& props() const { return props_; }
  const std::vector<DataPoint>& prefix() const { return prefix_; }
  const std::vector<DataPoint>& loop() const { return loop_; }
  std::int64_t delta() const { return delta_; }

  std::string to_json_string(int indent = -1) const;
  static DataWord from_json_string(const std::string& text);
  static DataWord load(const std::string& path);
  void save(const std::string& path, int indent = 2) const;

  bool operator==(const DataWord&) const = default;

private:
  void validate() const;

  Kind kind_ = Kind::Finite;
  std::vector<std::string> props_;
  std::vector<DataPoint> prefix_;  // the points of a finite word live here too
  std::vector<DataPoint> loop_;
  std::int64_t delta_ = 0;
};

/// True iff the label sets at the two positions are equal.
bool agree_propositions(const DataWord& w0, std::size_t i0, const DataWord& w1, std::size_t i1);

}  // namespace tempoef
