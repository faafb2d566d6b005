#include "blochring/table.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

using namespace blochring;

namespace {

ResultTable sample() {
  ResultTable t;
  t.columns = {"t", "A_abs"};
  t.provenance = {"blochring 1.0.0", "config: n_sites = 4"};
  t.add_row({0.0, 1.0});
  t.add_row({0.1, 0.1});
  t.add_row({2.5, std::numeric_limits<double>::quiet_NaN()});
  return t;
}

}  // namespace

TEST_CASE("csv layout") {
  CHECK(format_table(sample(), OutputFormat::Csv) ==
        "# blochring 1.0.0\n"
        "# config: n_sites = 4\n"
        "t,A_abs\n"
        "0,1\n"
        "0.10000000000000001,0.10000000000000001\n"
        "2.5,nan\n");
}

TEST_CASE("plotdata layout") {
  CHECK(format_table(sample(), OutputFormat::PlotData) ==
        "# blochring 1.0.0\n"
        "# config: n_sites = 4\n"
        "# t A_abs\n"
        "0 1\n"
        "0.10000000000000001 0.10000000000000001\n"
        "2.5 nan\n");
  CHECK(file_extension(OutputFormat::PlotData) == ".dat");
  CHECK(file_extension(OutputFormat::Csv) == ".csv");
}

TEST_CASE("rows must match the columns") {
  ResultTable t;
  t.columns = {"a", "b"};
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  CHECK(t.column("b") == 1);
  CHECK_THROWS_AS(t.column("c"), std::out_of_range);
}

TEST_CASE("csv round trip is exact") {
  const auto dir = std::filesystem::temp_directory_path() / "blochring_table_test";
  std::filesystem::create_directories(dir);
  ResultTable t;
  t.columns = {"x", "y"};
  t.provenance = {"p"};
  for (int i = 0; i < 50; ++i) t.add_row({std::sqrt(i + 0.3), std::exp(-i * 0.77) * 1e-300});
  emit(t, OutputFormat::Csv, dir / "t.csv");
  const auto back = read_csv(dir / "t.csv");
  CHECK(back.columns == t.columns);
  CHECK(back.provenance == t.provenance);
  CHECK(back.rows == t.rows);
  std::filesystem::remove_all(dir);
}

TEST_CASE("io errors") {
  CHECK_THROWS_AS(emit(sample(), OutputFormat::Csv, "/nonexistent/dir/out.csv"), IoError);
  CHECK_THROWS_AS(read_csv("/nonexistent/in.csv"), IoError);

  const auto path = std::filesystem::temp_directory_path() / "blochring_bad.csv";
  {
    std::ofstream out(path);
    out << "a,b\n1,zz\n";
  }
  CHECK_THROWS_AS(read_csv(path), IoError);
  std::filesystem::remove(path);
}
