// Copyright 2026 The mrcmip Authors
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

#include "mrcmip/csv.h"

#include <fstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace mrcmip {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(ParseCsvTest, AutoHeaderIsSkipped) {
  auto rows = ParseCsv("y,x1,x2\n1,0,2\n0,1,0\n");
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 2);
  EXPECT_THAT((*rows)[0], ElementsAre(1.0, 0.0, 2.0));
}

TEST(ParseCsvTest, NumericFirstRowIsData) {
  auto rows = ParseCsv("1,0,2\n\n0, 1 ,0\r\n");
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 2);
  EXPECT_THAT((*rows)[1], ElementsAre(0.0, 1.0, 0.0));
}

TEST(ParseCsvTest, ExplicitModesAndDelimiter) {
  CsvOptions none;
  none.header = HeaderMode::kNone;
  EXPECT_FALSE(ParseCsv("y,x\n1,2\n", none).ok());
  CsvOptions present;
  present.header = HeaderMode::kPresent;
  present.delimiter = ';';
  auto rows = ParseCsv("1;2\n3;4\n", present);
  ASSERT_TRUE(rows.ok());
  ASSERT_EQ(rows->size(), 1);
  EXPECT_THAT((*rows)[0], ElementsAre(3.0, 4.0));
}

TEST(ParseCsvTest, BadCellNamesPosition) {
  auto rows = ParseCsv("1,2\n3,abc\n");
  EXPECT_EQ(rows.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(rows.status().message(), HasSubstr("row 2, column 2"));
}

TEST(ReadCsvFileTest, MissingFile) {
  auto rows = ReadCsvFile("/nonexistent/dir/data.csv");
  EXPECT_EQ(rows.status().code(), absl::StatusCode::kNotFound);
  EXPECT_THAT(rows.status().message(), HasSubstr("file not found"));
}

TEST(ReadCsvFileTest, ReadsFile) {
  const std::string path = ::testing::TempDir() + "/csv_test.csv";
  std::ofstream(path) << "a,b\n1.5,-2e3\n";
  auto rows = ReadCsvFile(path);
  ASSERT_TRUE(rows.ok()) << rows.status();
  EXPECT_THAT((*rows)[0], ElementsAre(1.5, -2000.0));
}

}  // namespace
}  // namespace mrcmip
